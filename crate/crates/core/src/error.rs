use crate::bounds::RamseyPoint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("missing upper bound for R{0} needed as a premise")]
    MissingPremise(RamseyPoint),

    #[error("inconsistent seed for R{point}: lower {lower} exceeds upper {upper}")]
    InconsistentSeed { point: RamseyPoint, lower: u64, upper: u64 },

    #[error("malformed seed record on line {line}: {reason}")]
    MalformedRecord { line: usize, reason: alloc::string::String },

    #[error("derived upper bound {derived} for R{point} is below the seeded lower bound {lower}")]
    InconsistencyDetected { point: RamseyPoint, derived: u64, lower: u64 },

    #[error("order {order} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { order: usize, ceiling: usize },

    #[error("exact integer arithmetic overflowed at order {0}")]
    ArithmeticOverflow(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
