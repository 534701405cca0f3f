//! The bounds table: known lower/upper bounds on `R(m,n)` keyed by the
//! unordered argument pair, together with base cases and seed ingestion.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::engine::DerivationRecord;
use crate::{Error, Result};

/// An argument pair of `R(·,·)`, always stored with `m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RamseyPoint {
    pub m: u32,
    pub n: u32,
}

impl RamseyPoint {
    /// Canonicalizes the pair so that `m <= n`.
    pub fn new(m: u32, n: u32) -> Self {
        if m <= n {
            RamseyPoint { m, n }
        } else {
            RamseyPoint { m: n, n: m }
        }
    }

    pub fn sum(self) -> u32 {
        self.m + self.n
    }
}

impl fmt::Display for RamseyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Provenance {
    BaseCase,
    Seed,
    MethodA,
    MethodB,
    MethodC,
}

impl Provenance {
    /// The one-letter method label, if the value came from a derivation rule.
    pub fn label(self) -> Option<char> {
        match self {
            Provenance::MethodA => Some('a'),
            Provenance::MethodB => Some('b'),
            Provenance::MethodC => Some('c'),
            Provenance::BaseCase | Provenance::Seed => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::BaseCase => "base",
            Provenance::Seed => "seed",
            Provenance::MethodA => "a",
            Provenance::MethodB => "b",
            Provenance::MethodC => "c",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundEntry {
    pub lower: u64,
    pub upper: u64,
    pub provenance: Provenance,
    /// Upper bound supplied by the seeds, kept to tell improved cells apart.
    pub seed_upper: Option<u64>,
    /// Free-form source string of the seed record that set `seed_upper`.
    pub source: Option<String>,
    pub derivation: Option<DerivationRecord>,
}

impl BoundEntry {
    fn base(value: u64) -> Self {
        BoundEntry {
            lower: value,
            upper: value,
            provenance: Provenance::BaseCase,
            seed_upper: None,
            source: None,
            derivation: None,
        }
    }

    /// Whether the upper bound beats the seeded one.
    pub fn improved(&self) -> bool {
        self.seed_upper.is_some_and(|s| self.upper < s)
    }
}

/// Exact `R(m,n)` when `min(m,n) <= 2`: `R(1,n) = 1` and `R(2,n) = n`.
pub fn base_value(m: u32, n: u32) -> Option<u64> {
    let p = RamseyPoint::new(m, n);
    match p.m {
        0 => None,
        1 => Some(1),
        2 => Some(p.n as u64),
        _ => None,
    }
}

/// One line of a seed file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRecord {
    pub m: u32,
    pub n: u32,
    /// `None` for an unknown lower bound, treated as 1.
    pub lower: Option<u64>,
    pub upper: u64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// A seed touching a base case disagreed with the exact value and was dropped.
    BaseCaseOverride { point: RamseyPoint, lower: u64, upper: u64, source: String },
    /// The engine could not evaluate a cell because a premise was missing.
    SkippedCell { point: RamseyPoint, missing: RamseyPoint },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::BaseCaseOverride { point, lower, upper, source } => write!(
                f,
                "seed [{lower},{upper}] for R{point} ({source}) ignored: base case R{point} = {} is exact",
                base_value(point.m, point.n).unwrap_or(0)
            ),
            Warning::SkippedCell { point, missing } => {
                write!(f, "skipped R{point}: no upper bound for premise R{missing}")
            }
        }
    }
}

/// Known bounds on `R(m,n)`, stored once per unordered pair.
///
/// Cells with `min(m,n) <= 2` are never stored; lookups synthesize their
/// exact base-case values, so seeds can not disturb them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsTable {
    entries: BTreeMap<RamseyPoint, BoundEntry>,
    revision: String,
}

impl BoundsTable {
    pub fn new(revision: impl Into<String>) -> Self {
        BoundsTable { entries: BTreeMap::new(), revision: revision.into() }
    }

    pub fn revision(&self) -> &str {
        &self.revision
    }

    pub fn set_revision(&mut self, revision: impl Into<String>) {
        self.revision = revision.into();
    }

    /// The entry for `(m,n)`, base cases included. Symmetric in its arguments.
    pub fn query(&self, m: u32, n: u32) -> Option<BoundEntry> {
        match base_value(m, n) {
            Some(v) => Some(BoundEntry::base(v)),
            None => self.entries.get(&RamseyPoint::new(m, n)).cloned(),
        }
    }

    /// The stored (non-base) entry for `(m,n)`.
    pub fn stored(&self, m: u32, n: u32) -> Option<&BoundEntry> {
        self.entries.get(&RamseyPoint::new(m, n))
    }

    pub fn upper(&self, m: u32, n: u32) -> Option<u64> {
        base_value(m, n).or_else(|| self.entries.get(&RamseyPoint::new(m, n)).map(|e| e.upper))
    }

    pub fn lower(&self, m: u32, n: u32) -> Option<u64> {
        base_value(m, n).or_else(|| self.entries.get(&RamseyPoint::new(m, n)).map(|e| e.lower))
    }

    pub fn require_upper(&self, m: u32, n: u32) -> Result<u64> {
        self.upper(m, n).ok_or(Error::MissingPremise(RamseyPoint::new(m, n)))
    }

    /// Stored entries in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (RamseyPoint, &BoundEntry)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts a complete entry, e.g. when restoring a previously exported
    /// table. Base-case cells are rejected silently, since lookups never read them.
    pub fn insert(&mut self, point: RamseyPoint, entry: BoundEntry) -> Result<()> {
        let point = RamseyPoint::new(point.m, point.n);
        if base_value(point.m, point.n).is_some() {
            return Ok(());
        }
        if entry.lower > entry.upper {
            return Err(Error::InconsistentSeed { point, lower: entry.lower, upper: entry.upper });
        }
        self.entries.insert(point, entry);
        Ok(())
    }

    /// Lowers the upper bound of a cell. Fails if it would drop below the
    /// cell's lower bound; never raises an existing upper bound.
    pub fn improve(
        &mut self,
        point: RamseyPoint,
        upper: u64,
        provenance: Provenance,
    ) -> Result<bool> {
        let point = RamseyPoint::new(point.m, point.n);
        if base_value(point.m, point.n).is_some() {
            return Ok(false);
        }
        let entry = self.entries.entry(point).or_insert_with(|| BoundEntry {
            lower: 1,
            upper: u64::MAX,
            provenance,
            seed_upper: None,
            source: None,
            derivation: None,
        });
        if upper < entry.lower {
            return Err(Error::InconsistencyDetected { point, derived: upper, lower: entry.lower });
        }
        if upper < entry.upper {
            entry.upper = upper;
            entry.provenance = provenance;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub(crate) fn entry_mut(&mut self, point: RamseyPoint) -> Option<&mut BoundEntry> {
        self.entries.get_mut(&point)
    }

    /// Builds a table from seed records.
    ///
    /// Symmetric duplicates are merged by taking the larger lower bound and
    /// the smaller upper bound. Records touching base cases are dropped with
    /// a warning when they disagree with the exact value.
    pub fn ingest_seeds<I>(revision: impl Into<String>, records: I) -> Result<(BoundsTable, Vec<Warning>)>
    where
        I: IntoIterator<Item = SeedRecord>,
    {
        let mut table = BoundsTable::new(revision);
        let mut warnings = Vec::new();
        for rec in records {
            if rec.m == 0 || rec.n == 0 || rec.upper == 0 {
                return Err(Error::InvalidArgument("seed arguments and bounds must be at least 1"));
            }
            let point = RamseyPoint::new(rec.m, rec.n);
            let lower = rec.lower.unwrap_or(1).max(1);
            if lower > rec.upper {
                return Err(Error::InconsistentSeed { point, lower, upper: rec.upper });
            }
            if let Some(exact) = base_value(point.m, point.n) {
                if lower != exact || rec.upper != exact {
                    warnings.push(Warning::BaseCaseOverride {
                        point,
                        lower,
                        upper: rec.upper,
                        source: rec.source,
                    });
                }
                continue;
            }
            match table.entries.get_mut(&point) {
                None => {
                    table.entries.insert(
                        point,
                        BoundEntry {
                            lower,
                            upper: rec.upper,
                            provenance: Provenance::Seed,
                            seed_upper: Some(rec.upper),
                            source: Some(rec.source),
                            derivation: None,
                        },
                    );
                }
                Some(entry) => {
                    entry.lower = entry.lower.max(lower);
                    if rec.upper < entry.upper {
                        entry.upper = rec.upper;
                        entry.seed_upper = Some(rec.upper);
                        entry.source = Some(rec.source);
                    }
                    if entry.lower > entry.upper {
                        return Err(Error::InconsistentSeed {
                            point,
                            lower: entry.lower,
                            upper: entry.upper,
                        });
                    }
                }
            }
        }
        Ok((table, warnings))
    }
}

/// The shifted-bound parameters `(α, β, γ, δ)` of an ordered pair `(m,n)`:
/// one less than the current upper bounds on `R(m-2,n)`, `R(m,n-2)`,
/// `R(m-1,n)` and `R(m,n-1)`.
///
/// `γ` and `δ` bound the degree and co-degree of every vertex of an
/// `(m,n)`-graph; `α` and `β` bound the degrees inside a vertex's
/// neighbourhood and non-neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MethodParams {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl MethodParams {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        MethodParams { alpha, beta, gamma, delta }
    }

    /// The four cells whose upper bounds produce the parameters, in
    /// `(α, β, γ, δ)` order.
    pub fn premises(m: u32, n: u32) -> [(u32, u32); 4] {
        [(m - 2, n), (m, n - 2), (m - 1, n), (m, n - 1)]
    }
}

impl fmt::Display for MethodParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={}, gamma={}, delta={})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// Reads `(α, β, γ, δ)` for the ordered pair `(m,n)` from the table.
pub fn get_params(table: &BoundsTable, m: u32, n: u32) -> Result<MethodParams> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidArgument("parameters are defined only for m, n >= 3"));
    }
    let [a, b, g, d] = MethodParams::premises(m, n).map(|(x, y)| table.require_upper(x, y));
    Ok(MethodParams {
        alpha: a? as i64 - 1,
        beta: b? as i64 - 1,
        gamma: g? as i64 - 1,
        delta: d? as i64 - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seed(m: u32, n: u32, lower: Option<u64>, upper: u64, source: &str) -> SeedRecord {
        SeedRecord { m, n, lower, upper, source: source.to_string() }
    }

    #[test]
    fn base_values() {
        assert_eq!(base_value(1, 7), Some(1));
        assert_eq!(base_value(7, 1), Some(1));
        assert_eq!(base_value(2, 5), Some(5));
        assert_eq!(base_value(5, 2), Some(5));
        assert_eq!(base_value(3, 3), None);
    }

    #[test]
    fn params_from_base_cases() {
        let table = BoundsTable::new("base");
        assert_eq!(get_params(&table, 3, 3).unwrap(), MethodParams::new(0, 0, 2, 2));
    }

    #[test]
    fn params_for_4_4() {
        let (table, _) = BoundsTable::ingest_seeds("t", vec![seed(3, 4, Some(9), 9, "exact")]).unwrap();
        assert_eq!(get_params(&table, 4, 4).unwrap(), MethodParams::new(3, 3, 8, 8));
    }

    #[test]
    fn params_for_5_7() {
        let (table, _) = BoundsTable::ingest_seeds(
            "t",
            vec![
                seed(3, 7, Some(23), 23, "exact"),
                seed(5, 5, Some(43), 48, "survey"),
                seed(4, 7, Some(49), 61, "survey"),
                seed(5, 6, Some(58), 87, "survey"),
            ],
        )
        .unwrap();
        assert_eq!(get_params(&table, 5, 7).unwrap(), MethodParams::new(22, 47, 60, 86));
    }

    #[test]
    fn missing_premise() {
        let table = BoundsTable::new("base");
        assert_eq!(get_params(&table, 4, 4), Err(Error::MissingPremise(RamseyPoint::new(3, 4))));
    }

    #[test]
    fn ingest_exact_seed() {
        let (t, w) = BoundsTable::ingest_seeds("t", vec![seed(3, 5, Some(14), 14, "exact")]).unwrap();
        assert!(w.is_empty());
        let e = t.query(3, 5).unwrap();
        assert_eq!((e.lower, e.upper), (14, 14));
        assert_eq!(e.provenance, Provenance::Seed);
    }

    #[test]
    fn ingest_merges_symmetric_duplicates() {
        let (t, _) = BoundsTable::ingest_seeds(
            "t",
            vec![seed(5, 6, None, 87, "survey"), seed(6, 5, None, 87, "survey")],
        )
        .unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.stored(5, 6).unwrap().upper, 87);
        assert_eq!(t.query(6, 5), t.query(5, 6));
    }

    #[test]
    fn ingest_merge_takes_tightest() {
        let (t, _) = BoundsTable::ingest_seeds(
            "t",
            vec![seed(5, 6, Some(50), 90, "x"), seed(6, 5, Some(58), 87, "y")],
        )
        .unwrap();
        let e = t.stored(5, 6).unwrap();
        assert_eq!((e.lower, e.upper), (58, 87));
        assert_eq!(e.source.as_deref(), Some("y"));
    }

    #[test]
    fn base_case_wins_over_seed() {
        let (t, w) = BoundsTable::ingest_seeds("t", vec![seed(2, 9, Some(5), 5, "bogus")]).unwrap();
        assert_eq!(w.len(), 1);
        assert!(matches!(w[0], Warning::BaseCaseOverride { .. }));
        let e = t.query(2, 9).unwrap();
        assert_eq!((e.lower, e.upper), (9, 9));
        assert_eq!(e.provenance, Provenance::BaseCase);
    }

    #[test]
    fn inconsistent_merge_is_an_error() {
        let r = BoundsTable::ingest_seeds(
            "t",
            vec![seed(4, 6, Some(36), 41, "a"), seed(6, 4, Some(42), 50, "b")],
        );
        assert!(matches!(r, Err(Error::InconsistentSeed { .. })));
        let r = BoundsTable::ingest_seeds("t", vec![seed(4, 6, Some(42), 41, "a")]);
        assert!(matches!(r, Err(Error::InconsistentSeed { .. })));
    }

    #[test]
    fn improve_never_raises_and_checks_lower() {
        let (mut t, _) = BoundsTable::ingest_seeds("t", vec![seed(3, 4, Some(9), 12, "s")]).unwrap();
        let p = RamseyPoint::new(3, 4);
        assert_eq!(t.improve(p, 13, Provenance::MethodA), Ok(false));
        assert_eq!(t.improve(p, 10, Provenance::MethodA), Ok(true));
        assert_eq!(t.upper(4, 3), Some(10));
        assert!(matches!(t.improve(p, 8, Provenance::MethodB), Err(Error::InconsistencyDetected { .. })));
        assert_eq!(t.upper(3, 4), Some(10));
    }

    proptest::proptest! {
        #[test]
        fn lookup_is_symmetric(recs in proptest::collection::vec((1u32..12, 1u32..12, 1u64..50, 0u64..50), 0..30)) {
            let records = recs.into_iter().map(|(m, n, lo, extra)| seed(m, n, Some(lo), lo + extra, "p"));
            if let Ok((t, _)) = BoundsTable::ingest_seeds("t", records) {
                for m in 1..12 {
                    for n in 1..12 {
                        proptest::prop_assert_eq!(t.query(m, n), t.query(n, m));
                        if let Some(e) = t.query(m, n) {
                            proptest::prop_assert!(e.lower <= e.upper);
                        }
                    }
                    proptest::prop_assert_eq!(t.upper(2, m), Some(m as u64));
                }
            }
        }
    }
}
