//! Recursive upper bounds for two-colour Ramsey numbers.
//!
//! An `(m,n;p)`-graph is a graph of order `p` with no clique of size `m` and
//! no independent set of size `n`; `R(m,n)` is the least `p` for which none
//! exists. This crate derives upper bounds on `R(m,n)` from a table of
//! already-known bounds at smaller arguments, using three rules of
//! increasing strength:
//!
//! * **a** — the Greenwood–Gleason sum rule with the parity refinement
//!   ([`classical`]),
//! * **b** — a degree/triangle-counting feasibility test driven by the
//!   shifted bounds `(α, β, γ, δ)` ([`triangle::hwplus_holds`]),
//! * **c** — the same feasibility test sharpened by per-degree bounds on the
//!   minimum and maximum edge numbers of the neighbourhood and
//!   non-neighbourhood graphs ([`triangle::mymain_holds`], [`edges`]).
//!
//! The [`engine`] applies all three to a fixpoint. The [`oracle`] module is
//! an exhaustive small-graph test bed used to check every ingredient.
//!
//! All arithmetic is exact integer arithmetic (`i128` for intermediates);
//! there is no floating point anywhere in the crate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bounds;
pub mod classical;
pub mod edges;
pub mod engine;
mod error;
pub mod oracle;
pub mod triangle;

pub use bounds::{base_value, get_params, BoundEntry, BoundsTable, MethodParams, Provenance, RamseyPoint, SeedRecord, Warning};
pub use classical::gg_upper;
pub use edges::{edge_bounds, edge_bounds_degenerate, quadratic_coefficients, EdgeBounds, EdgeCache};
pub use engine::{run_fixpoint, smallest_failing_p, DerivationRecord, EngineOptions, FixpointResult, Method, MethodSet};
pub use error::Error;
pub use triangle::{delta, hwplus_holds, hwplus_rhs, mymain_holds, FeasibilityOutcome};

pub type Result<T, E = Error> = core::result::Result<T, E>;
