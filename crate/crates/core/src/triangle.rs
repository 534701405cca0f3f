//! Triangle-counting feasibility tests for `(m,n;p)`-graphs.
//!
//! Both tests are necessary conditions for the existence of an
//! `(m,n;p)`-graph. When one fails at `p`, no such graph exists and
//! `R(m,n) <= p`.
//!
//! Every vertex degree of an `(m,n;p)`-graph lies in the degree interval
//! `[p-1-δ, γ]` (intersected with `[0, p-1]`); an empty interval fails both
//! tests outright.

use alloc::vec::Vec;

use crate::arith::binom2;
use crate::bounds::{get_params, BoundsTable, MethodParams};
use crate::edges::{EdgeBounds, EdgeCache};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeasibilityOutcome {
    pub holds: bool,
    /// Smallest maximizing degree, when the test holds.
    pub witness_d: Option<i64>,
    /// Left-hand side of the tested inequality.
    pub lhs: i128,
    /// The maximum on the right-hand side; `None` when no degree is feasible.
    pub rhs: Option<i128>,
    /// The degree interval scanned, `None` when empty.
    pub interval: Option<(i64, i64)>,
}

impl FeasibilityOutcome {
    fn decide(lhs: i128, interval: Option<(i64, i64)>, best: Option<(i128, i64)>) -> Self {
        let holds = best.is_some_and(|(v, _)| lhs <= v);
        FeasibilityOutcome {
            holds,
            witness_d: if holds { best.map(|(_, d)| d) } else { None },
            lhs,
            rhs: best.map(|(v, _)| v),
            interval,
        }
    }
}

/// The admissible degrees `[max(0, p-1-δ), min(γ, p-1)]`.
pub fn degree_interval(p: u64, params: &MethodParams) -> Option<(i64, i64)> {
    let p = p as i64;
    let lo = (p - 1 - params.delta).max(0);
    let hi = params.gamma.min(p - 1);
    (lo <= hi).then_some((lo, hi))
}

fn hwplus_term(p: i128, params: &MethodParams, d: i128) -> i128 {
    let (alpha, beta) = (params.alpha as i128, params.beta as i128);
    -3 * d * d + (alpha - beta + 3 * (p - 1)) * d + (beta - alpha) * (p - 1)
}

/// Maximum of `-3d² + (α-β+3(p-1))d + (β-α)(p-1)` over the degree interval,
/// with the smallest maximizing `d`.
pub fn hwplus_rhs(p: u64, params: &MethodParams) -> Option<(i128, i64)> {
    let (lo, hi) = degree_interval(p, params)?;
    let k = params.alpha as i128 - params.beta as i128 + 3 * (p as i128 - 1);
    // concave: the integer maximum sits next to the vertex k/6
    let floor_v = k.div_euclid(6);
    let mut best: Option<(i128, i64)> = None;
    for cand in [floor_v, floor_v + 1] {
        let d = cand.clamp(lo as i128, hi as i128);
        let v = hwplus_term(p as i128, params, d);
        if best.is_none_or(|(bv, bd)| v > bv || (v == bv && (d as i64) < bd)) {
            best = Some((v, d as i64));
        }
    }
    best
}

/// Tests `(p-1)(p-2-α) <= max_d (-3d² + (α-β+3(p-1))d + (β-α)(p-1))`.
pub fn hwplus_holds(m: u32, n: u32, p: u64, params: &MethodParams) -> FeasibilityOutcome {
    debug_assert!(m >= 3 && n >= 3 && p >= 2);
    let pi = p as i128;
    let lhs = (pi - 1) * (pi - 2 - params.alpha as i128);
    FeasibilityOutcome::decide(lhs, degree_interval(p, params), hwplus_rhs(p, params))
}

/// The refined test for a fixed cell `(m,n)` and a fixed table.
///
/// Holds per-degree bounds `E(m-1,n;d)` for `d <= γ` and `e(m,n-1;q)` for
/// `q <= δ`; neither depends on `p`, so a downward scan over `p` reuses them.
#[derive(Debug, Clone)]
pub struct DeltaTest {
    params: MethodParams,
    /// Upper bound on `E(m-1,n;d)`, `None` when no such graph exists.
    nbr_max: Vec<Option<i64>>,
    /// Lower bound on `e(m,n-1;q)`, `None` when no such graph exists.
    non_min: Vec<Option<i64>>,
}

impl DeltaTest {
    pub fn new(table: &BoundsTable, cache: &mut EdgeCache, m: u32, n: u32) -> Result<Self> {
        let params = get_params(table, m, n)?;
        let collect = |row: Vec<EdgeBounds>, pick: fn(&EdgeBounds) -> Option<u64>| {
            row.iter().map(|b| pick(b).map(|v| v as i64)).collect::<Vec<_>>()
        };
        let nbr_max = if params.gamma >= 0 {
            collect(cache.row(table, m - 1, n, params.gamma as u64)?, EdgeBounds::upper)
        } else {
            Vec::new()
        };
        let non_min = if params.delta >= 0 {
            collect(cache.row(table, m, n - 1, params.delta as u64)?, EdgeBounds::lower)
        } else {
            Vec::new()
        };
        Ok(DeltaTest { params, nbr_max, non_min })
    }

    pub fn params(&self) -> &MethodParams {
        &self.params
    }

    /// `E(m-1,n;d) - e(m,n-1;p-d-1)`, or `None` when either graph can not
    /// exist (the degree `d` is then impossible).
    pub fn delta(&self, p: u64, d: i64) -> Option<i128> {
        let q = p as i64 - d - 1;
        if d < 0 || q < 0 {
            return None;
        }
        let hi = *self.nbr_max.get(d as usize)?;
        let lo = *self.non_min.get(q as usize)?;
        Some(hi? as i128 - lo? as i128)
    }

    /// Tests `(p-1)(p-2) <= max_d 2C(p-d-1,2) + 2Δ + 3d(p-d-1)` over the
    /// feasible degrees.
    pub fn test(&self, p: u64) -> FeasibilityOutcome {
        let pi = p as i128;
        let lhs = (pi - 1) * (pi - 2);
        let interval = degree_interval(p, &self.params);
        let mut best: Option<(i128, i64)> = None;
        if let Some((lo, hi)) = interval {
            for d in lo..=hi {
                let Some(delta) = self.delta(p, d) else { continue };
                let rest = pi - d as i128 - 1;
                let v = 2 * binom2(rest) + 2 * delta + 3 * d as i128 * rest;
                if best.is_none_or(|(bv, _)| v > bv) {
                    best = Some((v, d));
                }
            }
        }
        FeasibilityOutcome::decide(lhs, interval, best)
    }
}

/// `Δ(m,n,p,d) = E(m-1,n;d) - e(m,n-1;p-d-1)` from the table's current
/// bounds; `None` if either edge query reports nonexistence.
pub fn delta(table: &BoundsTable, m: u32, n: u32, p: u64, d: i64) -> Result<Option<i128>> {
    let mut cache = EdgeCache::new();
    Ok(DeltaTest::new(table, &mut cache, m, n)?.delta(p, d))
}

/// The refined feasibility test at `(m,n,p)` against the table.
pub fn mymain_holds(table: &BoundsTable, m: u32, n: u32, p: u64) -> Result<FeasibilityOutcome> {
    let mut cache = EdgeCache::new();
    Ok(DeltaTest::new(table, &mut cache, m, n)?.test(p))
}
