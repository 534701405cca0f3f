//! Bounds on the minimum and maximum edge numbers `e(m,n;p)` and `E(m,n;p)`
//! of `(m,n;p)`-graphs.
//!
//! For `m, n >= 3` the bounds come from two sources:
//!
//! * every degree lies in `[p-1-δ, γ]`, so `p(p-1-δ)/2 <= e` and `E <= pγ/2`;
//! * counting triangles of `G` and its complement with Goodman's identity,
//!   capping them through `α` and `β` and applying Cauchy–Schwarz to the
//!   degree sequence gives, for the edge count `e` of any `(m,n;p)`-graph,
//!
//!   ```text
//!   12e² - 2Ae + p²(p-1)(p-β-2) <= 0,   A = (α - β + 3(p-1))p
//!   ```
//!
//!   whose roots are `(A ± √(A² - B))/12` with `B = 12p²(p-1)(p-β-2)`.
//!
//! Integer rounding is exact: the roots are bracketed with integer square
//! roots and the candidate endpoints are then checked against the quadratic
//! itself, which yields exactly `⌈lower root⌉` and `⌊upper root⌋`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{binom2, div_ceil, div_floor, isqrt_ceil, isqrt_floor};
use crate::bounds::{get_params, BoundsTable, MethodParams};
use crate::{Error, Result};

/// Largest order for which the quadratic is evaluated; beyond it `i128`
/// intermediates could overflow for adversarial parameters.
pub const MAX_ORDER: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EdgeBounds {
    /// `lower <= e(m,n;p)` and `E(m,n;p) <= upper`; both within `[0, C(p,2)]`
    /// and `lower <= upper`.
    Compatible { lower: u64, upper: u64 },
    /// No `(m,n;p)`-graph exists.
    Nonexistence,
}

impl EdgeBounds {
    pub fn is_nonexistence(&self) -> bool {
        matches!(self, EdgeBounds::Nonexistence)
    }

    pub fn lower(&self) -> Option<u64> {
        match *self {
            EdgeBounds::Compatible { lower, .. } => Some(lower),
            EdgeBounds::Nonexistence => None,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match *self {
            EdgeBounds::Compatible { upper, .. } => Some(upper),
            EdgeBounds::Nonexistence => None,
        }
    }

    fn from_range(lower: i128, upper: i128) -> Self {
        if lower > upper {
            EdgeBounds::Nonexistence
        } else {
            EdgeBounds::Compatible { lower: lower as u64, upper: upper as u64 }
        }
    }
}

/// `A = (α - β + 3(p-1))p` and `B = 12p²(p-1)(p-β-2)`.
pub fn quadratic_coefficients(p: u64, params: &MethodParams) -> (i128, i128) {
    let p = p as i128;
    let (alpha, beta) = (params.alpha as i128, params.beta as i128);
    let a = (alpha - beta + 3 * (p - 1)) * p;
    let b = 12 * p * p * (p - 1) * (p - beta - 2);
    (a, b)
}

/// Sound bounds on `e(m,n;p)` and `E(m,n;p)` for `m, n >= 3`, given the
/// parameters of the ordered pair `(m,n)`.
pub fn edge_bounds(m: u32, n: u32, p: u64, params: &MethodParams) -> Result<EdgeBounds> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidArgument("edge_bounds needs m, n >= 3; use edge_bounds_degenerate"));
    }
    if p == 0 {
        return Ok(EdgeBounds::Compatible { lower: 0, upper: 0 });
    }
    if p > MAX_ORDER || params_out_of_range(params) {
        return Err(Error::ArithmeticOverflow(p));
    }
    let (a, b) = quadratic_coefficients(p, params);
    let disc = a * a - b;
    if disc < 0 {
        return Ok(EdgeBounds::Nonexistence);
    }

    let pi = p as i128;
    let c = b / 12;
    let q = |e: i128| 12 * e * e - 2 * a * e + c;

    let mut root_lo = div_ceil(a - isqrt_ceil(disc as u128) as i128, 12);
    if q(root_lo) > 0 {
        root_lo += 1;
    }
    let mut root_hi = div_floor(a + isqrt_floor(disc as u128) as i128, 12);
    if q(root_hi + 1) <= 0 {
        root_hi += 1;
    }

    let deg_lo = div_ceil(pi * (pi - params.delta as i128 - 1), 2);
    let deg_hi = div_floor(pi * params.gamma as i128, 2);

    let lower = root_lo.max(deg_lo).max(0);
    let upper = root_hi.min(deg_hi).min(binom2(pi));
    Ok(EdgeBounds::from_range(lower, upper))
}

fn params_out_of_range(params: &MethodParams) -> bool {
    [params.alpha, params.beta, params.gamma, params.delta]
        .iter()
        .any(|v| v.unsigned_abs() > 4 * MAX_ORDER)
}

/// Exact edge numbers when `min(m,n) <= 2`.
///
/// A `(2,n)`-graph is edgeless with fewer than `n` vertices; an `(m,2)`-graph
/// is complete with fewer than `m` vertices; nothing of positive order avoids
/// a 1-clique or a 1-independent set.
pub fn edge_bounds_degenerate(m: u32, n: u32, p: u64) -> EdgeBounds {
    debug_assert!(m.min(n) <= 2);
    if p == 0 {
        return EdgeBounds::Compatible { lower: 0, upper: 0 };
    }
    if m <= 1 || n <= 1 {
        return EdgeBounds::Nonexistence;
    }
    if m == 2 {
        if p < n as u64 {
            EdgeBounds::Compatible { lower: 0, upper: 0 }
        } else {
            EdgeBounds::Nonexistence
        }
    } else if p < m as u64 {
        let full = p * (p - 1) / 2;
        EdgeBounds::Compatible { lower: full, upper: full }
    } else {
        EdgeBounds::Nonexistence
    }
}

/// Memoized edge bounds for ordered pairs, keyed by the parameters that
/// produced them so entries stay valid when the table improves.
#[derive(Debug, Default, Clone)]
pub struct EdgeCache {
    dense: BTreeMap<(u32, u32, MethodParams), Vec<EdgeBounds>>,
}

impl EdgeCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edge bounds for the ordered pair `(m,n)` at order `p`, reading
    /// parameters from `table` (closed forms when `min(m,n) <= 2`).
    pub fn bounds(&mut self, table: &BoundsTable, m: u32, n: u32, p: u64) -> Result<EdgeBounds> {
        if m.min(n) <= 2 {
            return Ok(edge_bounds_degenerate(m, n, p));
        }
        let params = get_params(table, m, n)?;
        self.bounds_with(m, n, p, params)
    }

    pub fn bounds_with(&mut self, m: u32, n: u32, p: u64, params: MethodParams) -> Result<EdgeBounds> {
        let row = self.dense.entry((m, n, params)).or_default();
        let idx = p as usize;
        while row.len() <= idx {
            let next = row.len() as u64;
            row.push(edge_bounds(m, n, next, &params)?);
        }
        Ok(row[idx])
    }

    /// Edge bounds for every order `0..=max_p`.
    pub fn row(&mut self, table: &BoundsTable, m: u32, n: u32, max_p: u64) -> Result<Vec<EdgeBounds>> {
        if m.min(n) <= 2 {
            return Ok((0..=max_p).map(|p| edge_bounds_degenerate(m, n, p)).collect());
        }
        let params = get_params(table, m, n)?;
        self.bounds_with(m, n, max_p, params)?;
        Ok(self.dense[&(m, n, params)][..=max_p as usize].to_vec())
    }

    pub fn clear(&mut self) {
        self.dense.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE33: MethodParams = MethodParams { alpha: 0, beta: 0, gamma: 2, delta: 2 };

    #[test]
    fn coefficients() {
        assert_eq!(quadratic_coefficients(5, &BASE33), (60, 3600));
        assert_eq!(quadratic_coefficients(6, &BASE33), (90, 8640));
        let odd = MethodParams::new(7, 3, 10, 10);
        assert_eq!(quadratic_coefficients(1, &odd), (4, 0));
    }

    #[test]
    fn pentagon_is_pinned() {
        assert_eq!(edge_bounds(3, 3, 5, &BASE33).unwrap(), EdgeBounds::Compatible { lower: 5, upper: 5 });
    }

    #[test]
    fn order_six_has_no_real_root() {
        assert_eq!(edge_bounds(3, 3, 6, &BASE33).unwrap(), EdgeBounds::Nonexistence);
    }

    #[test]
    fn empty_graph() {
        let any = MethodParams::new(11, 4, 30, 2);
        assert_eq!(edge_bounds(3, 3, 0, &any).unwrap(), EdgeBounds::Compatible { lower: 0, upper: 0 });
    }

    #[test]
    fn degenerate_forms() {
        assert_eq!(edge_bounds_degenerate(2, 3, 2), EdgeBounds::Compatible { lower: 0, upper: 0 });
        assert_eq!(edge_bounds_degenerate(3, 2, 2), EdgeBounds::Compatible { lower: 1, upper: 1 });
        assert_eq!(edge_bounds_degenerate(2, 3, 3), EdgeBounds::Nonexistence);
        assert_eq!(edge_bounds_degenerate(1, 5, 0), EdgeBounds::Compatible { lower: 0, upper: 0 });
        assert_eq!(edge_bounds_degenerate(1, 5, 1), EdgeBounds::Nonexistence);
        assert_eq!(edge_bounds_degenerate(6, 2, 5), EdgeBounds::Compatible { lower: 10, upper: 10 });
        assert_eq!(edge_bounds_degenerate(6, 2, 6), EdgeBounds::Nonexistence);
    }

    #[test]
    fn rejects_degenerate_pairs() {
        assert!(edge_bounds(2, 5, 3, &BASE33).is_err());
    }

    #[test]
    fn width_contract_at_two_to_the_twenty() {
        let p = 1u64 << 20;
        let pi = p as i64;
        let params = MethodParams::new(pi / 3, pi / 2, pi / 2, pi / 2 + 7);
        assert!(edge_bounds(5, 9, p, &params).is_ok());
        let params = MethodParams::new(pi, 0, pi, pi);
        assert!(edge_bounds(5, 9, p, &params).is_ok());
    }

    #[test]
    fn cache_matches_direct() {
        let table = BoundsTable::new("base");
        let mut cache = EdgeCache::new();
        for p in 0..8 {
            assert_eq!(cache.bounds(&table, 3, 3, p).unwrap(), edge_bounds(3, 3, p, &BASE33).unwrap());
        }
        let row = cache.row(&table, 2, 4, 5).unwrap();
        assert_eq!(row.len(), 6);
        assert!(row[4].is_nonexistence());
    }

    /// Real-valued interval from the displayed root formula, evaluated with
    /// 256 bits of headroom through a slow bisection square root. Independent
    /// of the integer tightening path.
    fn bisect_roots(p: u64, params: &MethodParams) -> Option<(i128, i128)> {
        let (a, b) = quadratic_coefficients(p, params);
        let disc = a * a - b;
        if disc < 0 {
            return None;
        }
        // Smallest integer k with 12k >= a - sqrt(disc), i.e. sqrt(disc) >= a - 12k.
        let ge_sqrt = |t: i128| t <= 0 || t * t <= disc;
        let mut lo = -(1i128 << 60);
        let mut hi = 1i128 << 60;
        while lo < hi {
            let mid = lo + (hi - lo).div_euclid(2);
            if ge_sqrt(a - 12 * mid) { hi = mid } else { lo = mid + 1 }
        }
        let ceil_lo = lo;
        // Largest integer k with 12k <= a + sqrt(disc), i.e. 12k - a <= sqrt(disc).
        let le_sqrt = |t: i128| t <= 0 || t * t <= disc;
        let mut lo = -(1i128 << 60);
        let mut hi = 1i128 << 60;
        while lo < hi {
            let mid = lo + (hi - lo + 1).div_euclid(2);
            if le_sqrt(12 * mid - a) { lo = mid } else { hi = mid - 1 }
        }
        Some((ceil_lo, lo))
    }

    proptest::proptest! {
        #[test]
        fn rounding_is_exact_and_sound(
            p in 1u64..5000,
            alpha in 0i64..3000,
            beta in 0i64..3000,
        ) {
            let params = MethodParams::new(alpha, beta, p as i64, p as i64);
            let got = edge_bounds(3, 3, p, &params).unwrap();
            let full = (p * (p - 1) / 2) as i128;
            match bisect_roots(p, &params) {
                None => proptest::prop_assert!(got.is_nonexistence()),
                Some((lo, hi)) => {
                    let lo = lo.max(0);
                    let hi = hi.min(full);
                    if lo > hi {
                        proptest::prop_assert!(got.is_nonexistence());
                    } else {
                        proptest::prop_assert_eq!(got, EdgeBounds::Compatible { lower: lo as u64, upper: hi as u64 });
                    }
                }
            }
        }

        #[test]
        fn shrinking_params_never_widens(p in 2u64..400, a in 0i64..200, b in 0i64..200, g in 0i64..400, d in 0i64..400) {
            let base = MethodParams::new(a, b, g, d);
            let tighter = [
                MethodParams { alpha: (a - 1).max(0), ..base },
                MethodParams { beta: (b - 1).max(0), ..base },
                MethodParams { gamma: (g - 1).max(0), ..base },
                MethodParams { delta: (d - 1).max(0), ..base },
            ];
            let wide = edge_bounds(4, 4, p, &base).unwrap();
            for t in tighter {
                let narrow = edge_bounds(4, 4, p, &t).unwrap();
                if let EdgeBounds::Compatible { lower, upper } = narrow {
                    // A compatible narrow result means the wide one is compatible and contains it.
                    let EdgeBounds::Compatible { lower: wl, upper: wu } = wide else {
                        return Err(proptest::test_runner::TestCaseError::fail("tighter params produced existence"));
                    };
                    proptest::prop_assert!(wl <= lower && upper <= wu);
                }
            }
        }
    }
}
