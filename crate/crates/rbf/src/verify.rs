//! Self-checks of the derivation rules against exhaustive enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rbf_core::oracle::{goodman_check, is_mn_graph, EdgeSearch, Extremes, Graph, MAX_ORDER};
use rbf_core::{edge_bounds, get_params, hwplus_holds, mymain_holds, BoundsTable, EdgeBounds, Result, SeedRecord};

/// Number of random graphs for the Goodman check beyond the exhaustive range.
pub const RANDOM_GRAPHS: usize = 10_000;

/// Exactly known values small enough to be checked by enumeration.
pub const EXACT: [(u32, u32, u64); 6] = [(3, 3, 6), (3, 4, 9), (3, 5, 14), (3, 6, 18), (4, 4, 18), (4, 5, 25)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckResult { name: name.to_string(), passed, detail }
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// A table holding the exact values in [`EXACT`].
pub fn exact_table() -> BoundsTable {
    let records = EXACT.iter().map(|&(m, n, r)| SeedRecord { m, n, lower: Some(r), upper: r, source: "exact".into() });
    BoundsTable::ingest_seeds("exact small values", records).expect("consistent values").0
}

/// Exact `(e, E)` for `(m,n;p)`-graphs, searched in parallel over prefixes.
pub fn exact_edges(m: usize, n: usize, p: usize, ceiling: usize) -> Result<Option<(usize, usize)>> {
    let search = EdgeSearch::new(m, n, p, ceiling)?;
    let ext = search
        .partitions(p.min(4))
        .par_iter()
        .map(|prefix| search.extremes_from(prefix))
        .reduce(|| None, Extremes::merge);
    Ok(ext.map(|x| (x.min, x.max)))
}

fn goodman(max_order: usize, seed: u64) -> CheckResult {
    let exhaustive = max_order.min(6);
    let mut bad = 0usize;
    let mut count = 0usize;
    for p in 0..=exhaustive {
        let pairs = p * p.saturating_sub(1) / 2;
        let failures = (0u64..1 << pairs).into_par_iter().filter(|&mask| !goodman_check(&Graph::from_edge_mask(p, mask as u128))).count();
        bad += failures;
        count += 1 << pairs;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(usize, u128)> = (0..RANDOM_GRAPHS)
        .map(|_| {
            let p = rng.random_range(7..=10usize);
            let mask: u128 = rng.random::<u64>() as u128;
            (p, mask)
        })
        .collect();
    bad += samples.par_iter().filter(|&&(p, mask)| !goodman_check(&Graph::from_edge_mask(p, mask))).count();
    count += samples.len();
    CheckResult::new(
        "goodman identity",
        bad == 0,
        format!("{count} graphs (all of order <= {exhaustive}, {RANDOM_GRAPHS} random of order 7..10, seed {seed}), {bad} mismatches"),
    )
}

fn complement_duality(max_order: usize) -> CheckResult {
    let top = max_order.min(6);
    let mut bad = 0usize;
    for p in 0..=top {
        let pairs = p * p.saturating_sub(1) / 2;
        bad += (0u64..1 << pairs)
            .into_par_iter()
            .filter(|&mask| {
                let g = Graph::from_edge_mask(p, mask as u128);
                let h = g.complement();
                (3..=4).any(|m| (3..=5).any(|n| is_mn_graph(&g, m, n) != is_mn_graph(&h, n, m)))
            })
            .count();
    }
    CheckResult::new("complement duality", bad == 0, format!("orders <= {top}, {bad} asymmetric graphs"))
}

fn existence_boundary() -> CheckResult {
    let mut lines = Vec::new();
    let mut ok = true;
    for (m, n, r) in [(3usize, 3usize, 6usize), (3, 4, 9)] {
        let below = exact_edges(m, n, r - 1, MAX_ORDER).ok().flatten().is_some();
        let at = exact_edges(m, n, r, MAX_ORDER).ok().flatten().is_some();
        ok &= below && !at;
        lines.push(format!("R({m},{n}) = {r}: order {} {}, order {r} {}", r - 1, if below { "exists" } else { "MISSING" }, if at { "EXISTS" } else { "none" }));
    }
    CheckResult::new("existence boundary", ok, lines.join("; "))
}

fn sound(bounds: EdgeBounds, exact: Option<(usize, usize)>) -> bool {
    match (bounds, exact) {
        (EdgeBounds::Nonexistence, Some(_)) => false,
        (EdgeBounds::Compatible { lower, upper }, Some((e, big_e))) => lower <= e as u64 && upper >= big_e as u64,
        (_, None) => true,
    }
}

const EDGE_PAIRS: [(u32, u32); 4] = [(3, 3), (3, 4), (3, 5), (4, 4)];

fn edge_soundness(table: &BoundsTable, max_order: usize) -> CheckResult {
    let cases: Vec<(u32, u32, usize)> =
        EDGE_PAIRS.iter().flat_map(|&(m, n)| (0..=max_order).map(move |p| (m, n, p))).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(m, n, p)| {
            let params = get_params(table, m, n).ok()?;
            let bounds = edge_bounds(m, n, p as u64, &params).ok()?;
            let exact = exact_edges(m as usize, n as usize, p, MAX_ORDER).ok()?;
            (!sound(bounds, exact)).then(|| format!("({m},{n};{p}): bounds {bounds:?}, exact {exact:?}"))
        })
        .collect();
    CheckResult::new(
        "edge-bound soundness",
        failures.is_empty(),
        if failures.is_empty() { format!("{} cases, p <= {max_order}", cases.len()) } else { failures.join("; ") },
    )
}

fn feasibility_soundness(table: &BoundsTable, max_order: usize) -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for &(m, n) in &EDGE_PAIRS {
        let r = table.upper(m, n).expect("exact value present");
        let Ok(params) = get_params(table, m, n) else { continue };
        for p in 2..r.min(max_order as u64 + 1) {
            count += 1;
            if !hwplus_holds(m, n, p, &params).holds {
                failures.push(format!("degree test rejects existing ({m},{n};{p})-graphs"));
            }
            match mymain_holds(table, m, n, p) {
                Ok(o) if o.holds => {}
                _ => failures.push(format!("triangle test rejects existing ({m},{n};{p})-graphs")),
            }
        }
    }
    CheckResult::new(
        "feasibility-test soundness",
        failures.is_empty(),
        if failures.is_empty() { format!("{count} orders below R(m,n)") } else { failures.join("; ") },
    )
}

fn neighbourhood_recursion(max_order: usize) -> CheckResult {
    let mut graphs = 0usize;
    let mut bad = 0usize;
    for (m, n) in [(3usize, 4usize), (4, 3), (3, 5)] {
        for p in 1..=max_order.min(8) {
            let Ok(search) = EdgeSearch::new(m, n, p, MAX_ORDER) else { continue };
            search.visit(|g| {
                graphs += 1;
                let ok = (0..g.order()).all(|v| {
                    is_mn_graph(&g.neighbourhood(v), m - 1, n) && is_mn_graph(&g.non_neighbourhood(v), m, n - 1)
                });
                if !ok {
                    bad += 1;
                }
            });
        }
    }
    CheckResult::new("neighbourhood recursion", bad == 0, format!("{graphs} labelled graphs, {bad} violations"))
}

/// Runs every check; `max_order` bounds the orders enumerated exhaustively.
pub fn run_all(max_order: usize, seed: u64) -> Vec<CheckResult> {
    let table = exact_table();
    vec![
        goodman(max_order, seed),
        complement_duality(max_order),
        existence_boundary(),
        edge_soundness(&table, max_order),
        feasibility_soundness(&table, max_order),
        neighbourhood_recursion(max_order),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_search_matches_sequential() {
        let seq = rbf_core::oracle::exact_edge_numbers(3, 4, 7, 8).unwrap();
        assert_eq!(exact_edges(3, 4, 7, 8).unwrap(), seq);
    }

    #[test]
    fn exact_table_is_tight() {
        let t = exact_table();
        assert_eq!(t.lower(3, 5), Some(14));
        assert_eq!(t.upper(5, 3), Some(14));
    }
}
