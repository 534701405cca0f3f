//! Fixpoint driver over the bounds table.
//!
//! Cells `(m,n)` with `3 <= m <= n` are processed in waves of constant
//! `m + n`. Every premise of a cell has a strictly smaller argument sum, so
//! the cells of one wave only read earlier waves; their updates are collected
//! and written back at the wave boundary. Sweeps repeat until nothing
//! improves.
//!
//! Within a cell the rules run in the order a, b, c, each starting from the
//! bound left by the previous one. After convergence every cell that is not
//! simply at its seeded value is labelled with the weakest rule that
//! reproduces its final value against the final table.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bounds::{get_params, BoundsTable, MethodParams, Provenance, RamseyPoint, Warning};
use crate::classical::gg_upper;
use crate::edges::EdgeCache;
use crate::triangle::{hwplus_holds, DeltaTest, FeasibilityOutcome};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    /// Sum rule with parity.
    #[cfg_attr(feature = "serde", serde(rename = "a"))]
    A,
    /// Degree/triangle test on `(α, β, γ, δ)`.
    #[cfg_attr(feature = "serde", serde(rename = "b"))]
    B,
    /// Degree/triangle test refined by per-degree edge bounds.
    #[cfg_attr(feature = "serde", serde(rename = "c"))]
    C,
}

impl Method {
    pub fn provenance(self) -> Provenance {
        match self {
            Method::A => Provenance::MethodA,
            Method::B => Provenance::MethodB,
            Method::C => Provenance::MethodC,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Method::A => 'a',
            Method::B => 'b',
            Method::C => 'c',
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MethodSet {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl MethodSet {
    pub const ALL: MethodSet = MethodSet { a: true, b: true, c: true };
    pub const NONE: MethodSet = MethodSet { a: false, b: false, c: false };

    pub fn contains(&self, m: Method) -> bool {
        match m {
            Method::A => self.a,
            Method::B => self.b,
            Method::C => self.c,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.a || self.b || self.c)
    }

    pub fn is_subset(&self, other: &MethodSet) -> bool {
        (!self.a || other.a) && (!self.b || other.b) && (!self.c || other.c)
    }
}

impl FromStr for MethodSet {
    type Err = Error;

    /// Parses letters such as `"abc"` or `"a,b"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut set = MethodSet::NONE;
        for ch in s.chars() {
            match ch.to_ascii_lowercase() {
                'a' => set.a = true,
                'b' => set.b = true,
                'c' => set.c = true,
                ',' | ' ' => {}
                _ => return Err(Error::InvalidArgument("methods are letters from {a, b, c}")),
            }
        }
        Ok(set)
    }
}

impl fmt::Display for MethodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in [Method::A, Method::B, Method::C] {
            if self.contains(m) {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// How a cell's final upper bound is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivationRecord {
    pub method: Method,
    /// The certified bound: the sum-rule value for a, the failing order for b and c.
    pub failing_p: u64,
    /// Upper bounds read from the table, canonical cells in ascending order.
    pub premises: Vec<(RamseyPoint, u64)>,
    /// Sweep in which the cell reached its final value; 0 if the seed already had it.
    pub wave: u32,
    pub params: Option<MethodParams>,
    /// The failed test at `failing_p` (b and c).
    pub at_failing: Option<FeasibilityOutcome>,
    /// The test one order lower, where the downward scan stopped (b and c).
    pub at_previous: Option<FeasibilityOutcome>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub max_m: u32,
    pub max_n: u32,
    pub methods: MethodSet,
    /// Keep scanning below the first holding order and take the smallest failure.
    pub deep_scan: bool,
}

impl EngineOptions {
    pub fn new(max_m: u32, max_n: u32, methods: MethodSet) -> Self {
        EngineOptions { max_m, max_n, methods, deep_scan: false }
    }
}

#[derive(Debug, Clone)]
pub struct FixpointResult {
    pub table: BoundsTable,
    /// One record per labelled cell, in canonical cell order.
    pub records: Vec<(RamseyPoint, DerivationRecord)>,
    pub warnings: Vec<Warning>,
    pub sweeps: u32,
}

/// Scans `p` downward from `scan_start` while `holds(p)` is false and
/// returns the smallest failing `p` of that run, or `None` if the test holds
/// at `scan_start`. Orders below `scan_floor` are never tested.
///
/// With `deep`, scanning continues to `scan_floor` past holding orders and
/// the smallest failing order overall is returned.
pub fn smallest_failing_p<F>(mut holds: F, scan_floor: u64, scan_start: u64, deep: bool) -> Option<u64>
where
    F: FnMut(u64) -> bool,
{
    let mut best = None;
    let mut p = scan_start;
    while p >= scan_floor {
        if holds(p) {
            if !deep {
                break;
            }
        } else {
            best = Some(p);
        }
        if p == 0 {
            break;
        }
        p -= 1;
    }
    best
}

/// All cells `(m,n)` with `3 <= m <= max_m`, `m <= n <= max_n`, grouped by `m + n`.
pub fn cell_waves(max_m: u32, max_n: u32) -> Vec<Vec<RamseyPoint>> {
    let mut waves = Vec::new();
    if max_m < 3 || max_n < 3 {
        return waves;
    }
    for s in 6..=max_m + max_n {
        let wave: Vec<_> = (3..=max_m.min(s / 2))
            .map(|m| RamseyPoint { m, n: s - m })
            .filter(|p| p.n <= max_n && p.n >= p.m)
            .collect();
        if !wave.is_empty() {
            waves.push(wave);
        }
    }
    waves
}

/// The cells whose upper bounds the given rule reads at `(m,n)`.
pub fn premise_cells(method: Method, m: u32, n: u32) -> Vec<RamseyPoint> {
    let mut cells = BTreeSet::new();
    match method {
        Method::A => {
            cells.insert(RamseyPoint::new(m - 1, n));
            cells.insert(RamseyPoint::new(m, n - 1));
        }
        Method::B => {
            for (x, y) in MethodParams::premises(m, n) {
                cells.insert(RamseyPoint::new(x, y));
            }
        }
        Method::C => {
            for (x, y) in MethodParams::premises(m, n) {
                cells.insert(RamseyPoint::new(x, y));
            }
            for (sm, sn) in [(m - 1, n), (m, n - 1)] {
                if sm >= 3 && sn >= 3 {
                    for (x, y) in MethodParams::premises(sm, sn) {
                        cells.insert(RamseyPoint::new(x, y));
                    }
                }
            }
        }
    }
    cells.into_iter().collect()
}

fn read_premises(table: &BoundsTable, method: Method, m: u32, n: u32) -> Result<Vec<(RamseyPoint, u64)>> {
    premise_cells(method, m, n)
        .into_iter()
        .map(|c| table.require_upper(c.m, c.n).map(|u| (c, u)))
        .collect()
}

/// A fresh table holding exactly the given premises, for replaying a record.
pub fn premise_table(premises: &[(RamseyPoint, u64)]) -> BoundsTable {
    let mut t = BoundsTable::new("replay");
    for &(cell, upper) in premises {
        // lower 1 always admits the stored upper
        let _ = t.improve(cell, upper, Provenance::Seed);
    }
    t
}

struct CellUpdate {
    point: RamseyPoint,
    upper: u64,
    method: Method,
}

/// The best bound the enabled rules give for one cell against `table`.
fn evaluate_cell(
    table: &BoundsTable,
    cache: &mut EdgeCache,
    point: RamseyPoint,
    opts: &EngineOptions,
    warnings: &mut Vec<Warning>,
) -> Result<Option<CellUpdate>> {
    let RamseyPoint { m, n } = point;
    let current = table.upper(m, n);
    let lower = table.lower(m, n).unwrap_or(1);
    let mut best: Option<(u64, Method)> = None;
    let bound = |best: &Option<(u64, Method)>| best.map(|b| b.0).or(current);

    let missing = |e: Error, warnings: &mut Vec<Warning>| match e {
        Error::MissingPremise(missing) => {
            warnings.push(Warning::SkippedCell { point, missing });
            Ok(())
        }
        other => Err(other),
    };

    if opts.methods.a {
        match (table.require_upper(m - 1, n), table.require_upper(m, n - 1)) {
            (Ok(l), Ok(r)) => {
                let g = gg_upper(l, r);
                if bound(&best).is_none_or(|u| g < u) {
                    best = Some((g, Method::A));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                missing(e, warnings)?;
                return Ok(None);
            }
        }
    }

    let params = match get_params(table, m, n) {
        Ok(p) => p,
        Err(e) => {
            missing(e, warnings)?;
            return Ok(best.map(|(upper, method)| CellUpdate { point, upper, method }));
        }
    };
    // beyond this order the degree interval is empty and every test fails
    let trivial = (params.gamma + params.delta + 2) as u64;
    let floor = lower.max(2);
    let start = |best: &Option<(u64, Method)>| bound(best).map_or(trivial, |u| u.saturating_sub(1).min(trivial));

    if opts.methods.b {
        let s = start(&best);
        let found = smallest_failing_p(|p| hwplus_holds(m, n, p, &params).holds, floor, s, opts.deep_scan);
        if let Some(p) = found {
            check_floor(point, p, lower, |q| hwplus_holds(m, n, q, &params).holds)?;
            if bound(&best).is_none_or(|u| p < u) {
                best = Some((p, Method::B));
            }
        }
    }

    if opts.methods.c {
        match DeltaTest::new(table, cache, m, n) {
            Ok(test) => {
                let s = start(&best);
                let found = smallest_failing_p(|p| test.test(p).holds, floor, s, opts.deep_scan);
                if let Some(p) = found {
                    check_floor(point, p, lower, |q| test.test(q).holds)?;
                    if bound(&best).is_none_or(|u| p < u) {
                        best = Some((p, Method::C));
                    }
                }
            }
            Err(e) => missing(e, warnings)?,
        }
    }

    Ok(best
        .filter(|(u, _)| current.is_none_or(|c| *u < c))
        .map(|(upper, method)| CellUpdate { point, upper, method }))
}

/// A scan that bottomed out at the lower bound may hide a failure below
/// it, which would contradict the seeds.
fn check_floor<F: FnMut(u64) -> bool>(point: RamseyPoint, p: u64, lower: u64, mut holds: F) -> Result<()> {
    if p == lower && lower > 2 && !holds(lower - 1) {
        return Err(Error::InconsistencyDetected { point, derived: lower - 1, lower });
    }
    Ok(())
}

/// Runs the enabled rules to a fixpoint over `3 <= m <= max_m`, `m <= n <= max_n`.
pub fn run_fixpoint(table: &BoundsTable, opts: &EngineOptions) -> Result<FixpointResult> {
    let mut table = table.clone();
    let mut warnings = Vec::new();
    if opts.methods.is_empty() {
        return Ok(FixpointResult { table, records: Vec::new(), warnings, sweeps: 0 });
    }
    let waves = cell_waves(opts.max_m, opts.max_n);
    let mut cache = EdgeCache::new();
    let mut improved_in: alloc::collections::BTreeMap<RamseyPoint, u32> = Default::default();

    let mut sweep = 0;
    loop {
        sweep += 1;
        let mut changed = false;
        for wave in &waves {
            let mut updates = Vec::with_capacity(wave.len());
            for &point in wave {
                if let Some(u) = evaluate_cell(&table, &mut cache, point, opts, &mut warnings)? {
                    updates.push(u);
                }
            }
            for u in updates {
                if table.improve(u.point, u.upper, u.method.provenance())? {
                    changed = true;
                    improved_in.insert(u.point, sweep);
                }
            }
        }
        if !changed {
            break;
        }
    }
    warnings.sort_by_key(|w| match w {
        Warning::SkippedCell { point, .. } | Warning::BaseCaseOverride { point, .. } => *point,
    });
    warnings.dedup();

    let mut records = Vec::new();
    for point in waves.iter().flatten() {
        // cells still at their seeded value keep the seed as provenance
        if table.stored(point.m, point.n).is_some_and(|e| e.seed_upper == Some(e.upper)) {
            continue;
        }
        if let Some(rec) = label_cell(&table, &mut cache, *point, opts.methods)? {
            let rec = DerivationRecord { wave: improved_in.get(point).copied().unwrap_or(0), ..rec };
            let entry = table.entry_mut(*point).expect("labelled cells are stored");
            entry.provenance = rec.method.provenance();
            entry.derivation = Some(rec.clone());
            records.push((*point, rec));
        }
    }
    Ok(FixpointResult { table, records, warnings, sweeps: sweep })
}

/// The weakest enabled rule that certifies the cell's current upper bound.
pub fn label_cell(
    table: &BoundsTable,
    cache: &mut EdgeCache,
    point: RamseyPoint,
    methods: MethodSet,
) -> Result<Option<DerivationRecord>> {
    let RamseyPoint { m, n } = point;
    let Some(upper) = table.upper(m, n) else { return Ok(None) };
    let record = |method, premises, params, at_failing, at_previous| DerivationRecord {
        method,
        failing_p: upper,
        premises,
        wave: 0,
        params,
        at_failing,
        at_previous,
    };

    if methods.a {
        if let Ok(premises) = read_premises(table, Method::A, m, n) {
            let g = gg_upper(table.upper(m - 1, n).unwrap(), table.upper(m, n - 1).unwrap());
            if g <= upper {
                return Ok(Some(DerivationRecord { failing_p: g, ..record(Method::A, premises, None, None, None) }));
            }
        }
    }
    let Ok(params) = get_params(table, m, n) else { return Ok(None) };
    if upper < 2 {
        return Ok(None);
    }
    if methods.b {
        let fail = hwplus_holds(m, n, upper, &params);
        if !fail.holds {
            let prev = (upper > 2).then(|| hwplus_holds(m, n, upper - 1, &params));
            let premises = read_premises(table, Method::B, m, n)?;
            return Ok(Some(record(Method::B, premises, Some(params), Some(fail), prev)));
        }
    }
    if methods.c {
        if let Ok(test) = DeltaTest::new(table, cache, m, n) {
            let fail = test.test(upper);
            if !fail.holds {
                let prev = (upper > 2).then(|| test.test(upper - 1));
                let premises = read_premises(table, Method::C, m, n)?;
                return Ok(Some(record(Method::C, premises, Some(params), Some(fail), prev)));
            }
        }
    }
    Ok(None)
}

/// Re-runs a record's test on a table holding only its premises.
/// Returns whether the test fails at `failing_p`.
pub fn replay(point: RamseyPoint, record: &DerivationRecord) -> Result<bool> {
    let table = premise_table(&record.premises);
    let RamseyPoint { m, n } = point;
    Ok(match record.method {
        Method::A => gg_upper(table.require_upper(m - 1, n)?, table.require_upper(m, n - 1)?) <= record.failing_p,
        Method::B => !hwplus_holds(m, n, record.failing_p, &get_params(&table, m, n)?).holds,
        Method::C => !crate::triangle::mymain_holds(&table, m, n, record.failing_p)?.holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn base() -> BoundsTable {
        BoundsTable::new("base")
    }

    #[test]
    fn classical_chain_from_base_cases() {
        let opts = EngineOptions::new(4, 5, "a".parse().unwrap());
        let r = run_fixpoint(&base(), &opts).unwrap();
        let t = &r.table;
        assert_eq!(t.upper(3, 3), Some(6));
        assert_eq!(t.upper(3, 4), Some(9));
        assert_eq!(t.upper(3, 5), Some(14));
        assert_eq!(t.upper(4, 4), Some(18));
        assert!(r.records.iter().all(|(_, rec)| rec.method == Method::A));
    }

    #[test]
    fn empty_method_set_is_identity() {
        let r = run_fixpoint(&base(), &EngineOptions::new(5, 5, MethodSet::NONE)).unwrap();
        assert_eq!(r.table, base());
        assert!(r.records.is_empty());
    }

    #[test]
    fn scan_examples() {
        let params = MethodParams::new(0, 0, 2, 2);
        // after the sum rule gave 6, the scan starts at 5 where the test holds
        assert_eq!(smallest_failing_p(|p| hwplus_holds(3, 3, p, &params).holds, 2, 5, false), None);
        assert_eq!(smallest_failing_p(|p| hwplus_holds(3, 3, p, &params).holds, 2, 6, false), Some(6));
    }

    #[test]
    fn deep_scan_finds_isolated_failures() {
        let holds = |p: u64| p != 3 && p < 10;
        assert_eq!(smallest_failing_p(holds, 1, 12, false), Some(10));
        assert_eq!(smallest_failing_p(holds, 1, 12, true), Some(3));
        assert_eq!(smallest_failing_p(holds, 5, 12, true), Some(10));
    }

    #[test]
    fn triangle_rule_alone_gives_r33() {
        let r = run_fixpoint(&base(), &EngineOptions::new(3, 3, "b".parse().unwrap())).unwrap();
        assert_eq!(r.table.upper(3, 3), Some(6));
        let (_, rec) = &r.records[0];
        assert_eq!(rec.method, Method::B);
        assert!(replay(RamseyPoint::new(3, 3), rec).unwrap());
    }

    #[test]
    fn waves_are_ordered_by_sum() {
        let w = cell_waves(4, 5);
        let flat: Vec<_> = w.iter().flatten().map(|p| (p.m, p.n)).collect();
        assert_eq!(flat, [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5)]);
    }

    #[test]
    fn bad_seed_is_detected() {
        use crate::bounds::SeedRecord;
        let (t, _) = BoundsTable::ingest_seeds(
            "t",
            [SeedRecord { m: 3, n: 4, lower: Some(10), upper: 12, source: "wrong".to_string() }],
        )
        .unwrap();
        let r = run_fixpoint(&t, &EngineOptions::new(3, 4, "a".parse().unwrap()));
        assert!(matches!(r, Err(Error::InconsistencyDetected { .. })));
    }

    #[test]
    fn method_set_parsing() {
        assert_eq!("abc".parse::<MethodSet>().unwrap(), MethodSet::ALL);
        assert_eq!("a,c".parse::<MethodSet>().unwrap(), MethodSet { a: true, b: false, c: true });
        assert!("d".parse::<MethodSet>().is_err());
        assert_eq!(MethodSet { a: false, b: true, c: true }.to_string(), "bc");
    }
}
