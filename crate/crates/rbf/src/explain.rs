//! Human-readable derivation trees.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rbf_core::{base_value, BoundsTable, DerivationRecord, FeasibilityOutcome, Method, Provenance, RamseyPoint};

fn outcome_line(p: u64, o: &FeasibilityOutcome) -> String {
    let interval = o.interval.map_or("empty".to_string(), |(lo, hi)| format!("[{lo}, {hi}]"));
    match (o.holds, o.rhs, o.witness_d) {
        (true, Some(rhs), Some(d)) => {
            format!("p = {p}: holds, lhs {} <= rhs {rhs} at d = {d} (degree interval {interval})", o.lhs)
        }
        (_, Some(rhs), d) => {
            let at = d.map(|d| format!(" at d = {d}")).unwrap_or_default();
            format!("p = {p}: fails, lhs {} > max rhs {rhs}{at} (degree interval {interval})", o.lhs)
        }
        (_, None, _) => format!("p = {p}: fails, no feasible degree (degree interval {interval})"),
    }
}

fn method_lines(point: RamseyPoint, rec: &DerivationRecord) -> Vec<String> {
    let mut lines = Vec::new();
    match rec.method {
        Method::A => {
            let (l, r) = (
                rec.premises.iter().find(|(c, _)| *c == RamseyPoint::new(point.m - 1, point.n)),
                rec.premises.iter().find(|(c, _)| *c == RamseyPoint::new(point.m, point.n - 1)),
            );
            if let (Some(&(_, a)), Some(&(_, b))) = (l, r) {
                if a % 2 == 0 && b % 2 == 0 {
                    lines.push(format!("method a: {a} + {b} - 1 = {} (both even)", a + b - 1));
                } else {
                    lines.push(format!("method a: {a} + {b} = {}", a + b));
                }
            }
        }
        Method::B | Method::C => {
            let name = if rec.method == Method::B { "method b (degree test)" } else { "method c (triangle test)" };
            lines.push(format!("{name}: no ({},{};{})-graph", point.m, point.n, rec.failing_p));
            if let Some(params) = &rec.params {
                lines.push(format!("  params {params}"));
            }
            if let Some(o) = &rec.at_failing {
                lines.push(format!("  {}", outcome_line(rec.failing_p, o)));
            }
            if let Some(o) = &rec.at_previous {
                lines.push(format!("  {}", outcome_line(rec.failing_p - 1, o)));
            }
        }
    }
    lines
}

fn walk(table: &BoundsTable, point: RamseyPoint, depth: usize, seen: &mut BTreeSet<RamseyPoint>, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Some(v) = base_value(point.m, point.n) {
        let _ = writeln!(out, "{pad}base case: R({},{}) = {v}", point.m, point.n);
        return;
    }
    let Some(entry) = table.query(point.m, point.n) else {
        let _ = writeln!(out, "{pad}R({},{}): no bound known", point.m, point.n);
        return;
    };
    let head = format!("{pad}R({},{}) <= {}", point.m, point.n, entry.upper);
    if !seen.insert(point) {
        let _ = writeln!(out, "{head} (see above)");
        return;
    }
    match (&entry.derivation, entry.provenance) {
        (Some(rec), Provenance::MethodA | Provenance::MethodB | Provenance::MethodC) => {
            let _ = writeln!(out, "{head}");
            for line in method_lines(point, rec) {
                let _ = writeln!(out, "{pad}  {line}");
            }
            for (cell, _) in &rec.premises {
                walk(table, *cell, depth + 2, seen, out);
            }
        }
        _ => {
            let source = entry.source.as_deref().unwrap_or("unknown");
            let _ = writeln!(out, "{head} (seed: {source})");
        }
    }
}

/// Derivation tree for `R(m,n)` against a computed table. Cells already
/// printed are referenced rather than repeated.
pub fn explain(table: &BoundsTable, m: u32, n: u32) -> String {
    let mut out = format!("revision: {}\n", table.revision());
    let mut seen = BTreeSet::new();
    walk(table, RamseyPoint::new(m, n), 0, &mut seen, &mut out);
    out
}
