use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use rbf::output::JsonReport;
use rbf::seeds::load_table;
use rbf_core::{run_fixpoint, EngineOptions, MethodSet};

fn rbf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbf")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

type Cells = BTreeMap<(u32, u32), (u64, String)>;

fn from_csv(text: &str) -> Cells {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("m,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            ((f[0].parse().unwrap(), f[1].parse().unwrap()), (f[2].parse().unwrap(), f[3].to_string()))
        })
        .collect()
}

fn from_json(text: &str) -> Cells {
    let report: JsonReport = serde_json::from_str(text).unwrap();
    report.cells.into_iter().map(|c| ((c.m, c.n), (c.upper, c.label))).collect()
}

/// Reads `value` or `value (x)` cells, with optional `**` emphasis.
fn from_markdown(text: &str, max_n: u32) -> Cells {
    let mut cells = Cells::new();
    for line in text.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| m")) {
        let fields: Vec<&str> = line.trim_matches('|').split('|').map(str::trim).collect();
        let m: u32 = fields[0].parse().unwrap();
        for (n, f) in (3..=max_n).zip(&fields[1..]) {
            if f.is_empty() {
                continue;
            }
            let (value, label) = match f.split_once(" (") {
                Some((v, l)) => (v, l.trim_end_matches(')').to_string()),
                None => (*f, "seed".to_string()),
            };
            cells.insert((m, n), (value.trim_matches('*').parse().unwrap(), label));
        }
    }
    cells
}

fn from_textable(text: &str, max_n: u32) -> Cells {
    let mut cells = Cells::new();
    for line in text.lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit())) {
        let fields: Vec<&str> = line.trim_end_matches("\\\\").split('&').map(str::trim).collect();
        let m: u32 = fields[0].parse().unwrap();
        for (n, f) in (3..=max_n).zip(&fields[2..]) {
            if f.is_empty() {
                continue;
            }
            let f = f.replace("\\textbf{", "").replace('}', "");
            let (value, label) = match f.split_once("$^") {
                Some((v, l)) => (v.to_string(), l.trim_end_matches('$').to_string()),
                None => (f.clone(), "seed".to_string()),
            };
            cells.insert((m, n), (value.parse().unwrap(), label));
        }
    }
    cells
}

#[test]
fn all_formats_carry_the_same_cells() {
    let args = |f: &'static str| vec!["compute", "--max-m", "6", "--max-n", "12", "--format", f];
    let csv = stdout(&rbf(&args("csv")));
    let json = stdout(&rbf(&args("json")));
    let md = stdout(&rbf(&args("markdown")));
    let tex = stdout(&rbf(&args("textable")));
    let reference = from_csv(&csv);
    assert_eq!(reference[&(5, 7)], (142, "b".to_string()));
    assert_eq!(reference[&(5, 11)], (629, "c".to_string()));
    assert_eq!(reference.len(), (3..=6).map(|m| 12 - m + 1).sum::<u32>() as usize);
    assert_eq!(from_json(&json), reference);
    assert_eq!(from_markdown(&md, 12), reference);
    assert_eq!(from_textable(&tex, 12), reference);
    let revision = "DS1.15";
    for text in [&csv, &json, &md, &tex] {
        assert!(text.contains(revision));
    }
    assert!(md.contains("**142** (b)"));
    assert!(tex.contains("\\textbf{142}$^b$"));
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let out = rbf(&["compute", "--max-m", "5", "--max-n", "9", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let (restored, _) = load_table(&path).unwrap();
    let (seeds, _) = rbf::bundled_table().unwrap();
    let direct = run_fixpoint(&seeds, &EngineOptions::new(5, 9, MethodSet::ALL)).unwrap().table;
    assert_eq!(restored, direct);

    // a restored table is already at its fixpoint
    let rerun = stdout(&rbf(&["compute", "--max-m", "5", "--max-n", "9", "--seeds", path.to_str().unwrap()]));
    let first = stdout(&rbf(&["compute", "--max-m", "5", "--max-n", "9"]));
    assert_eq!(rerun, first);
}

#[test]
fn missing_seed_file_fails_without_output() {
    let out = rbf(&["compute", "--seeds", "/definitely/not/here.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not/here.csv"));
}

#[test]
fn bad_arguments_exit_with_one() {
    assert_eq!(rbf(&["compute", "--max-m", "2"]).status.code(), Some(1));
    assert_eq!(rbf(&["compute", "--max-m", "7", "--max-n", "5"]).status.code(), Some(1));
    assert_eq!(rbf(&["compute", "--methods", "xyz"]).status.code(), Some(1));
    assert_eq!(rbf(&["compute", "--format", "pdf"]).status.code(), Some(1));
    assert_eq!(rbf(&["compute", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(rbf(&["--help"]).status.code(), Some(0));
}

#[test]
fn inconsistent_seeds_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    // the rules derive R(3,5) <= 14 from the base cases, below the seeded lower bound
    std::fs::write(&path, "# revision: test\n3,5,20,30,bogus\n").unwrap();
    let out = rbf(&["compute", "--max-m", "3", "--max-n", "5", "--seeds", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());

    std::fs::write(&path, "3,5,20,10,reversed\n").unwrap();
    assert_eq!(rbf(&["compute", "--seeds", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn malformed_seed_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "3,5,14\n").unwrap();
    let out = rbf(&["compute", "--seeds", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn base_only_seeds_give_the_classical_values() {
    let seeds = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/base-only.csv");
    let out = stdout(&rbf(&["compute", "--max-m", "4", "--max-n", "5", "--methods", "a", "--seeds", seeds.to_str().unwrap()]));
    let cells = from_csv(&out);
    assert_eq!(cells[&(3, 3)].0, 6);
    assert_eq!(cells[&(3, 4)].0, 9);
    assert_eq!(cells[&(3, 5)].0, 14);
    assert_eq!(cells[&(4, 4)].0, 18);
}

#[test]
fn explain_prints_a_derivation_tree() {
    let out = stdout(&rbf(&["explain", "8", "9"]));
    assert!(out.contains("method a: 1711 + 1865 = 3576"));
    assert!(out.contains("R(7,9) <= 1711"));
    assert!(out.contains("(see above)"));
    let base = stdout(&rbf(&["explain", "2", "7"]));
    assert!(base.contains("base case: R(2,7) = 7"));
}

#[test]
fn edges_command_reports_bounds_or_nonexistence() {
    let five = stdout(&rbf(&["edges", "3", "3", "5"]));
    assert!(five.contains("e_lower = 5") && five.contains("E_upper = 5"));
    assert!(stdout(&rbf(&["edges", "3", "3", "6"])).contains("NONEXISTENT"));
    assert!(stdout(&rbf(&["edges", "2", "4", "3"])).contains("E_upper = 0"));
}

#[test]
fn oracle_commands() {
    let out = stdout(&rbf(&["oracle", "edges", "3", "3", "5", "--witness"]));
    assert!(out.contains("e = 5, E = 5"));
    assert!(stdout(&rbf(&["oracle", "edges", "3", "4", "9", "--ceiling", "9"])).contains("no such graph"));
    assert_eq!(rbf(&["oracle", "edges", "3", "4", "9"]).status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_rbf"))
        .args(["oracle", "verify", "--max-order", "6"])
        .env("RBF_THREADS", "2")
        .output()
        .unwrap();
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
