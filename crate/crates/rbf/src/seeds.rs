//! Seed files: line-oriented CSV `m,n,lower,upper,source`, or a JSON table
//! previously written by `compute --format json`.

use std::fs;
use std::path::Path;

use rbf_core::{BoundsTable, SeedRecord, Warning};

use crate::error::CliError;
use crate::output::JsonReport;

/// Comment prefix carrying the revision marker, e.g. `# revision: DS1.15`.
const REVISION_TAG: &str = "revision:";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedFile {
    pub revision: String,
    pub records: Vec<SeedRecord>,
}

/// Parses seed CSV text. `#` lines are comments; `?` in the lower column
/// means unknown. A leading `m,n,...` header row is tolerated.
pub fn parse_seed_csv(text: &str) -> Result<SeedFile, CliError> {
    let revision = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|c| c.trim().strip_prefix(REVISION_TAG))
        .map(|r| r.trim().to_string())
        .unwrap_or_default();

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let malformed = |reason: String| CliError::Core(rbf_core::Error::MalformedRecord { line, reason });
        if row.iter().all(str::is_empty) {
            continue;
        }
        if records.is_empty() && row.get(0) == Some("m") {
            continue;
        }
        if row.len() != 5 {
            return Err(malformed(format!("expected 5 fields, found {}", row.len())));
        }
        let int = |i: usize, what: &str| -> Result<u64, CliError> {
            row[i].parse::<u64>().map_err(|_| malformed(format!("{what} {:?} is not a non-negative integer", &row[i])))
        };
        let m = int(0, "m")?;
        let n = int(1, "n")?;
        let lower = if row[2] == *"?" { None } else { Some(int(2, "lower")?) };
        let upper = int(3, "upper")?;
        if m == 0 || n == 0 || m > u32::MAX as u64 || n > u32::MAX as u64 {
            return Err(malformed(format!("arguments ({m},{n}) out of range")));
        }
        if upper == 0 || lower == Some(0) {
            return Err(malformed("bounds must be at least 1".to_string()));
        }
        records.push(SeedRecord { m: m as u32, n: n as u32, lower, upper, source: row[4].to_string() });
    }
    Ok(SeedFile { revision, records })
}

/// Loads a bounds table from a CSV seed file or from a JSON report.
pub fn load_table(path: &Path) -> Result<(BoundsTable, Vec<Warning>), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    if text.trim_start().starts_with('{') {
        let report: JsonReport = serde_json::from_str(&text)?;
        return Ok((report.into_table()?, Vec::new()));
    }
    let seeds = parse_seed_csv(&text)?;
    Ok(BoundsTable::ingest_seeds(seeds.revision, seeds.records)?)
}
