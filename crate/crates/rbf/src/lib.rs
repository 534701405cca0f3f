//! Driver for the Ramsey upper-bound engine: seed files, report formats,
//! derivation trees and oracle self-checks.

pub mod error;
pub mod explain;
pub mod output;
pub mod seeds;
pub mod verify;

use rbf_core::{run_fixpoint, BoundsTable, EngineOptions, FixpointResult, MethodSet, Warning};

pub use error::CliError;

/// Seeds shipped with the tool, used when no seed file is given.
pub const BUNDLED_SEEDS: &str = include_str!("../data/survey-ds15.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub max_m: u32,
    pub max_n: u32,
    pub methods: MethodSet,
    pub deep_scan: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_m < 3 || self.max_m > self.max_n {
            return Err(CliError::Usage(format!(
                "need 3 <= max-m <= max-n, got max-m {} and max-n {}",
                self.max_m, self.max_n
            )));
        }
        if self.methods.is_empty() {
            return Err(CliError::Usage("method set is empty".into()));
        }
        Ok(())
    }

    pub fn engine_options(&self) -> EngineOptions {
        EngineOptions { deep_scan: self.deep_scan, ..EngineOptions::new(self.max_m, self.max_n, self.methods) }
    }
}

/// The bundled seed table.
pub fn bundled_table() -> Result<(BoundsTable, Vec<Warning>), CliError> {
    let seeds = seeds::parse_seed_csv(BUNDLED_SEEDS)?;
    Ok(BoundsTable::ingest_seeds(seeds.revision, seeds.records)?)
}

/// Validates the configuration and runs the engine to its fixpoint.
/// Seed warnings are prepended to the engine's own.
pub fn compute(table: &BoundsTable, seed_warnings: Vec<Warning>, cfg: &RunConfig) -> Result<FixpointResult, CliError> {
    cfg.validate()?;
    let mut result = run_fixpoint(table, &cfg.engine_options())?;
    let mut warnings = seed_warnings;
    warnings.append(&mut result.warnings);
    result.warnings = warnings;
    Ok(result)
}

/// Sizes the global thread pool from `RBF_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    match std::env::var("RBF_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("RBF_THREADS={v:?} is not a number")))?;
            // a second initialisation (e.g. in tests) keeps the first pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(())
        }
        Err(_) => Ok(()),
    }
}
