use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rbf::output::{Format, Report};
use rbf::{explain, seeds, verify, CliError, RunConfig};
use rbf_core::oracle::{EdgeSearch, Graph, DEFAULT_CEILING};
use rbf_core::{edge_bounds, edge_bounds_degenerate, get_params, BoundsTable, EdgeBounds, MethodSet, Warning};

#[derive(Parser)]
#[command(name = "rbf", version, about = "Recursive upper bounds for two-colour Ramsey numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive upper bounds for 3 <= m <= max-m, m <= n <= max-n.
    Compute {
        #[arg(long, default_value_t = 10)]
        max_m: u32,
        #[arg(long, default_value_t = 15)]
        max_n: u32,
        /// Seed file (CSV or a JSON report); the bundled survey seeds by default.
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Rules to apply, e.g. `abc` or `a,b`.
        #[arg(long, default_value = "abc")]
        methods: String,
        /// csv, json, markdown or textable.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Keep scanning past orders where a test holds.
        #[arg(long)]
        deep_scan: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the derivation tree of one cell.
    Explain {
        m: u32,
        n: u32,
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value = "abc")]
        methods: String,
    },
    /// Edge-number bounds for (m,n;p)-graphs from the current table.
    Edges {
        m: u32,
        n: u32,
        p: u64,
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Improve the table with all rules before reading parameters.
        #[arg(long)]
        derive: bool,
    },
    /// Exhaustive small-graph checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Run every self-check and report one line per check.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact minimum and maximum edge numbers of (m,n;p)-graphs.
    Edges {
        m: usize,
        n: usize,
        p: usize,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
        /// Also print extremal graphs as adjacency matrices.
        #[arg(long)]
        witness: bool,
    },
}

fn load(seeds: Option<&Path>) -> Result<(BoundsTable, Vec<Warning>), CliError> {
    match seeds {
        Some(path) => seeds::load_table(path),
        None => rbf::bundled_table(),
    }
}

fn parse_methods(s: &str) -> Result<MethodSet, CliError> {
    Ok(s.parse::<MethodSet>()?)
}

fn warn(warnings: &[Warning]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    rbf::configure_threads()?;
    match cli.command {
        Command::Compute { max_m, max_n, seeds, methods, format, deep_scan, output } => {
            let format: Format = format.parse()?;
            let cfg = RunConfig { max_m, max_n, methods: parse_methods(&methods)?, deep_scan };
            cfg.validate()?;
            let (table, seed_warnings) = load(seeds.as_deref())?;
            let result = rbf::compute(&table, seed_warnings, &cfg)?;
            warn(&result.warnings);
            let report = Report { table: &result.table, max_m, max_n, methods: cfg.methods, warnings: &result.warnings };
            let text = report.render(format)?;
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?,
                None => print!("{text}"),
            }
        }
        Command::Explain { m, n, seeds, methods } => {
            let (lo, hi) = (m.min(n), m.max(n));
            if lo == 0 {
                return Err(CliError::Usage("arguments must be at least 1".into()));
            }
            let (table, seed_warnings) = load(seeds.as_deref())?;
            let table = if lo >= 3 {
                let cfg = RunConfig { max_m: lo, max_n: hi, methods: parse_methods(&methods)?, deep_scan: false };
                let result = rbf::compute(&table, seed_warnings, &cfg)?;
                warn(&result.warnings);
                result.table
            } else {
                table
            };
            print!("{}", explain::explain(&table, m, n));
        }
        Command::Edges { m, n, p, seeds, derive } => {
            if m == 0 || n == 0 {
                return Err(CliError::Usage("arguments must be at least 1".into()));
            }
            let (mut table, seed_warnings) = load(seeds.as_deref())?;
            if derive && m.min(n) >= 3 {
                let (lo, hi) = (m.min(n), m.max(n));
                let cfg = RunConfig { max_m: lo, max_n: hi, methods: MethodSet::ALL, deep_scan: false };
                let result = rbf::compute(&table, seed_warnings, &cfg)?;
                warn(&result.warnings);
                table = result.table;
            } else {
                warn(&seed_warnings);
            }
            let bounds = if m.min(n) <= 2 {
                println!("({m},{n};{p}): closed form");
                edge_bounds_degenerate(m, n, p)
            } else {
                let params = get_params(&table, m, n)?;
                println!("({m},{n};{p}): params {params}");
                edge_bounds(m, n, p, &params)?
            };
            match bounds {
                EdgeBounds::Compatible { lower, upper } => println!("e_lower = {lower}\nE_upper = {upper}"),
                EdgeBounds::Nonexistence => println!("NONEXISTENT"),
            }
        }
        Command::Oracle { command: OracleCommand::Verify { max_order, seed } } => {
            let results = verify::run_all(max_order, seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            for r in &results {
                println!("{r}");
            }
            if failed > 0 {
                return Err(CliError::VerificationFailed(failed));
            }
        }
        Command::Oracle { command: OracleCommand::Edges { m, n, p, ceiling, witness } } => {
            if !witness {
                match verify::exact_edges(m, n, p, ceiling)? {
                    Some((e, big_e)) => println!("({m},{n};{p}): e = {e}, E = {big_e}"),
                    None => println!("({m},{n};{p}): no such graph"),
                }
                return Ok(());
            }
            let search = EdgeSearch::new(m, n, p, ceiling)?;
            let mut best: Option<(Graph, Graph)> = None;
            search.visit(|g| match &mut best {
                None => best = Some((g.clone(), g.clone())),
                Some((lo, hi)) => {
                    if g.edge_count() < lo.edge_count() {
                        *lo = g.clone();
                    }
                    if g.edge_count() > hi.edge_count() {
                        *hi = g.clone();
                    }
                }
            });
            match best {
                Some((lo, hi)) => {
                    println!("({m},{n};{p}): e = {}, E = {}", lo.edge_count(), hi.edge_count());
                    println!("minimum:\n{}", lo.to_matrix_string());
                    println!("maximum:\n{}", hi.to_matrix_string());
                }
                None => println!("({m},{n};{p}): no such graph"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors; exit code 2 is reserved
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
