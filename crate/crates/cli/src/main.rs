use clap::{Args, Parser, Subcommand};
use schubert_cli::commands::{self, CellInput, CliError};
use schubert_cli::config::{Config, Format, CACHE_ENV};
use schubert_cli::parse;
use schubert_core::schur::DEFAULT_SPAN_BOUND;
use std::path::PathBuf;
use std::process::ExitCode;

/// Schubert varieties in compact Hermitian symmetric spaces.
///
/// Exit codes: 0 success or match, 1 verified mismatch or internal failure,
/// 2 invalid input.
#[derive(Parser)]
#[command(name = "schubert", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Largest number of ordered lowering sequences per weight space before
    /// a Schur verdict is reported as indeterminate (at least 1000).
    #[arg(long, default_value_t = DEFAULT_SPAN_BOUND, global = true)]
    span_bound: usize,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cache directory for catalogs (overrides SCHUBERT_CACHE_DIR).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Ignore any configured cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Record the generation time (seconds since the epoch) in reports.
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Args)]
struct Space {
    /// Lie type, such as A4, C3, D5, E6 or E7.
    lie_type: String,
    /// Node of the cominuscule parabolic.
    node: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Cell {
    /// Reduced word, e.g. 76542 or 10,9,8.
    #[arg(long)]
    word: Option<String>,
    /// Invariants as "a;{j1,...}".
    #[arg(long = "aJ", alias = "aj")]
    a_j: Option<String>,
    /// Partition, e.g. "6 4^2 1^2" or "6,4,4,1,1".
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Every Schubert variety of the space with its invariants.
    Catalog {
        #[command(flatten)]
        space: Space,
        /// Also decide Schur equality for every proper cell.
        #[arg(long)]
        schur: bool,
    },
    /// Invariants of one Schubert variety.
    Classify {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        cell: Cell,
        /// Also decide Schur equality.
        #[arg(long)]
        schur: bool,
    },
    /// H1/H2 verdicts of the proper Schubert varieties; exit 1 if the root
    /// test disagrees with the closed-form list.
    Rigidity {
        #[command(flatten)]
        space: Space,
    },
    /// Schur equality of the H+ Schubert varieties; exit 1 if one fails.
    Schur {
        #[command(flatten)]
        space: Space,
        /// Test every proper cell, not only the H+ ones.
        #[arg(long)]
        all: bool,
    },
    /// Regenerate a reference table and compare it with the golden data.
    Tables {
        /// One of bigone, suit, E6, E7, sm, Hplus.
        id: String,
    },
    /// Partition forms in Gr(i, n+1).
    Partition {
        /// Number of rows i.
        i: usize,
        /// n + 1.
        n_plus_1: usize,
        #[command(flatten)]
        cell: Cell,
    },
}

fn cell_input(c: &Cell) -> Result<CellInput, CliError> {
    if let Some(w) = &c.word {
        return Ok(CellInput::Word(parse::word(w)?));
    }
    if let Some(t) = &c.a_j {
        let (a, j) = parse::a_j(t)?;
        return Ok(CellInput::AJ(a, j));
    }
    Ok(CellInput::Partition(c.partition.clone().unwrap_or_default()))
}

fn stamp(report: &mut schubert_cli::report::Report, on: bool) {
    if on {
        let secs = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        report.generated_at = Some(secs.to_string());
    }
}

fn run(cli: Cli) -> Result<(String, Vec<String>), CliError> {
    let g = &cli.global;
    let cfg = Config::resolve(g.format, g.span_bound, g.jobs, g.cache.clone(), g.no_cache, std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let space = |s: &Space| parse::space(&s.lie_type, s.node).map_err(CliError::from);
    match &cli.command {
        Command::Catalog { space: s, schur } => {
            let mut r = commands::catalog(&cfg, &space(s)?, *schur)?;
            stamp(&mut r, g.timestamp);
            Ok((commands::render_report(&r, cfg.format)?, vec![]))
        }
        Command::Classify { space: s, cell, schur } => {
            let o = commands::classify_cell(&cfg, &space(s)?, &cell_input(cell)?, *schur)?;
            Ok((commands::render_classify(&o, cfg.format)?, vec![]))
        }
        Command::Rigidity { space: s } => {
            let (mut r, mismatches) = commands::rigidity(&cfg, &space(s)?)?;
            stamp(&mut r, g.timestamp);
            Ok((commands::render_report(&r, cfg.format)?, mismatches))
        }
        Command::Schur { space: s, all } => {
            let (mut r, failures) = commands::schur(&cfg, &space(s)?, *all)?;
            stamp(&mut r, g.timestamp);
            Ok((commands::render_report(&r, cfg.format)?, failures))
        }
        Command::Tables { id } => {
            let t = commands::tables(id)?;
            Ok((commands::render_table(&t, cfg.format)?, t.diffs.clone()))
        }
        Command::Partition { i, n_plus_1, cell } => {
            let f = commands::partition_cmd(*i, *n_plus_1, &cell_input(cell)?)?;
            Ok((commands::render_partition(&f, cfg.format)?, vec![]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, problems)) => {
            print!("{text}");
            for p in &problems {
                eprintln!("mismatch: {p}");
            }
            ExitCode::from(if problems.is_empty() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
