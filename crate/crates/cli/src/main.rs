//! Command-line front end: exact virtual Euler characteristics of Out(F_n)
//! and the even commutative graph complex, plus the enumeration oracle's
//! censuses and the verification suites.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use render::RankTable;
use virtchi_core::oracle::{self, OracleCaps};
use virtchi_core::verify::{self, Suite, VerifyOptions};
use virtchi_core::{genfunc, trees, CheckReport, SeriesName};

/// Largest series order accepted without --force.
const MAX_ORDER: usize = 32;
/// Largest renormalization-identity order accepted without --force.
const MAX_RENORM_ORDER: usize = 10;
/// Largest census edge count accepted without --force.
const MAX_CENSUS_EDGES: usize = 5;

#[derive(Parser)]
#[command(
    name = "virtchi",
    version,
    about = "Exact virtual Euler characteristics of Out(F_n) and Kontsevich's even commutative graph complex",
    after_help = "All values are exact rationals. Exit codes: 0 success, 1 verification failure, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for the enumeration oracle (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Lift the desk-scale safety caps.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a coefficient series: F, E, X or Y.
    Series {
        /// Series name (F, E, X or Y).
        name: String,
        /// Highest hbar order to compute.
        #[arg(long)]
        order: usize,
        /// Add a rounded decimal column (clearly marked approximate).
        #[arg(long)]
        decimal: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// chi of the even commutative graph complex, per rank, by closed form.
    Gc2 {
        /// Highest rank to print (rank n uses the hbar^(n-1) coefficient).
        #[arg(long)]
        max_rank: usize,
        /// Cross-check the closed form against the series route.
        #[arg(long)]
        verify: bool,
        /// Add a rounded decimal column (clearly marked approximate).
        #[arg(long)]
        decimal: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// chi(Out(F_rank)) per rank, from the Y series.
    Outfn {
        /// Highest rank to print.
        #[arg(long)]
        max_rank: usize,
        /// Add a rounded decimal column (clearly marked approximate).
        #[arg(long)]
        decimal: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a verification suite: all, gc2, trees, oracle or renorm.
    Verify {
        /// Suite name.
        suite: String,
        /// Order for the selected suite (gc2: closed-form comparison;
        /// trees: negativity scan; renorm: identity order; all: gc2 order).
        #[arg(long)]
        order: Option<usize>,
        /// Edge bound for the census comparisons.
        #[arg(long)]
        max_edges: Option<usize>,
        /// Leaf bound for the tree censuses.
        #[arg(long)]
        max_leaves: Option<usize>,
        /// Rank-defect bound for the pair oracle.
        #[arg(long)]
        max_defect: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Labeled-graph census at a fixed edge count.
    Census {
        /// Edge count m (the census enumerates all 2m-half-edge graphs).
        #[arg(long)]
        edges: usize,
        /// Group graphs into isomorphism classes with |Aut| per class.
        #[arg(long)]
        iso: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Anything that should stop the run: (exit code, message).
struct Failure(u8, String);

impl From<virtchi_core::Error> for Failure {
    fn from(e: virtchi_core::Error) -> Self {
        Failure(2, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Series {
            name,
            order,
            decimal,
            common,
        } => series_cmd(&name, order, decimal, &common),
        Command::Gc2 {
            max_rank,
            verify,
            decimal,
            common,
        } => gc2_cmd(max_rank, verify, decimal, &common),
        Command::Outfn {
            max_rank,
            decimal,
            common,
        } => outfn_cmd(max_rank, decimal, &common),
        Command::Verify {
            suite,
            order,
            max_edges,
            max_leaves,
            max_defect,
            common,
        } => verify_cmd(&suite, order, max_edges, max_leaves, max_defect, &common),
        Command::Census { edges, iso, common } => census_cmd(edges, iso, &common),
    }
}

fn setup_threads(common: &CommonOpts) -> Result<(), Failure> {
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn check_order(order: usize, cap: usize, force: bool, what: &str) -> Result<(), Failure> {
    if !force && order > cap {
        return Err(usage(format!(
            "{what} = {order} exceeds the safety cap {cap}; pass --force to override"
        )));
    }
    Ok(())
}

fn emit(common: &CommonOpts, text: String) -> Result<(), Failure> {
    match &common.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn series_cmd(
    name: &str,
    order: usize,
    decimal: bool,
    common: &CommonOpts,
) -> Result<ExitCode, Failure> {
    let name: SeriesName = name.parse().map_err(|e| usage(format!("{e}")))?;
    check_order(order, MAX_ORDER, common.force, "--order")?;
    setup_threads(common)?;
    let report = match name {
        SeriesName::F => genfunc::compute_f(order)?,
        SeriesName::E => genfunc::compute_e(order)?,
        SeriesName::X => genfunc::compute_x(order)?,
        SeriesName::Y => trees::compute_y(order)?,
    };
    let text = match common.format {
        Format::Table => render::series_table(&report, decimal),
        Format::Json => format!("{}\n", render::series_json(&report)),
        Format::Csv => render::series_csv(&report, decimal),
    };
    emit(common, text)?;
    Ok(ExitCode::SUCCESS)
}

fn gc2_cmd(
    max_rank: usize,
    verify: bool,
    decimal: bool,
    common: &CommonOpts,
) -> Result<ExitCode, Failure> {
    if max_rank < 2 {
        return Err(usage("--max-rank must be at least 2"));
    }
    let order = max_rank - 1;
    check_order(order, MAX_ORDER, common.force, "--max-rank - 1")?;
    setup_threads(common)?;
    // Rank n of the complex sits at hbar^(n-1).
    let rows: Vec<_> = (2..=max_rank)
        .map(|rank| (rank, genfunc::chi_gc2(rank - 1)))
        .collect();
    let verified = if verify {
        let x = genfunc::x_series(order)?;
        Some(
            rows.iter()
                .all(|(rank, chi)| x.coeff(rank - 1).map(|c| c == chi).unwrap_or(false)),
        )
    } else {
        None
    };
    let table = RankTable {
        name: "gc2",
        rows,
        verified,
    };
    let text = match common.format {
        Format::Table => render::rank_table(&table, decimal),
        Format::Json => format!("{}\n", render::rank_json(&table)),
        Format::Csv => render::rank_csv(&table, decimal),
    };
    emit(common, text)?;
    if verified == Some(false) {
        eprintln!("error: closed form disagrees with the series route");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn outfn_cmd(max_rank: usize, decimal: bool, common: &CommonOpts) -> Result<ExitCode, Failure> {
    if max_rank < 2 {
        return Err(usage("--max-rank must be at least 2"));
    }
    let order = max_rank - 1;
    check_order(order, MAX_ORDER, common.force, "--max-rank - 1")?;
    setup_threads(common)?;
    let y = trees::y_series(order)?;
    let rows: Vec<_> = (2..=max_rank)
        .map(|rank| y.coeff(rank - 1).cloned().map(|c| (rank, c)))
        .collect::<Result<_, _>>()?;
    let table = RankTable {
        name: "outfn",
        rows,
        verified: None,
    };
    let text = match common.format {
        Format::Table => render::rank_table(&table, decimal),
        Format::Json => format!("{}\n", render::rank_json(&table)),
        Format::Csv => render::rank_csv(&table, decimal),
    };
    emit(common, text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(
    suite: &str,
    order: Option<usize>,
    max_edges: Option<usize>,
    max_leaves: Option<usize>,
    max_defect: Option<usize>,
    common: &CommonOpts,
) -> Result<ExitCode, Failure> {
    let suite: Suite = suite.parse().map_err(|e| usage(format!("{e}")))?;
    if common.format == Format::Csv {
        return Err(usage("csv is not a supported format for verify reports"));
    }
    setup_threads(common)?;
    let mut opts = VerifyOptions::default();
    if common.force {
        opts.caps = OracleCaps::unbounded();
    }
    if let Some(order) = order {
        if order == 0 {
            return Err(usage("--order must be at least 1 for verification suites"));
        }
        match suite {
            Suite::Gc2 | Suite::All => {
                check_order(order, MAX_ORDER, common.force, "--order")?;
                opts.gc2_order = order;
            }
            Suite::Trees => {
                check_order(order, MAX_ORDER, common.force, "--order")?;
                opts.negativity_order = order;
            }
            Suite::Renorm => {
                check_order(order, MAX_RENORM_ORDER, common.force, "--order")?;
                opts.renorm_order = order;
            }
            Suite::Oracle => {
                return Err(usage(
                    "--order does not apply to the oracle suite; use --max-edges, --max-leaves or --max-defect",
                ));
            }
        }
    }
    if let Some(edges) = max_edges {
        check_order(edges, MAX_CENSUS_EDGES, common.force, "--max-edges")?;
        opts.census_max_edges = edges;
        // The iso census stays at 4 edges either way: the canonical-form
        // search is factorial in 2m and unusable from 6 edges on. Library
        // callers can still raise OracleCaps::max_iso_edges deliberately.
        opts.iso_max_edges = edges.min(4);
    }
    if let Some(leaves) = max_leaves {
        check_order(
            leaves,
            opts.caps.max_tree_leaves,
            common.force,
            "--max-leaves",
        )?;
        opts.tree_max_leaves = leaves;
        // The product-route cross-check enumerates all fat partitions of
        // 2v - 2 + legs half-edges; beyond 7 legs that blows past desk scale
        // even though the recursive census stays cheap.
        opts.tree_product_legs = leaves.min(if common.force { 7 } else { 6 });
    }
    if let Some(defect) = max_defect {
        check_order(
            defect,
            opts.caps.max_pair_defect,
            common.force,
            "--max-defect",
        )?;
        opts.pair_max_defect = defect;
    }

    let suite_name = format!("{suite:?}").to_lowercase();
    let reports = verify::run_suite(suite, &opts)?;
    let passed = reports.iter().all(CheckReport::passed);
    let text = match common.format {
        Format::Json => format!("{}\n", render::verify_json(&suite_name, &reports)),
        _ => render::verify_text(&reports),
    };
    emit(common, text)?;
    if !passed {
        eprintln!("{}", render::failure_json(&suite_name, &reports));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn census_cmd(edges: usize, iso: bool, common: &CommonOpts) -> Result<ExitCode, Failure> {
    let cap = if iso { 4 } else { MAX_CENSUS_EDGES };
    check_order(edges, cap, common.force, "--edges")?;
    setup_threads(common)?;
    let caps = if common.force {
        OracleCaps::unbounded()
    } else {
        OracleCaps::default()
    };
    let rows = if iso {
        oracle::iso_census(edges, &caps)?
    } else {
        oracle::count_labeled_graphs(edges, &caps)?
    };
    let text = match common.format {
        Format::Table => render::census_table(&rows),
        Format::Json => format!("{}\n", oracle::census_to_json(edges, &rows)),
        Format::Csv => oracle::census_to_csv(&rows),
    };
    emit(common, text)?;
    Ok(ExitCode::SUCCESS)
}
