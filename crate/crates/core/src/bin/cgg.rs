use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cgg_core::family::FamilyLabel;
use cgg_core::render::{parse_edge_list, parse_highlights};
use cgg_core::transversal::{derive_sequence_with_stats, enumerate_min_transversals};
use cgg_core::verify::{run_check, Check};
use cgg_core::{
    enumerate_blockers, enumerate_odd_matchings, enumerate_semi_simple, enumerate_spms, CggError,
    CountReport, Family, GraphContext, Limits, RenderSpec, Result, TransversalProblem,
};

#[derive(Parser)]
#[command(
    name = "cgg",
    version,
    about = "Matchings, blockers and co-blockers of the convex geometric graph CGG(2m)"
)]
struct Cli {
    /// Worker threads for the enumerators (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family of edge sets.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long, value_enum, default_value = "json")]
        format: FamilyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named cross-check and print a JSON report.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        check: String,
        /// Node ceiling for the transversal oracle (overrides CGG_MAX_NODES).
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Allow the oracle one step further (m = 6, fixed point at m = 5).
        #[arg(long)]
        extended: bool,
    },
    /// Table of counts and bounds for a range of m.
    Count {
        #[arg(long, value_name = "A..B")]
        m_range: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: CountFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw edges on the 2m-gon as SVG.
    Render {
        #[arg(long)]
        m: usize,
        /// Comma-separated `u-v` tokens.
        #[arg(long, default_value = "")]
        edges: String,
        /// e.g. `spine=0-1,1-2,legs=1-4`.
        #[arg(long)]
        highlight: Option<String>,
        /// Derive highlights from the structure (blocker or matching).
        #[arg(long, conflicts_with = "highlight")]
        auto: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimum transversals of a family read from JSON.
    Transversal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute A_k by iterating the oracle from the simple perfect matchings.
    Derive {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Spm,
    Blockers,
    Coblockers,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFormat {
    Csv,
    Md,
    Json,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn limits(max_nodes: Option<u64>, extended: bool) -> Limits {
    let mut limits = Limits::from_env();
    if let Some(n) = max_nodes {
        limits.max_nodes = n;
    }
    if extended {
        limits = limits.extended_oracle();
    }
    limits
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || CggError::Parse(format!("m-range {text:?} is not of the form A..B"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Exit code 1 means a verification assertion failed.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Enumerate {
            m,
            family,
            format,
            out,
        } => {
            let ctx = GraphContext::new(m)?;
            let lim = limits(None, false);
            let fam: Family = match family {
                FamilyKind::Spm => enumerate_spms(&ctx, &lim)?,
                FamilyKind::Blockers => enumerate_blockers(&ctx, &lim)?,
                FamilyKind::Coblockers => enumerate_semi_simple(&ctx, &lim)?,
                FamilyKind::Odd => enumerate_odd_matchings(&ctx, &lim)?,
            };
            let text = match format {
                FamilyFormat::Json => fam.to_json(),
                FamilyFormat::Csv => fam.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Verify {
            m,
            check,
            max_nodes,
            extended,
        } => {
            let check: Check = check.parse()?;
            let report = run_check(m, check, &limits(max_nodes, extended))?;
            print!("{}", report.to_json());
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Count {
            m_range,
            format,
            out,
        } => {
            let (a, b) = parse_range(&m_range)?;
            let lim = limits(None, false);
            let rows = (a..=b)
                .map(|m| CountReport::for_m(m, &lim))
                .collect::<Result<Vec<_>>>()?;
            let text = match format {
                CountFormat::Csv => {
                    let mut s = format!("{}\n", CountReport::CSV_HEADER);
                    for r in &rows {
                        s.push_str(&r.csv_row());
                        s.push('\n');
                    }
                    s
                }
                CountFormat::Md => CountReport::markdown_table(&rows),
                CountFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            emit(out.as_ref(), &text)?;
            Ok(if rows.iter().all(|r| r.bounds_hold() != Some(false)) {
                0
            } else {
                1
            })
        }
        Command::Render {
            m,
            edges,
            highlight,
            auto,
            out,
        } => {
            let ctx = GraphContext::new(m)?;
            let edges = parse_edge_list(&ctx, &edges)?;
            let spec = if auto {
                RenderSpec::auto(ctx, edges)?
            } else {
                let groups = match highlight {
                    Some(h) => parse_highlights(&ctx, &h)?,
                    None => Vec::new(),
                };
                RenderSpec::new(ctx, edges, groups)?
            };
            fs::write(out, spec.to_svg())?;
            Ok(0)
        }
        Command::Transversal {
            input,
            max_nodes,
            out,
        } => {
            let family = Family::from_json(&fs::read_to_string(input)?)?;
            let label = match family.label() {
                FamilyLabel::A(k) => FamilyLabel::A(k + 1),
                FamilyLabel::Custom(_) => FamilyLabel::Custom("transversals".into()),
            };
            let problem = TransversalProblem::new(&family)?;
            let solution = enumerate_min_transversals(&problem, &limits(max_nodes, false), label)?;
            emit(out.as_ref(), &solution.to_json())?;
            Ok(0)
        }
        Command::Derive {
            m,
            k,
            max_nodes,
            extended,
            out,
        } => {
            let ctx = GraphContext::new(m)?;
            let mut terms = derive_sequence_with_stats(&ctx, k, &limits(max_nodes, extended))?;
            let (family, stats) = terms.pop().expect("A0 is always present");
            let mut doc = family.document();
            doc.stats = stats;
            emit(out.as_ref(), &doc.to_json())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
