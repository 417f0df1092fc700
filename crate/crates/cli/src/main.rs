use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use ghw_core::decomposition::{ghw_of, validate};
use ghw_core::driver::{approx_ghw, Outcome, RejectKind};
use ghw_core::generate::{gen_2d_hypergraph, gen_shyg_instance};
use ghw_core::io::{emit_decomposition, emit_hypergraph, parse_decomposition, parse_hypergraph};
use ghw_core::oracle::{exact_ghw, gyo_acyclic, GhwBound, OracleBudget};
use ghw_core::Hypergraph;

#[derive(Parser)]
#[command(
    name = "ghw",
    version,
    about = "Approximate generalized hypertree width"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose with width at most 4·α(k, d), or reject (ghw > k).
    Decompose {
        #[arg(long)]
        k: usize,
        /// Intersection bound; defaults to the largest pairwise intersection.
        #[arg(long)]
        d: Option<usize>,
        /// Print run counters to stderr.
        #[arg(long)]
        emit_stats: bool,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a decomposition against a hypergraph.
    Validate { input: PathBuf, td: PathBuf },
    /// Exact ghw by brute force, for tiny inputs.
    Exact {
        #[arg(long)]
        kmax: usize,
        input: PathBuf,
    },
    /// Random hypergraph with pairwise edge intersections at most d.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Instance that triggers the subedge-hypergrid reject.
    GenShyg {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Basic facts about a hypergraph.
    Stats { input: PathBuf },
}

/// Failure in the input or arguments, reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T, InputError> {
    r.map_err(|e| InputError(e.into()))
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, InputError> {
    let text =
        input(fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
    input(parse_hypergraph(&text).with_context(|| format!("parsing {}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, InputError> {
    match cli.cmd {
        Cmd::Decompose {
            k,
            d,
            emit_stats,
            input: path,
            output,
        } => {
            let h = read_hypergraph(&path)?;
            let res = input(approx_ghw(&h, k, d))?;
            if emit_stats {
                let s = &res.stats;
                eprintln!(
                    "k {} d {} alpha {} bound {}",
                    s.k,
                    s.d,
                    s.alpha,
                    4 * s.alpha
                );
                eprintln!("compress_invocations {}", s.compress_invocations);
                eprintln!(
                    "partitions_tried {} prefix_calls {}",
                    s.compress.partitions_tried, s.compress.prefix_calls
                );
                for (i, r) in s.compress.records.iter().enumerate() {
                    eprintln!(
                        "compress {} vertices {} calls {} height {} leaves {}",
                        i + 1,
                        r.vertices,
                        r.calls,
                        r.height,
                        r.leaves
                    );
                }
                eprintln!(
                    "app_sep_calls {} small_sep_calls {} family_builds {} worst_shrink {:.3}",
                    s.separator.app_sep_calls,
                    s.separator.small_sep_calls,
                    s.separator.family_builds,
                    s.separator.worst_shrink
                );
            }
            match res.outcome {
                Outcome::Accepted(td) => {
                    input(write_out(output.as_deref(), &emit_decomposition(&h, &td)))?;
                    Ok(0)
                }
                Outcome::Rejected(kind) => {
                    match kind {
                        RejectKind::ShygTriggered(c) => eprintln!(
                            "reject: subedge hypergrid over {} big edges with {} witnesses",
                            c.big_edges.len(),
                            c.witnesses.len()
                        ),
                        RejectKind::SeparatorExhausted => {
                            eprintln!("reject: no balanced separator")
                        }
                    }
                    eprintln!("ghw > {k}");
                    Ok(1)
                }
            }
        }
        Cmd::Validate { input: path, td } => {
            let h = read_hypergraph(&path)?;
            let text = input(
                fs::read_to_string(&td).with_context(|| format!("reading {}", td.display())),
            )?;
            let mut td = input(parse_decomposition(&h, &text))?;
            let rep = validate(&h, &td);
            if rep.is_valid() {
                let claimed = td.max_cover();
                let w = ghw_of(&h, &mut td, None);
                match claimed {
                    Some(c) => println!("valid width {w} (covers given: {c})"),
                    None => println!("valid width {w}"),
                }
                Ok(0)
            } else {
                for v in &rep.violations {
                    println!("violation {v:?}");
                }
                Ok(1)
            }
        }
        Cmd::Exact { kmax, input: path } => {
            let h = read_hypergraph(&path)?;
            match input(exact_ghw(&h, kmax, &OracleBudget::default()))? {
                GhwBound::Exact(w) => println!("ghw {w}"),
                GhwBound::GreaterThan(w) => println!("ghw > {w}"),
            }
            Ok(0)
        }
        Cmd::Gen { n, m, d, seed } => {
            let h = input(gen_2d_hypergraph(n, m, d, seed))?;
            print!("{}", emit_hypergraph(&h));
            Ok(0)
        }
        Cmd::GenShyg { k, d } => {
            let h = input(gen_shyg_instance(k, d))?;
            print!("{}", emit_hypergraph(&h));
            Ok(0)
        }
        Cmd::Stats { input: path } => {
            let h = read_hypergraph(&path)?;
            let max_edge = h.edges().iter().map(|e| e.len()).max().unwrap_or(0);
            println!("vertices {}", h.num_vertices());
            println!("edges {}", h.num_edges());
            println!("max_edge_size {max_edge}");
            println!("max_intersection {}", h.max_pairwise_intersection());
            println!("components {}", h.connected_components().len());
            println!("acyclic {}", gyo_acyclic(&h));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(InputError(e))) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(3),
    }
}
