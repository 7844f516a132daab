//! Batch front end for cover ideal checks: graph parsing, decomposition
//! search, power expansion, weakly polymatroidal verification with witness
//! methods, and seeded fuzz campaigns with machine-readable reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed (counterexample, no
//! decomposition, strict-mode findings), 2 unusable input or exceeded
//! budget.

mod commands;
mod report;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// k-ranges are capped here; the underlying product budget binds earlier
/// for most inputs anyway.
const MAX_K: usize = 6;

#[derive(Parser)]
#[command(
    name = "coverpoly",
    version,
    about = "vertex cover ideals, powers, and weakly polymatroidal checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Emit a machine-readable JSON report instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a graph is a cactus (connected, every edge on at most
    /// one cycle). Exits 1 when it is not.
    CheckCactus {
        /// Graph in edge-list format: one `u v` per line, `#` comments,
        /// `vertex u` for isolated vertices.
        graph: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Search for a clique / 5-cycle / 4-cycle-edge decomposition of the
    /// vertex set. Prints it as JSON; exits 1 when none exists.
    Decompose {
        graph: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Enumerate minimal vertex covers and the cover ideal generators.
    Covers {
        graph: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Minimal generating set of the k-th power of the cover ideal.
    IdealPower {
        graph: String,
        /// Exponent, 1..=6.
        #[arg(long, default_value = "2")]
        k: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Full pipeline: decomposition, block variable order, cover ideal
    /// powers, weak polymatroidality with a witness method recorded per
    /// divergent pair. Exits 1 on a counterexample.
    WpCheck {
        graph: String,
        /// k or inclusive range `lo..hi`, each within 1..=6.
        #[arg(long, default_value = "1..2")]
        k: String,
        /// `auto` (derive from the decomposition) or a file listing one
        /// variable per line, greatest first.
        #[arg(long, default_value = "auto")]
        order: String,
        /// Decomposition JSON file; searched for when omitted.
        #[arg(long)]
        decomposition: Option<String>,
        /// Fail with exit 2 unless the input graph is a cactus.
        #[arg(long)]
        require_cactus: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Resolve one generator pair: divergence variable, constructive
    /// witness when the divergence is block-interior, brute-force witness.
    Witness {
        graph: String,
        #[arg(long)]
        k: usize,
        /// Monomial text form, e.g. `y1*y2*y3^2*y4*y5`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "auto")]
        order: String,
        #[arg(long)]
        decomposition: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Seeded campaign over generated decomposable cactus graphs:
    /// WP checks, witness-route agreement, identity suite, structural
    /// invariants. Failures on generated instances are findings; exit 1
    /// only with --strict.
    Fuzz {
        #[arg(long, default_value = "42")]
        seed: u64,
        /// Number of instances.
        #[arg(long, default_value = "25")]
        n: usize,
        #[arg(long, default_value = "1..2")]
        k: String,
        /// Block limits `cliques,five_cycles,four_cycles`.
        #[arg(long, default_value = "1,1,1")]
        limits: String,
        /// Exit 1 when the campaign accumulates findings.
        #[arg(long)]
        strict: bool,
        /// Appends one instance with a deliberately corrupted
        /// decomposition (test hook for the findings path).
        #[arg(long, hide = true)]
        inject_bad_decomposition: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn parse_k_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (
            lo.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad k range `{text}`"))?,
            hi.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad k range `{text}`"))?,
        ),
        None => {
            let k = text
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("bad k `{text}`"))?;
            (k, k)
        }
    };
    if lo == 0 || hi < lo || hi > MAX_K {
        return Err(format!(
            "k range must satisfy 1 <= lo <= hi <= {MAX_K}, got `{text}`"
        ));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::CheckCactus { graph, out } => commands::check_cactus(&graph, out.json),
        Command::Decompose { graph, out } => commands::decompose(&graph, out.json),
        Command::Covers { graph, out } => commands::covers(&graph, out.json),
        Command::IdealPower { graph, k, out } => {
            if k == 0 || k > MAX_K {
                Err(format!("k must be within 1..={MAX_K}"))
            } else {
                commands::ideal_power(&graph, k, out.json)
            }
        }
        Command::WpCheck {
            graph,
            k,
            order,
            decomposition,
            require_cactus,
            out,
        } => parse_k_range(&k).and_then(|ks| {
            commands::wp_check(
                &graph,
                ks,
                &order,
                decomposition.as_deref(),
                require_cactus,
                out.json,
            )
        }),
        Command::Witness {
            graph,
            k,
            f,
            g,
            order,
            decomposition,
            out,
        } => {
            if k == 0 || k > MAX_K {
                Err(format!("k must be within 1..={MAX_K}"))
            } else {
                commands::witness(
                    &graph,
                    k,
                    &f,
                    &g,
                    &order,
                    decomposition.as_deref(),
                    out.json,
                )
            }
        }
        Command::Fuzz {
            seed,
            n,
            k,
            limits,
            strict,
            inject_bad_decomposition,
            out,
        } => parse_k_range(&k).and_then(|ks| {
            commands::fuzz(
                seed,
                n,
                ks,
                &limits,
                strict,
                inject_bad_decomposition,
                out.json,
            )
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
