//! `unifoliate` command-line front end.
//!
//! Exit codes: 0 success, 1 a `check` found an inconsistency, 2 input error,
//! 3 search budget exhausted, 4 infeasible parameters.

mod commands;
mod rows;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "unifoliate", version, about = "Unifoliate hypergraphs, the layered sphere construction and the bundle machinery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a hypergraph as NotUnifoliate, UnifoliateOnly or StrongUnifoliate.
    Classify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Re-verify certificates, constructions and color-or-embed results.
    #[command(subcommand)]
    Check(Check),
    /// Run the geometric lemma verifiers and emit CSV.
    #[command(subcommand)]
    Lemma(Lemma),
    /// Fiber bundle queries.
    #[command(subcommand)]
    Bundle(Bundle),
    /// Embed G in H or colour H through the G[V1]-bundle.
    ColorOrEmbed {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Strong witness for G; searched for when omitted.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = unifoliate::bundle::DEFAULT_PART_SIZE_CAP)]
        part_size_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV report (layer stats, degrees, precondition flags) for a construction file.
    Report {
        construction: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-vertex degree CSV.
        #[arg(long)]
        degrees: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The layered hypergraph G(F, k, eps, n).
    G(ConstructG),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

#[derive(Args)]
struct ConstructG {
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Forbidden hypergraph F; defaults to the complete r-graph on r+1 vertices.
    #[arg(long)]
    f_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Relaxed)]
    mode: ModeArg,
    /// Relaxed mode only.
    #[arg(long, default_value_t = 0.3)]
    beta: f64,
    /// Relaxed mode only.
    #[arg(long, default_value_t = 0.8)]
    theta: f64,
    #[arg(long, default_value_t = 2)]
    blowup: usize,
    #[arg(long, default_value_t = 1.0)]
    sparsen_p: f64,
    /// Number of sphere points behind H'.
    #[arg(long, default_value_t = 6)]
    points: usize,
    /// Sphere dimension.
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 20_000)]
    beta_samples: usize,
    /// Construction JSON; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    degrees: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Check {
    /// A classification certificate produced by `classify`.
    Certificate {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Structural checks on a construction file.
    Construction { file: PathBuf },
    /// A `color-or-embed` result against H and G.
    Result {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        result: PathBuf,
    },
}

#[derive(Subcommand)]
enum Lemma {
    /// Random triples satisfying the near-or-far hypothesis.
    NearOrFar {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Scales are drawn uniformly from (0, a-max).
        #[arg(long, default_value_t = 0.1)]
        a_max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo cap measure.
    Cap {
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Chordal radius; `sqrt2` is accepted. Repeat for several radii.
        #[arg(long, default_value = "sqrt2", value_parser = commands::parse_radius)]
        radius: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The composition chain for theta up to f steps.
    ThetaChain {
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = 1e-6)]
        theta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Bundle {
    /// Search for a matching of size t whose transversals all have rich sections.
    Dim {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        t_file: PathBuf,
        #[arg(long)]
        part_size: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
