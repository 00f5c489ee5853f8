use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use qwalk::graph::{build_barbell, four_vertex_example, BarbellSpec, SignedWeightedGraph};
use qwalk::linalg::QuantumState;
use qwalk::spin::{compare_dynamics, verify_system, walk_basis, SpinSystem, MAX_SPINS};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::options::{parse_list, GammaSpec, Num};
use crate::output::emit;
use crate::{CliError, ReportFormat};

/// Projected Hamiltonians must agree to this (modulo the identity).
pub const HAMILTONIAN_THRESHOLD: f64 = 1e-12;

/// Walk and spin-network vertex probabilities must agree to this.
pub const DYNAMICS_THRESHOLD: f64 = 1e-9;

#[derive(Args, Debug)]
pub struct VerifySpinArgs {
    /// `fig2`, `barbell:<n>,<w>` or a graph file
    #[arg(long, allow_hyphen_values = true)]
    pub graph: String,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,

    /// A number or `critical` (2/N)
    #[arg(long, default_value = "critical", allow_hyphen_values = true)]
    pub gamma: GammaSpec,

    /// Vertex carrying the oracle field h = -1/2
    #[arg(long)]
    pub marked: Option<usize>,

    /// Edge weights for `fig2` (four values); random signed weights otherwise
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,

    /// Seed for the random `fig2` weights
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Adds this to Jx and Jy of the first coupling (negative control)
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub perturb: Option<f64>,

    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct SpinReport {
    pub graph: String,
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub marked: Option<usize>,
    pub hamiltonian_deviation: f64,
    pub identity_offset: f64,
    pub dynamics_deviation: f64,
    pub passed: bool,
}

fn random_fig2_weights(seed: u64) -> [f64; 4] {
    let mut rng = StdRng::seed_from_u64(seed);
    std::array::from_fn(|_| {
        let magnitude = rng.gen_range(0.1..2.0);
        if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        }
    })
}

fn load_graph(args: &VerifySpinArgs) -> Result<SignedWeightedGraph, CliError> {
    if args.graph == "fig2" {
        let weights = match &args.weights {
            Some(list) => {
                let w: Vec<Num<f64>> = parse_list(list).map_err(CliError::Config)?;
                <[Num<f64>; 4]>::try_from(w)
                    .map_err(|w| CliError::Config(format!("fig2 needs 4 weights, got {}", w.len())))?
                    .map(|x| x.0)
            }
            None => random_fig2_weights(args.seed),
        };
        return Ok(four_vertex_example(weights)?);
    }
    if let Some(rest) = args.graph.strip_prefix("barbell:") {
        let (n, w) = rest
            .split_once(',')
            .ok_or_else(|| CliError::Config(format!("expected barbell:<n>,<w>, got `{}`", args.graph)))?;
        let n: usize = n.trim().parse().map_err(|_| CliError::Config(format!("bad n in `{}`", args.graph)))?;
        let w: f64 = w.trim().parse().map_err(|_| CliError::Config(format!("bad w in `{}`", args.graph)))?;
        return Ok(build_barbell(&BarbellSpec::new(n, w)?)?);
    }
    let text = std::fs::read_to_string(&args.graph)
        .map_err(|e| CliError::Config(format!("cannot read graph file {}: {e}", args.graph)))?;
    Ok(SignedWeightedGraph::from_text(&text)?)
}

pub fn check(args: &VerifySpinArgs) -> Result<SpinReport, CliError> {
    let g = load_graph(args)?;
    let n = g.vertex_count();
    if n > MAX_SPINS {
        return Err(qwalk::Error::TooManySpins { n, cap: MAX_SPINS }.into());
    }
    if let Some(m) = args.marked {
        if m >= n {
            return Err(CliError::Config(format!("marked vertex {m} is not in a graph of {n} vertices")));
        }
    }
    let gamma = args.gamma.resolve(n);
    let mut sys = SpinSystem::walk(&g, args.alpha, gamma, args.marked);
    if let Some(delta) = args.perturb {
        let c = sys
            .couplings
            .first_mut()
            .ok_or_else(|| CliError::Config("graph has no edges to perturb".into()))?;
        c.jx += delta;
        c.jy += delta;
    }
    let report = verify_system(&sys, &g, args.alpha, gamma, args.marked)?;
    let times: Vec<f64> = (0..20).map(|k| 0.5 * k as f64).collect();
    let psi = QuantumState::uniform(walk_basis(n));
    let dynamics = compare_dynamics(&sys, &g, args.alpha, gamma, args.marked, &psi, &times)?;
    Ok(SpinReport {
        graph: args.graph.clone(),
        n,
        alpha: args.alpha,
        gamma,
        marked: args.marked,
        hamiltonian_deviation: report.max_deviation,
        identity_offset: report.identity_offset,
        dynamics_deviation: dynamics,
        passed: report.max_deviation <= HAMILTONIAN_THRESHOLD && dynamics <= DYNAMICS_THRESHOLD,
    })
}

fn render_text(r: &SpinReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph                  {} ({} vertices)", r.graph, r.n);
    let _ = writeln!(s, "alpha, gamma           {}, {}", r.alpha, r.gamma);
    let marked = r.marked.map_or("none".to_string(), |m| m.to_string());
    let _ = writeln!(s, "marked                 {marked}");
    let _ = writeln!(s, "hamiltonian deviation  {:.3e} (limit {HAMILTONIAN_THRESHOLD:.0e})", r.hamiltonian_deviation);
    let _ = writeln!(s, "identity offset        {}", r.identity_offset);
    let _ = writeln!(s, "dynamics deviation     {:.3e} (limit {DYNAMICS_THRESHOLD:.0e})", r.dynamics_deviation);
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}

/// `Ok(false)` when the check ran but failed.
pub fn execute(args: VerifySpinArgs) -> Result<bool, CliError> {
    let report = check(&args)?;
    let bytes = match args.format {
        ReportFormat::Text => render_text(&report).into_bytes(),
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(&report)?;
            v.push(b'\n');
            v
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(report.passed)
}
