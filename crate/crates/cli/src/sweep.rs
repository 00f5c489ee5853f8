use std::path::PathBuf;

use clap::Args;
use qwalk::analysis::{classify_weight, Regime};
use qwalk::search::Engine;
use rayon::prelude::*;
use serde::Serialize;

use crate::options::{parse_list, GammaSpec, Num, WeightSpec};
use crate::output::{emit, num};
use crate::simulate::{self, RunConfig};
use crate::{CliError, SeriesFormat};

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Vertex counts (comma-separated, `lo..hi` ranges allowed)
    #[arg(long)]
    pub n: String,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    /// Bridge weights; `wplus` and `wminus` resolve per point
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,

    #[arg(long, default_value = "critical", allow_hyphen_values = true)]
    pub gamma: GammaSpec,

    /// End of each time grid [default: 8 sqrt N]
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Grid spacing [default: sqrt N / 2000]
    #[arg(long)]
    pub dt: Option<f64>,

    #[arg(long, default_value = "reduced")]
    pub engine: Engine,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: SeriesFormat,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub alpha: f64,
    pub weight: f64,
    pub regime: Regime,
    pub peak_time: f64,
    pub peak_p_a: f64,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    metadata: SweepMetadata<'a>,
    n: Vec<usize>,
    alpha: Vec<f64>,
    weight: Vec<f64>,
    regime: Vec<Regime>,
    peak_time: Vec<f64>,
    peak_p_a: Vec<f64>,
}

#[derive(Serialize)]
struct SweepMetadata<'a> {
    n: &'a str,
    alpha: &'a str,
    weight: &'a str,
    gamma: String,
    t_max: Option<f64>,
    dt: Option<f64>,
    engine: Engine,
}

/// Grid points in row order: `n` slowest, then `alpha`, then `weight`.
pub fn points(args: &SweepArgs) -> Result<Vec<RunConfig>, CliError> {
    let ns: Vec<Num<usize>> = parse_list(&args.n).map_err(CliError::Config)?;
    let alphas: Vec<Num<f64>> = parse_list(&args.alpha).map_err(CliError::Config)?;
    let weights: Vec<WeightSpec> = parse_list(&args.weight).map_err(CliError::Config)?;
    let mut out = Vec::with_capacity(ns.len() * alphas.len() * weights.len());
    for n in &ns {
        for alpha in &alphas {
            for &w in &weights {
                out.push(RunConfig::new(n.0, alpha.0, w, args.gamma, args.t_max, args.dt, args.engine)?);
            }
        }
    }
    Ok(out)
}

/// Points run in parallel; rows come back in grid order, and the first
/// failing point (in grid order) decides the error.
pub fn run(points: &[RunConfig]) -> Result<Vec<SweepRow>, CliError> {
    let results: Vec<Result<SweepRow, CliError>> = points
        .par_iter()
        .map(|cfg| {
            let (_, summary) = simulate::run(cfg)?;
            Ok(SweepRow {
                n: cfg.n,
                alpha: cfg.alpha,
                weight: cfg.weight,
                regime: classify_weight(cfg.n, cfg.alpha, cfg.weight)?,
                peak_time: summary.peak_time,
                peak_p_a: summary.peak_p_a,
            })
        })
        .collect();
    results.into_iter().collect()
}

fn csv_bytes(rows: &[SweepRow]) -> std::io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "alpha", "weight", "regime", "peak_time", "peak_p_a"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            num(r.alpha),
            num(r.weight),
            r.regime.to_string(),
            num(r.peak_time),
            num(r.peak_p_a),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn execute(args: SweepArgs) -> Result<(), CliError> {
    let grid = points(&args)?;
    let rows = run(&grid)?;
    let bytes = match args.format {
        SeriesFormat::Csv => csv_bytes(&rows)?,
        SeriesFormat::Json => {
            let doc = SweepJson {
                metadata: SweepMetadata {
                    n: &args.n,
                    alpha: &args.alpha,
                    weight: &args.weight,
                    gamma: match args.gamma {
                        GammaSpec::Critical => "critical".into(),
                        GammaSpec::Value(g) => g.to_string(),
                    },
                    t_max: args.t_max,
                    dt: args.dt,
                    engine: args.engine,
                },
                n: rows.iter().map(|r| r.n).collect(),
                alpha: rows.iter().map(|r| r.alpha).collect(),
                weight: rows.iter().map(|r| r.weight).collect(),
                regime: rows.iter().map(|r| r.regime).collect(),
                peak_time: rows.iter().map(|r| r.peak_time).collect(),
                peak_p_a: rows.iter().map(|r| r.peak_p_a).collect(),
            };
            let mut v = serde_json::to_vec_pretty(&doc)?;
            v.push(b'\n');
            v
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    eprintln!("{} points", rows.len());
    Ok(())
}
