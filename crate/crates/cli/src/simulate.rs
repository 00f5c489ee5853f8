use std::f64::consts::PI;
use std::path::PathBuf;

use clap::Args;
use qwalk::search::{
    peak, run_schedule, Engine, Observable, Peak, ProbabilitySeries, Schedule, SearchProblem, TimeGrid,
};
use serde::Serialize;

use crate::options::{GammaSpec, SwitchRule, WeightSpec};
use crate::output::{emit, series_csv, series_json};
use crate::{CliError, SeriesFormat};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Number of vertices (even, at least 6)
    #[arg(long)]
    pub n: usize,

    /// Generalized Laplacian parameter
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,

    /// Bridge weight: a number, `wplus` or `wminus`
    #[arg(long, allow_hyphen_values = true)]
    pub weight: WeightSpec,

    /// Jumping rate: a number or `critical` (2/N)
    #[arg(long, default_value = "critical", allow_hyphen_values = true)]
    pub gamma: GammaSpec,

    /// End of the time grid [default: 8 sqrt N, extended for two-stage runs
    /// to one full second-stage period after the switch]
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Grid spacing [default: sqrt N / 2000]
    #[arg(long)]
    pub dt: Option<f64>,

    #[arg(long, default_value = "reduced")]
    pub engine: Engine,

    /// Bridge weight after the switch; enables the two-stage schedule
    #[arg(long, allow_hyphen_values = true)]
    pub stage2_weight: Option<WeightSpec>,

    /// abc-peak, ab-peak or at:<time>
    #[arg(long, requires = "stage2_weight", default_value = "ab-peak")]
    pub stage2_rule: SwitchRule,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: SeriesFormat,

    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything that determines a run, resolved to numbers.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub alpha: f64,
    pub weight: f64,
    pub gamma: f64,
    pub t_max: f64,
    /// `t_max` came from the user rather than the default.
    #[serde(skip)]
    pub t_max_explicit: bool,
    pub dt: f64,
    pub engine: Engine,
    pub stage2: Option<Stage2>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage2 {
    pub weight: f64,
    pub rule: String,
    #[serde(skip)]
    pub parsed_rule: SwitchRule,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub switch_time: Option<f64>,
    /// Last grid time; larger than `t_max` when a default grid was extended.
    pub t_end: f64,
    pub peak_time: f64,
    pub peak_p_a: f64,
}

#[derive(Serialize)]
struct Metadata<'a> {
    config: &'a RunConfig,
    summary: &'a RunSummary,
}

impl RunConfig {
    pub fn new(
        n: usize,
        alpha: f64,
        weight: WeightSpec,
        gamma: GammaSpec,
        t_max: Option<f64>,
        dt: Option<f64>,
        engine: Engine,
    ) -> Result<Self, CliError> {
        // validates n before anything reads it
        SearchProblem::new(n, alpha, engine)?;
        Ok(Self {
            n,
            alpha,
            weight: weight.resolve(n, alpha).map_err(CliError::Config)?,
            gamma: gamma.resolve(n),
            t_max: t_max.unwrap_or_else(|| TimeGrid::default_t_max(n)),
            t_max_explicit: t_max.is_some(),
            dt: dt.unwrap_or_else(|| TimeGrid::default_dt(n)),
            engine,
            stage2: None,
        })
    }

    pub fn with_stage2(mut self, weight: WeightSpec, rule: SwitchRule) -> Result<Self, CliError> {
        self.stage2 = Some(Stage2 {
            weight: weight.resolve(self.n, self.alpha).map_err(CliError::Config)?,
            rule: rule.to_string(),
            parsed_rule: rule,
        });
        Ok(self)
    }
}

pub fn run(cfg: &RunConfig) -> Result<(ProbabilitySeries, RunSummary), CliError> {
    let problem = SearchProblem::new(cfg.n, cfg.alpha, cfg.engine)?.with_gamma(cfg.gamma);
    if !cfg.gamma.is_finite() {
        return Err(CliError::Config(format!("gamma {} is not finite", cfg.gamma)));
    }
    let stage1_grid = TimeGrid::uniform(cfg.t_max, cfg.dt)?;
    let first = Schedule::single(cfg.weight)?;

    let (schedule, switch_time) = match &cfg.stage2 {
        None => (first, None),
        Some(stage2) => {
            let t1 = match stage2.parsed_rule {
                SwitchRule::At(t) => t,
                SwitchRule::AbPeak | SwitchRule::AbcPeak => {
                    let observable = if stage2.parsed_rule == SwitchRule::AbPeak {
                        Observable::Ab
                    } else {
                        Observable::Abc
                    };
                    let stage1 = run_schedule(&problem, &first, &stage1_grid)?;
                    peak(&stage1, observable, (0.0, cfg.t_max))?.time
                }
            };
            (Schedule::two_stage(cfg.weight, t1, stage2.weight)?, Some(t1))
        }
    };

    // The second stage peaks within one period pi sqrt(N/2) of the switch; a
    // default grid is stretched to include it.
    let t_end = match switch_time {
        Some(t1) if !cfg.t_max_explicit => cfg.t_max.max(t1 + 1.05 * PI * (cfg.n as f64 / 2.0).sqrt()),
        _ => cfg.t_max,
    };
    let grid = if t_end > cfg.t_max {
        TimeGrid::uniform(t_end, cfg.dt)?
    } else {
        stage1_grid
    };
    let series = run_schedule(&problem, &schedule, &grid)?;
    let Peak { time, value } = peak(&series, Observable::SUCCESS, (switch_time.unwrap_or(0.0), t_end))?;
    Ok((
        series,
        RunSummary {
            switch_time,
            t_end,
            peak_time: time,
            peak_p_a: value,
        },
    ))
}

pub fn execute(args: SimulateArgs) -> Result<(), CliError> {
    let mut cfg = RunConfig::new(args.n, args.alpha, args.weight, args.gamma, args.t_max, args.dt, args.engine)?;
    if let Some(w2) = args.stage2_weight {
        cfg = cfg.with_stage2(w2, args.stage2_rule)?;
    }
    let (series, summary) = run(&cfg)?;
    let bytes = match args.format {
        SeriesFormat::Csv => series_csv(&series)?,
        SeriesFormat::Json => series_json(
            &series,
            &Metadata {
                config: &cfg,
                summary: &summary,
            },
        )?,
    };
    emit(args.out.as_deref(), &bytes)?;

    let sqrt_n = (cfg.n as f64).sqrt();
    if let Some(t1) = summary.switch_time {
        eprintln!("switch at t = {t1:.4} ({:.4} sqrt N)", t1 / sqrt_n);
    }
    eprintln!(
        "peak p_a = {:.6} at t = {:.4} ({:.4} sqrt N)",
        summary.peak_p_a,
        summary.peak_time,
        summary.peak_time / sqrt_n
    );
    Ok(())
}
