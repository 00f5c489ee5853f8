use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use qwalk::analysis::{
    critical_params, single_stage, wminus_two_stage, wplus_two_stage, ExactCriticalWeights, PlanVariant, Regime,
    StagePlan,
};
use serde::Serialize;

use crate::options::{parse_list, Num};
use crate::output::emit;
use crate::{CliError, ReportFormat};

#[derive(Args, Debug)]
pub struct PredictArgs {
    #[arg(long)]
    pub n: usize,

    /// Comma-separated values; `lo..hi` expands to the integers in between
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    pub alpha: String,

    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct WeightRow {
    alpha: f64,
    /// Exact fraction for integer alpha, decimal otherwise; `undefined` when absent.
    w_plus: String,
    w_minus: String,
    w_plus_value: Option<f64>,
    w_minus_value: Option<f64>,
}

#[derive(Debug, Serialize)]
struct AlgorithmRow {
    algorithm: &'static str,
    bridge: Regime,
    /// Coefficients of sqrt N.
    stage_times: Vec<f64>,
    total_time: f64,
    time_at_n: f64,
    success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Prediction {
    n: usize,
    gamma_c: f64,
    critical_weights: Vec<WeightRow>,
    algorithms: Vec<AlgorithmRow>,
}

fn weight_row(n: usize, alpha: f64) -> Result<WeightRow, CliError> {
    let p = critical_params(n, alpha)?;
    let show = |v: Option<f64>, exact: Option<String>| match (v, exact) {
        (None, _) => "undefined".to_string(),
        (Some(_), Some(e)) => e,
        (Some(v), None) => v.to_string(),
    };
    let exact = if alpha.fract() == 0.0 && alpha.abs() < 1e15 {
        let e = ExactCriticalWeights::new(n, alpha as i64)?;
        (e.w_plus.map(|r| r.to_string()), e.w_minus.map(|r| r.to_string()))
    } else {
        (None, None)
    };
    Ok(WeightRow {
        alpha,
        w_plus: show(p.w_plus, exact.0),
        w_minus: show(p.w_minus, exact.1),
        w_plus_value: p.w_plus,
        w_minus_value: p.w_minus,
    })
}

fn algorithms(n: usize) -> Result<Vec<AlgorithmRow>, CliError> {
    let sqrt_n = (n as f64).sqrt();
    let single = |name, regime| -> Result<AlgorithmRow, CliError> {
        let (tau, p) = single_stage(regime)?;
        Ok(AlgorithmRow {
            algorithm: name,
            bridge: regime,
            stage_times: vec![tau],
            total_time: tau,
            time_at_n: tau * sqrt_n,
            success_probability: p,
            phase: None,
        })
    };
    let two = |name, plan: StagePlan| AlgorithmRow {
        algorithm: name,
        bridge: plan.variant.regime(),
        stage_times: vec![plan.t1, plan.t2],
        total_time: plan.total,
        time_at_n: plan.total * sqrt_n,
        success_probability: plan.final_probability,
        phase: Some(plan.phase),
    };
    Ok(vec![
        single("single stage", Regime::Noncritical)?,
        single("single stage", Regime::Plus)?,
        two("two stage", wplus_two_stage()?),
        single("single stage", Regime::Minus)?,
        two("two stage (abc)", wminus_two_stage(PlanVariant::WminusAbc)?),
        two("two stage (ab)", wminus_two_stage(PlanVariant::WminusAb)?),
    ])
}

fn render_text(p: &Prediction) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "N = {}, gamma_c = 2/N = {}", p.n, p.gamma_c);
    let _ = writeln!(s);
    let _ = writeln!(s, "critical weights");
    let _ = writeln!(s, "{:>8} {:>14} {:>14}", "alpha", "w_plus", "w_minus");
    for row in &p.critical_weights {
        let _ = writeln!(s, "{:>8} {:>14} {:>14}", row.alpha, row.w_plus, row.w_minus);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "large-N search (times in units of sqrt N)");
    let _ = writeln!(
        s,
        "{:<16} {:<12} {:<28} {:>10} {:>8}",
        "algorithm", "bridge", "time", "t at N", "p_a"
    );
    for a in &p.algorithms {
        let time = match a.stage_times.as_slice() {
            [t] => format!("{t:.4}"),
            ts => format!(
                "{} = {:.4}",
                ts.iter().map(|t| format!("{t:.4}")).collect::<Vec<_>>().join(" + "),
                a.total_time
            ),
        };
        let _ = writeln!(
            s,
            "{:<16} {:<12} {:<28} {:>10.2} {:>8.4}",
            a.algorithm,
            a.bridge.to_string(),
            time,
            a.time_at_n,
            a.success_probability
        );
    }
    s
}

pub fn execute(args: PredictArgs) -> Result<(), CliError> {
    let alphas: Vec<Num<f64>> = parse_list(&args.alpha).map_err(CliError::Config)?;
    if alphas.iter().any(|a| !a.0.is_finite()) {
        return Err(CliError::Config("alpha values must be finite".into()));
    }
    let prediction = Prediction {
        n: args.n,
        gamma_c: critical_params(args.n, 0.0)?.gamma_c,
        critical_weights: alphas
            .iter()
            .map(|a| weight_row(args.n, a.0))
            .collect::<Result<_, _>>()?,
        algorithms: algorithms(args.n)?,
    };
    let bytes = match args.format {
        ReportFormat::Text => render_text(&prediction).into_bytes(),
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(&prediction)?;
            v.push(b'\n');
            v
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(())
}
