//! Large-`N` predictions for search on the weighted barbell.
//!
//! Everything here works in the five-dimensional class basis `(a, b, c, d, e)`
//! at the critical jumping rate `gamma = 2 / N`. At leading order the
//! Hamiltonian is diagonal in `{|a>, |b>, |cd+>, |cd->, |e>}` with
//! `|cd+-> = (|c> +- |d>) / sqrt 2`. When three or four of those levels
//! coincide at `-1`, the `O(1/sqrt N)` couplings split them and the walk
//! evolves on the slow time scale `tau = t / sqrt N`. The constants of the
//! one- and two-stage algorithms are found by root finding and maximization
//! on these asymptotic curves.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::Result;
use crate::graph::BarbellSpec;
use crate::roots;
use crate::search::{critical_gamma, ClassProbabilities, ReducedBarbellModel};

/// Relative distance from a critical weight within which a bridge counts as
/// critical.
pub const CRITICAL_WEIGHT_EPSILON: f64 = 1e-9;

/// Scan resolution for maximizations over `tau`.
const SCAN_SAMPLES: usize = 8000;

/// Upper end of every `tau` scan: `8 sqrt N` covers all algorithms here.
const TAU_MAX: f64 = 8.0;

/// `(sqrt(2 + sqrt 2), sqrt(2 - sqrt 2))`: the two frequencies, in units of
/// `1 / sqrt N`, of the critical-weight dynamics.
pub fn frequencies() -> (f64, f64) {
    ((2.0 + SQRT_2).sqrt(), (2.0 - SQRT_2).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalParams {
    pub gamma_c: f64,
    /// Absent for `alpha = 0`.
    pub w_plus: Option<f64>,
    /// Absent for `alpha = 2`.
    pub w_minus: Option<f64>,
}

pub fn critical_params(n: usize, alpha: f64) -> Result<CriticalParams> {
    BarbellSpec::new(n, 1.0)?;
    let nf = n as f64;
    Ok(CriticalParams {
        gamma_c: critical_gamma(n),
        w_plus: (alpha != 0.0).then(|| nf / (2.0 * alpha)),
        w_minus: (alpha != 2.0).then(|| nf / (2.0 * (alpha - 2.0))),
    })
}

/// Critical weights as exact fractions, for integer `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactCriticalWeights {
    pub w_plus: Option<Ratio<i64>>,
    pub w_minus: Option<Ratio<i64>>,
}

impl ExactCriticalWeights {
    pub fn new(n: usize, alpha: i64) -> Result<Self> {
        BarbellSpec::new(n, 1.0)?;
        let n = n as i64;
        Ok(Self {
            w_plus: (alpha != 0).then(|| Ratio::new(n, 2 * alpha)),
            w_minus: (alpha != 2).then(|| Ratio::new(n, 2 * (alpha - 2))),
        })
    }
}

/// Which leading-order level, if any, the bridge weight makes degenerate
/// with `|a>`, `|b>` and `|e>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Noncritical,
    /// `|cd+>` joins the degenerate level (`w = N / (2 alpha)`).
    Plus,
    /// `|cd->` joins the degenerate level (`w = N / (2 (alpha - 2))`).
    Minus,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Noncritical => "noncritical",
            Regime::Plus => "plus",
            Regime::Minus => "minus",
        })
    }
}

fn near(w: f64, target: Option<f64>, eps: f64) -> bool {
    target.is_some_and(|c| (w - c).abs() <= eps * c.abs())
}

/// The two critical weights never coincide (`N / (2 alpha) = N / (2 (alpha - 2))`
/// has no solution), so at most one test below can succeed.
pub fn classify_weight_with(n: usize, alpha: f64, w: f64, eps: f64) -> Result<Regime> {
    let p = critical_params(n, alpha)?;
    Ok(if near(w, p.w_plus, eps) {
        Regime::Plus
    } else if near(w, p.w_minus, eps) {
        Regime::Minus
    } else {
        Regime::Noncritical
    })
}

pub fn classify_weight(n: usize, alpha: f64, w: f64) -> Result<Regime> {
    classify_weight_with(n, alpha, w, CRITICAL_WEIGHT_EPSILON)
}

/// A real vector in the `(a, b, c, d, e)` basis with its eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenpair {
    pub label: &'static str,
    pub vector: [f64; 5],
    pub value: f64,
}

const A: [f64; 5] = [1.0, 0.0, 0.0, 0.0, 0.0];
const B: [f64; 5] = [0.0, 1.0, 0.0, 0.0, 0.0];
const E: [f64; 5] = [0.0, 0.0, 0.0, 0.0, 1.0];
const CD_PLUS: [f64; 5] = [0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];
const CD_MINUS: [f64; 5] = [0.0, 0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0];

/// Eigensystem of the leading-order Hamiltonian.
pub fn leading_order_eigensystem(n: usize, alpha: f64, w: f64, gamma: f64) -> [Eigenpair; 5] {
    let clique = -gamma * n as f64 / 2.0;
    [
        Eigenpair { label: "a", vector: A, value: -1.0 },
        Eigenpair { label: "b", vector: B, value: clique },
        Eigenpair { label: "cd+", vector: CD_PLUS, value: -alpha * gamma * w },
        Eigenpair { label: "cd-", vector: CD_MINUS, value: -(alpha - 2.0) * gamma * w },
        Eigenpair { label: "e", vector: E, value: clique },
    ]
}

/// Number of leading-order levels within `tol` of `-1`.
pub fn degeneracy_at_minus_one(pairs: &[Eigenpair], tol: f64) -> usize {
    pairs.iter().filter(|p| (p.value + 1.0).abs() <= tol).count()
}

/// `(H0, H1)` with `H0` the leading-order part and `H1 = H - H0` the
/// remainder of the exact reduced Hamiltonian.
pub fn perturbative_split(n: usize, alpha: f64, w: f64, gamma: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let h = ReducedBarbellModel::unchecked(n).hamiltonian(alpha, w, gamma).matrix().clone();
    let mut h0 = DMatrix::zeros(5, 5);
    for p in leading_order_eigensystem(n, alpha, w, gamma) {
        let v = nalgebra::DVector::from_column_slice(&p.vector);
        h0 += &v * v.transpose() * p.value;
    }
    let h1 = &h - &h0;
    (h0, h1)
}

/// Modes that carry the slow dynamics, as `(lambda, vector)` with the energy
/// `E = -1 + lambda / sqrt N`. Ascending in `lambda`.
fn slow_modes(regime: Regime) -> Vec<(f64, [f64; 5])> {
    let (a, b) = frequencies();
    let s = |v: [f64; 5]| {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / norm)
    };
    match regime {
        Regime::Noncritical => vec![
            (-SQRT_2, s([1.0, 1.0, 0.0, 0.0, 0.0])),
            (0.0, E),
            (SQRT_2, s([1.0, -1.0, 0.0, 0.0, 0.0])),
        ],
        Regime::Plus | Regime::Minus => {
            let sign = if regime == Regime::Plus { 1.0 } else { -1.0 };
            // (a, b, cd, e) components; cd splits into c = cd / sqrt 2 and d = sign cd / sqrt 2
            let mode = |va: f64, vb: f64, vcd: f64| {
                s([va, vb, vcd * FRAC_1_SQRT_2, sign * vcd * FRAC_1_SQRT_2, sign])
            };
            vec![
                (-a, mode(a, 1.0 + SQRT_2, a)),
                (-b, mode(-b, 1.0 - SQRT_2, b)),
                (b, mode(b, 1.0 - SQRT_2, -b)),
                (a, mode(-a, 1.0 + SQRT_2, -a)),
            ]
        }
    }
}

/// Large-`N` form of the uniform initial state: `(|b> + |e>) / sqrt 2`.
fn asymptotic_initial_state() -> [f64; 5] {
    [0.0, FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]
}

fn dot(u: &[f64; 5], v: &[f64; 5]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

/// Asymptotic amplitudes at `tau = t / sqrt N` (global phase `e^{it}`
/// removed) from the large-`N` initial state.
pub fn asymptotic_state(regime: Regime, tau: f64) -> [Complex64; 5] {
    let psi0 = asymptotic_initial_state();
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (lambda, v) in slow_modes(regime) {
        let c = dot(&v, &psi0);
        let phase = Complex64::from_polar(c, -lambda * tau);
        for k in 0..5 {
            out[k] += phase * v[k];
        }
    }
    out
}

pub fn asymptotic_probabilities(regime: Regime, tau: f64) -> ClassProbabilities {
    ClassProbabilities::from_array(asymptotic_state(regime, tau).map(|z| z.norm_sqr()))
}

/// Eigenvectors and eigenvalues of `H0 + H1` at `gamma = 2 / N`: the slow
/// modes plus the leading-order `|cd+->` levels that stay out of resonance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticEigensystem {
    pub regime: Regime,
    pub n: usize,
    pub alpha: f64,
    pub weight: f64,
    pub pairs: Vec<Eigenpair>,
}

impl AsymptoticEigensystem {
    /// The regime is read off the weight.
    pub fn new(n: usize, alpha: f64, weight: f64) -> Result<Self> {
        let regime = classify_weight(n, alpha, weight)?;
        let sqrt_n = (n as f64).sqrt();
        let gamma = critical_gamma(n);
        const LABELS: [&str; 5] = ["psi_0", "psi_1", "psi_2", "psi_3", "psi_4"];
        let mut pairs: Vec<Eigenpair> = slow_modes(regime)
            .into_iter()
            .zip(LABELS)
            .map(|((lambda, vector), label)| Eigenpair {
                label,
                vector,
                value: -1.0 + lambda / sqrt_n,
            })
            .collect();
        let leading = leading_order_eigensystem(n, alpha, weight, gamma);
        let spectators: &[usize] = match regime {
            Regime::Noncritical => &[2, 3],
            Regime::Plus => &[3],
            Regime::Minus => &[2],
        };
        for &k in spectators {
            let label = LABELS[pairs.len()];
            pairs.push(Eigenpair { label, ..leading[k] });
        }
        Ok(Self {
            regime,
            n,
            alpha,
            weight,
            pairs,
        })
    }

    /// Largest `|<u|v> - delta_uv|` over all pairs.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, u) in self.pairs.iter().enumerate() {
            for (j, v) in self.pairs.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&u.vector, &v.vector) - target).abs());
            }
        }
        worst
    }

    /// `||(H0 + H1) psi - E psi||` for each pair, with the exact reduced
    /// Hamiltonian.
    pub fn residuals(&self) -> Vec<f64> {
        let (h0, h1) = perturbative_split(self.n, self.alpha, self.weight, critical_gamma(self.n));
        let h = h0 + h1;
        self.pairs
            .iter()
            .map(|p| {
                let v = nalgebra::DVector::from_column_slice(&p.vector);
                (&h * &v - &v * p.value).norm()
            })
            .collect()
    }

    /// Amplitudes at time `t` from `(|b> + |e>) / sqrt 2`, global phase
    /// `e^{it}` removed.
    pub fn state_at(&self, t: f64) -> [Complex64; 5] {
        let psi0 = asymptotic_initial_state();
        let mut out = [Complex64::new(0.0, 0.0); 5];
        for p in &self.pairs {
            let c = dot(&p.vector, &psi0);
            let z = Complex64::from_polar(c, -(p.value + 1.0) * t);
            for k in 0..5 {
                out[k] += z * p.vector[k];
            }
        }
        out
    }

    pub fn probabilities(&self, t: f64) -> ClassProbabilities {
        ClassProbabilities::from_array(self.state_at(t).map(|z| z.norm_sqr()))
    }
}

/// Closed forms for a noncritical bridge.
pub fn noncritical_probabilities(n: usize, t: f64) -> ClassProbabilities {
    let x = (2.0 / n as f64).sqrt() * t;
    ClassProbabilities {
        a: 0.5 * x.sin().powi(2),
        b: 0.5 * x.cos().powi(2),
        c: 0.0,
        d: 0.0,
        e: 0.5,
    }
}

/// Closed forms for `w = w_-`.
pub fn wminus_probabilities(n: usize, t: f64) -> ClassProbabilities {
    let (a, b) = frequencies();
    let tau = t / (n as f64).sqrt();
    let (sa, ca) = (a * tau).sin_cos();
    let (sb, cb) = (b * tau).sin_cos();
    let cd = (b * sa - a * sb).powi(2) / 16.0;
    ClassProbabilities {
        a: (b * sa + a * sb).powi(2) / 8.0,
        b: (ca + cb).powi(2) / 8.0,
        c: cd,
        d: cd,
        e: ((SQRT_2 - 2.0) * ca + (2.0 + SQRT_2) * cb).powi(2) / 16.0,
    }
}

/// `k`-th critical point of the `w_-` success probability: `k pi sqrt N / (A + B)`.
/// Odd `k` are local maxima; `k = 5` is the global one.
pub fn wminus_extremum(n: usize, k: u32) -> f64 {
    let (a, b) = frequencies();
    k as f64 * PI * (n as f64).sqrt() / (a + b)
}

pub fn wminus_runtime(n: usize) -> f64 {
    wminus_extremum(n, 5)
}

/// Probability that stays put under a noncritical bridge is in `c`, `d`, `e`;
/// the `a`/`b` part oscillates as `(c0 e^{i theta} |psi_0> + c2 e^{-i theta} |psi_2>)`
/// with `theta = sqrt(2/N) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondStage {
    /// `(|c0| + |c2|)^2 / 2`: largest reachable success probability.
    pub amplitude: f64,
    /// `phi` in `p_a = amplitude sin^2(theta + phi)` (exact when `|c0| = |c2|`),
    /// reduced to `[0, pi)`.
    pub phase: f64,
    /// First positive `theta` at which `p_a` peaks.
    pub theta: f64,
}

/// Below this `theta` the state is taken to be already at the peak; the next
/// peak, one period later, is used instead.
const THETA_FLOOR: f64 = 1e-9;

pub fn second_stage(state: &[Complex64; 5]) -> SecondStage {
    let c0 = (state[0] + state[1]) * FRAC_1_SQRT_2;
    let c2 = (state[0] - state[1]) * FRAC_1_SQRT_2;
    let amplitude = 0.5 * (c0.norm() + c2.norm()).powi(2);
    let half = 0.5 * (c0.arg() - c2.arg());
    let phase = (half + PI / 2.0).rem_euclid(PI);
    // p_a peaks when theta + phase = pi/2 (mod pi)
    let mut theta = (PI / 2.0 - phase).rem_euclid(PI);
    if theta < THETA_FLOOR {
        theta += PI;
    }
    SecondStage { amplitude, phase, theta }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanVariant {
    /// `w_+`, switching when `p_ab` (equivalently `p_abc`) peaks.
    WplusTwoStage,
    /// `w_-`, switching when `p_abc` peaks.
    WminusAbc,
    /// `w_-`, switching when `p_ab` peaks.
    WminusAb,
}

impl PlanVariant {
    pub fn regime(self) -> Regime {
        match self {
            PlanVariant::WplusTwoStage => Regime::Plus,
            PlanVariant::WminusAbc | PlanVariant::WminusAb => Regime::Minus,
        }
    }
}

/// A two-stage algorithm: critical bridge for `t1 sqrt N`, then a noncritical
/// one for `t2 sqrt N`. Times are coefficients of `sqrt N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StagePlan {
    pub variant: PlanVariant,
    pub t1: f64,
    pub t2: f64,
    pub total: f64,
    pub final_probability: f64,
    pub phase: f64,
    /// Probabilities at the switch.
    pub at_switch: ClassProbabilities,
    /// Amplitudes at the switch as `(re, im)`, global phase removed.
    pub switch_state: [(f64, f64); 5],
}

impl StagePlan {
    fn build(variant: PlanVariant, t1: f64) -> Self {
        let state = asymptotic_state(variant.regime(), t1);
        let stage = second_stage(&state);
        let t2 = stage.theta / SQRT_2;
        Self {
            variant,
            t1,
            t2,
            total: t1 + t2,
            final_probability: stage.amplitude,
            phase: stage.phase,
            at_switch: ClassProbabilities::from_array(state.map(|z| z.norm_sqr())),
            switch_state: state.map(|z| (z.re, z.im)),
        }
    }
}

/// Single-stage runtime coefficient and success probability for `regime`:
/// the global maximum of `p_a` over `tau` in `(0, 8]`. A noncritical bridge
/// gives a pure sinusoid whose equal peaks repeat, so only its first period
/// `(0, pi / sqrt 2]` is searched.
pub fn single_stage(regime: Regime) -> Result<(f64, f64)> {
    let end = match regime {
        Regime::Noncritical => PI / SQRT_2,
        Regime::Plus | Regime::Minus => TAU_MAX,
    };
    roots::global_max(|tau| asymptotic_probabilities(regime, tau).a, 0.0, end, SCAN_SAMPLES)
}

/// Switch for `w_+`: the stationary points of `p_ab` solve
/// `A sin(A tau) + B sin(B tau) = 0`; the one with the largest `p_ab` wins.
pub fn wplus_two_stage() -> Result<StagePlan> {
    let (a, b) = frequencies();
    let candidates = roots::roots_in(|tau| a * (a * tau).sin() + b * (b * tau).sin(), 0.1, TAU_MAX, SCAN_SAMPLES)?;
    let t1 = candidates
        .into_iter()
        .max_by(|x, y| {
            let px = asymptotic_probabilities(Regime::Plus, *x).ab();
            let py = asymptotic_probabilities(Regime::Plus, *y).ab();
            px.total_cmp(&py)
        })
        .ok_or_else(|| crate::Error::RootFinding("no stationary point of p_ab".into()))?;
    Ok(StagePlan::build(PlanVariant::WplusTwoStage, t1))
}

pub fn wminus_two_stage(variant: PlanVariant) -> Result<StagePlan> {
    let t1 = match variant {
        PlanVariant::WminusAbc => {
            roots::global_max(|tau| asymptotic_probabilities(Regime::Minus, tau).abc(), 0.0, TAU_MAX, SCAN_SAMPLES)?.0
        }
        PlanVariant::WminusAb => wminus_runtime(1),
        PlanVariant::WplusTwoStage => {
            return Err(crate::Error::InvalidSchedule("not a w_- variant".into()));
        }
    };
    Ok(StagePlan::build(variant, t1))
}

/// Constants of the `w_+` algorithms (times as coefficients of `sqrt N`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WplusConstants {
    pub single_time: f64,
    pub single_probability: f64,
    pub t1: f64,
    pub t2: f64,
    pub total: f64,
    pub final_probability: f64,
}

pub fn wplus_constants() -> Result<WplusConstants> {
    let (single_time, single_probability) = single_stage(Regime::Plus)?;
    let plan = wplus_two_stage()?;
    Ok(WplusConstants {
        single_time,
        single_probability,
        t1: plan.t1,
        t2: plan.t2,
        total: plan.total,
        final_probability: plan.final_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let p = critical_params(1200, -3.0).unwrap();
        assert_eq!((p.w_plus, p.w_minus), (Some(-200.0), Some(-120.0)));
        let p = critical_params(1200, 0.0).unwrap();
        assert_eq!((p.w_plus, p.w_minus), (None, Some(-300.0)));
        assert_eq!(critical_params(1200, 2.0).unwrap().w_minus, None);
        let exact = ExactCriticalWeights::new(1200, -5).unwrap();
        assert_eq!(exact.w_minus, Some(Ratio::new(-600, 7)));
        assert_eq!(exact.w_minus.unwrap().to_string(), "-600/7");
        assert_eq!(exact.w_plus.unwrap().to_string(), "-120");
        assert!(critical_params(7, 1.0).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_weight(1200, 4.0, 150.0).unwrap(), Regime::Plus);
        assert_eq!(classify_weight(1200, 4.0, 300.0).unwrap(), Regime::Minus);
        assert_eq!(classify_weight(1200, 4.0, 600.0).unwrap(), Regime::Noncritical);
        assert_eq!(classify_weight(1200, 4.0, 150.0 * (1.0 + 1e-10)).unwrap(), Regime::Plus);
        assert_eq!(classify_weight(1200, 4.0, 150.0 * (1.0 + 1e-8)).unwrap(), Regime::Noncritical);
        assert_eq!(classify_weight(1200, 0.0, 1e300).unwrap(), Regime::Noncritical);
    }

    #[test]
    fn leading_order_levels() {
        let n = 1200;
        let g = critical_gamma(n);
        let at = |w: f64, alpha: f64| leading_order_eigensystem(n, alpha, w, g);
        assert!((at(150.0, 4.0)[2].value + 1.0).abs() < 1e-15);
        assert!((at(300.0, 4.0)[3].value + 1.0).abs() < 1e-15);
        assert_eq!(at(1e6, 2.0)[3].value, 0.0);
        assert_eq!(degeneracy_at_minus_one(&at(150.0, 4.0), 1e-12), 4);
        assert_eq!(degeneracy_at_minus_one(&at(300.0, 4.0), 1e-12), 4);
        assert_eq!(degeneracy_at_minus_one(&at(1.0, 4.0), 1e-12), 3);
    }

    #[test]
    fn closed_forms_start_from_initial_state() {
        let p = wminus_probabilities(1200, 0.0);
        assert_eq!((p.a, p.c, p.d), (0.0, 0.0, 0.0));
        assert!((p.b - 0.5).abs() < 1e-15 && (p.e - 0.5).abs() < 1e-15);
        let q = noncritical_probabilities(1200, 0.0);
        assert_eq!(q.as_array(), [0.0, 0.5, 0.0, 0.0, 0.5]);
        let peak = noncritical_probabilities(1200, PI / 2.0 * 600f64.sqrt());
        assert!((peak.a - 0.5).abs() < 1e-15);
    }

    #[test]
    fn runtime_formula() {
        assert!((wminus_runtime(1200) - 208.2).abs() < 0.05);
        assert!((wminus_runtime(100) - 60.11).abs() < 0.01);
        assert!((wminus_extremum(1200, 1) - 41.6).abs() < 0.05);
        assert!((wminus_extremum(1200, 3) - 124.9).abs() < 0.05);
    }

    #[test]
    fn noncritical_single_stage_is_first_peak() {
        let (tau, p) = single_stage(Regime::Noncritical).unwrap();
        assert!((tau - PI / (2.0 * SQRT_2)).abs() < 1e-6);
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn second_stage_of_symmetric_state_waits_a_period() {
        let i = Complex64::i();
        let z = Complex64::new(0.0, 0.0);
        let s = second_stage(&[-0.9 * i, z, z, z, z]);
        assert!((s.theta - PI).abs() < 1e-12);
        assert!((s.amplitude - 0.81).abs() < 1e-12);
    }
}
