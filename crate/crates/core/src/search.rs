//! Search Hamiltonians, piecewise-constant schedules and probability series.
//!
//! The search Hamiltonian is `H = -gamma L_alpha - |a><a|`. On the barbell it
//! can be run in the full `N`-vertex space or in the exact five-dimensional
//! space spanned by the uniform superpositions over each vertex class; both
//! give the same class probabilities from the uniform initial state.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_barbell, BarbellSpec, SignedWeightedGraph, VertexClass};
use crate::linalg::{basis_from, vertex_basis, Basis, HermitianOperator, Propagator, QuantumState};

/// Critical jumping rate `2 / N`.
pub fn critical_gamma(n: usize) -> f64 {
    2.0 / n as f64
}

/// `-gamma L_alpha - |a><a|` on an arbitrary graph; no oracle when `marked`
/// is `None`.
pub fn search_hamiltonian(
    g: &SignedWeightedGraph,
    alpha: f64,
    gamma: f64,
    marked: Option<usize>,
) -> HermitianOperator {
    let mut m = g.generalized_laplacian(alpha).matrix() * (-gamma);
    if let Some(a) = marked {
        m[(a, a)] -= 1.0;
    }
    HermitianOperator::new("H_search", m).expect("search Hamiltonian is symmetric")
}

/// The barbell in the `{|a>, |b>, |c>, |d>, |e>}` basis, where `|b>` and `|e>`
/// are normalized uniform superpositions over their classes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBarbellModel {
    n: usize,
}

impl ReducedBarbellModel {
    pub fn new(n: usize) -> Result<Self> {
        BarbellSpec::new(n, 1.0)?;
        Ok(Self { n })
    }

    pub(crate) fn unchecked(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicities(&self) -> [usize; 5] {
        BarbellSpec { n: self.n, weight: 1.0 }.multiplicities()
    }

    pub fn basis() -> Basis {
        basis_from(&["a", "b", "c", "d", "e"])
    }

    /// `L_alpha` restricted to the class space, with the `(N/2 - 1) I` part of
    /// the degree matrix dropped.
    pub fn generalized_laplacian(&self, alpha: f64, weight: f64) -> HermitianOperator {
        let h = self.n as f64 / 2.0;
        let sb = (h - 2.0).sqrt();
        let se = (h - 1.0).sqrt();
        let bridge_diag = (alpha - 1.0) * weight;
        #[rustfmt::skip]
        let rows = [
            [0.0, sb,        1.0,         0.0,         0.0],
            [sb,  h - 3.0,   sb,          0.0,         0.0],
            [1.0, sb,        bridge_diag, weight,      0.0],
            [0.0, 0.0,       weight,      bridge_diag, se],
            [0.0, 0.0,       0.0,         se,          h - 2.0],
        ];
        HermitianOperator::from_upper("L_alpha[5]", 5, |i, j| rows[i][j])
            .expect("reduced Laplacian is symmetric")
    }

    pub fn hamiltonian(&self, alpha: f64, weight: f64, gamma: f64) -> HermitianOperator {
        let mut m = self.generalized_laplacian(alpha, weight).matrix() * (-gamma);
        m[(0, 0)] -= 1.0;
        HermitianOperator::new(format!("H[5](alpha={alpha}, w={weight})"), m)
            .expect("reduced search Hamiltonian is symmetric")
    }

    /// `(1, sqrt(N/2 - 2), 1, 1, sqrt(N/2 - 1)) / sqrt(N)`.
    pub fn initial_state(&self) -> QuantumState {
        let norm = (self.n as f64).sqrt();
        let amps: Vec<f64> = self
            .multiplicities()
            .iter()
            .map(|&m| (m as f64).sqrt() / norm)
            .collect();
        QuantumState::from_real(Self::basis(), &amps).expect("five amplitudes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Exact five-dimensional class space.
    Reduced,
    /// All `N` vertices.
    Full,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reduced" => Ok(Engine::Reduced),
            "full" => Ok(Engine::Full),
            other => Err(format!("unknown engine `{other}` (expected reduced or full)")),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Reduced => "reduced",
            Engine::Full => "full",
        })
    }
}

/// Search on the weighted barbell of `n` vertices. The bridge weight is a
/// property of each schedule segment, not of the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchProblem {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub engine: Engine,
}

impl SearchProblem {
    /// Uses the critical jumping rate.
    pub fn new(n: usize, alpha: f64, engine: Engine) -> Result<Self> {
        BarbellSpec::new(n, 1.0)?;
        if !alpha.is_finite() {
            return Err(Error::InvalidBarbell(format!("alpha {alpha} is not finite")));
        }
        Ok(Self {
            n,
            alpha,
            gamma: critical_gamma(n),
            engine,
        })
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn reduced(&self) -> ReducedBarbellModel {
        ReducedBarbellModel { n: self.n }
    }

    pub fn spec(&self, weight: f64) -> Result<BarbellSpec> {
        BarbellSpec::new(self.n, weight)
    }

    pub fn hamiltonian(&self, weight: f64) -> Result<HermitianOperator> {
        match self.engine {
            Engine::Reduced => {
                self.spec(weight)?;
                Ok(self.reduced().hamiltonian(self.alpha, weight, self.gamma))
            }
            Engine::Full => {
                let spec = self.spec(weight)?;
                let g = build_barbell(&spec)?;
                Ok(search_hamiltonian(&g, self.alpha, self.gamma, Some(spec.marked()))
                    .relabeled(format!("H[{}](alpha={}, w={weight})", self.n, self.alpha)))
            }
        }
    }

    pub fn initial_state(&self) -> QuantumState {
        match self.engine {
            Engine::Reduced => self.reduced().initial_state(),
            Engine::Full => QuantumState::uniform(vertex_basis(self.n)),
        }
    }

    /// Class-aggregated probabilities of a state of this problem's engine.
    pub fn class_probabilities(&self, state: &QuantumState) -> ClassProbabilities {
        match self.engine {
            Engine::Reduced => ClassProbabilities::from_array(std::array::from_fn(|k| state.probability(k))),
            Engine::Full => {
                let spec = BarbellSpec { n: self.n, weight: 1.0 };
                let mut p = [0.0; 5];
                for v in 0..state.dim() {
                    p[spec.class_of(v).index()] += state.probability(v);
                }
                ClassProbabilities::from_array(p)
            }
        }
    }
}

/// Probability of finding the walker in each vertex class (summed over the
/// class members).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassProbabilities {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl ClassProbabilities {
    pub fn from_array(p: [f64; 5]) -> Self {
        Self {
            a: p[0],
            b: p[1],
            c: p[2],
            d: p[3],
            e: p[4],
        }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn class(&self, class: VertexClass) -> f64 {
        self.as_array()[class.index()]
    }

    /// Probability in the marked clique.
    pub fn abc(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn ab(&self) -> f64 {
        self.a + self.b
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }

    pub fn get(&self, observable: Observable) -> f64 {
        match observable {
            Observable::Class(c) => self.class(c),
            Observable::Ab => self.ab(),
            Observable::Abc => self.abc(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Class(VertexClass),
    Ab,
    Abc,
}

impl Observable {
    pub const SUCCESS: Observable = Observable::Class(VertexClass::A);

    pub fn name(&self) -> String {
        match self {
            Observable::Class(c) => format!("p_{}", c.label()),
            Observable::Ab => "p_ab".into(),
            Observable::Abc => "p_abc".into(),
        }
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let key = s.strip_prefix("p_").unwrap_or(s);
        Ok(match key {
            "a" => Observable::Class(VertexClass::A),
            "b" => Observable::Class(VertexClass::B),
            "c" => Observable::Class(VertexClass::C),
            "d" => Observable::Class(VertexClass::D),
            "e" => Observable::Class(VertexClass::E),
            "ab" => Observable::Ab,
            "abc" => Observable::Abc,
            _ => return Err(format!("unknown observable `{s}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub weight: f64,
    /// May be infinite for the last segment.
    pub duration: f64,
}

/// Piecewise-constant bridge weights. The last segment continues past its
/// nominal duration if the time grid extends further.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    segments: Vec<Segment>,
}

impl Schedule {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidSchedule("no segments".into()));
        }
        for (k, s) in segments.iter().enumerate() {
            if s.duration.is_nan() || s.duration < 0.0 {
                return Err(Error::InvalidSchedule(format!(
                    "segment {k} has negative duration {}",
                    s.duration
                )));
            }
            if s.duration.is_infinite() && k + 1 != segments.len() {
                return Err(Error::InvalidSchedule(format!(
                    "only the last segment may be unbounded (segment {k})"
                )));
            }
            if !s.weight.is_finite() || s.weight == 0.0 {
                return Err(Error::InvalidSchedule(format!(
                    "segment {k} has bridge weight {}",
                    s.weight
                )));
            }
        }
        Ok(Self { segments })
    }

    pub fn single(weight: f64) -> Result<Self> {
        Self::new(vec![Segment {
            weight,
            duration: f64::INFINITY,
        }])
    }

    pub fn two_stage(first_weight: f64, switch_time: f64, second_weight: f64) -> Result<Self> {
        Self::new(vec![
            Segment {
                weight: first_weight,
                duration: switch_time,
            },
            Segment {
                weight: second_weight,
                duration: f64::INFINITY,
            },
        ])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Start time of each segment.
    pub fn starts(&self) -> Vec<f64> {
        let mut t = 0.0;
        self.segments
            .iter()
            .map(|s| {
                let start = t;
                t += s.duration;
                start
            })
            .collect()
    }
}

/// Sample times: nonnegative and strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid(Vec<f64>);

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidGrid("no sample times".into()));
        }
        if !(times[0] >= 0.0) || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("times must be finite and start at or after 0".into()));
        }
        if let Some(k) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(format!(
                "times not strictly increasing at index {}",
                k + 1
            )));
        }
        Ok(Self(times))
    }

    /// `0, dt, 2 dt, ...` up to and including `t_max` (within rounding).
    pub fn uniform(t_max: f64, dt: f64) -> Result<Self> {
        if !(t_max > 0.0) || !(dt > 0.0) || !t_max.is_finite() || !dt.is_finite() {
            return Err(Error::InvalidGrid(format!("need t_max > 0 and dt > 0, got {t_max}, {dt}")));
        }
        let steps = (t_max / dt + 1e-9).floor() as usize;
        Self::new((0..=steps).map(|k| k as f64 * dt).collect())
    }

    /// `8 sqrt(N)`: long enough for every schedule considered here.
    pub fn default_t_max(n: usize) -> f64 {
        8.0 * (n as f64).sqrt()
    }

    /// `sqrt(N) / 2000`: 2000 samples per `sqrt(N)` of time.
    pub fn default_dt(n: usize) -> f64 {
        (n as f64).sqrt() / 2000.0
    }

    pub fn times(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A schedule prepared for sampling: one propagator per segment, each
/// started from the state the previous segment ended in.
#[derive(Debug, Clone)]
pub struct ScheduledEvolution {
    starts: Vec<f64>,
    durations: Vec<f64>,
    propagators: Vec<Propagator>,
}

impl ScheduledEvolution {
    pub fn new(problem: &SearchProblem, schedule: &Schedule) -> Result<Self> {
        let mut state = problem.initial_state();
        let mut propagators = Vec::with_capacity(schedule.segments().len());
        let count = schedule.segments().len();
        for (k, seg) in schedule.segments().iter().enumerate() {
            let h = problem.hamiltonian(seg.weight)?;
            let prop = Propagator::new(&h, &state)?;
            if k + 1 < count {
                state = prop.state_at(seg.duration)?;
            }
            propagators.push(prop);
        }
        Ok(Self {
            starts: schedule.starts(),
            durations: schedule.segments().iter().map(|s| s.duration).collect(),
            propagators,
        })
    }

    fn segment_at(&self, t: f64) -> usize {
        self.starts.iter().rposition(|&s| s <= t).unwrap_or(0)
    }

    pub fn state_at(&self, t: f64) -> Result<QuantumState> {
        let k = self.segment_at(t);
        self.propagators[k].state_at(t - self.starts[k])
    }

    /// States on either side of the boundary that ends segment `k`.
    pub fn boundary_states(&self, k: usize) -> Result<(QuantumState, QuantumState)> {
        let before = self.propagators[k].state_at(self.durations[k])?;
        let after = self.propagators[k + 1].state_at(0.0)?;
        Ok((before, after))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilitySeries {
    pub times: Vec<f64>,
    pub probabilities: Vec<ClassProbabilities>,
}

impl ProbabilitySeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn observable(&self, observable: Observable) -> Vec<f64> {
        self.probabilities.iter().map(|p| p.get(observable)).collect()
    }
}

pub fn run_schedule(problem: &SearchProblem, schedule: &Schedule, grid: &TimeGrid) -> Result<ProbabilitySeries> {
    let evolution = ScheduledEvolution::new(problem, schedule)?;
    let probabilities = grid
        .times()
        .iter()
        .map(|&t| evolution.state_at(t).map(|s| problem.class_probabilities(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbabilitySeries {
        times: grid.times().to_vec(),
        probabilities,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub time: f64,
    pub value: f64,
}

/// Largest sample of `observable` with time in `[start, end]`, refined by the
/// parabola through it and its two neighbours when both lie in the window.
pub fn peak(series: &ProbabilitySeries, observable: Observable, window: (f64, f64)) -> Result<Peak> {
    let (start, end) = window;
    let inside: Vec<usize> = (0..series.len())
        .filter(|&k| series.times[k] >= start && series.times[k] <= end)
        .collect();
    let values = series.observable(observable);
    let &best = inside
        .iter()
        .max_by(|&&i, &&j| values[i].total_cmp(&values[j]))
        .ok_or(Error::EmptyWindow { start, end })?;

    let first = inside[0];
    let last = *inside.last().unwrap();
    if best == first || best == last {
        return Ok(Peak {
            time: series.times[best],
            value: values[best],
        });
    }
    let (t0, t1, t2) = (series.times[best - 1], series.times[best], series.times[best + 1]);
    let (y0, y1, y2) = (values[best - 1], values[best], values[best + 1]);
    Ok(refine_quadratic([t0, t1, t2], [y0, y1, y2]))
}

/// Vertex of the parabola through three points around a sampled maximum.
fn refine_quadratic(t: [f64; 3], y: [f64; 3]) -> Peak {
    let d01 = (y[1] - y[0]) / (t[1] - t[0]);
    let d12 = (y[2] - y[1]) / (t[2] - t[1]);
    let curvature = (d12 - d01) / (t[2] - t[0]);
    if !(curvature < 0.0) {
        return Peak { time: t[1], value: y[1] };
    }
    // y = y1 + s (t - t1) + curvature (t - t1)^2 around t1
    let slope = d01 + curvature * (t[1] - t[0]);
    let shift = (-slope / (2.0 * curvature)).clamp(t[0] - t[1], t[2] - t[1]);
    Peak {
        time: t[1] + shift,
        value: y[1] + slope * shift + curvature * shift * shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_oracle_when_gamma_is_zero() {
        let g = build_barbell(&BarbellSpec::new(6, 2.0).unwrap()).unwrap();
        let h = search_hamiltonian(&g, 1.3, 0.0, Some(0));
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i == 0 && j == 0 { -1.0 } else { 0.0 };
                assert_eq!(h.entry(i, j), expected);
            }
        }
    }

    #[test]
    fn reduced_hamiltonian_entries_n12() {
        let model = ReducedBarbellModel::new(12).unwrap();
        let gamma = 2.0 / 12.0;
        let h = model.hamiltonian(1.0, 1.0, gamma);
        let s5 = 5f64.sqrt();
        #[rustfmt::skip]
        let expected = [
            [1.0 / gamma, 2.0, 1.0, 0.0, 0.0],
            [2.0,         3.0, 2.0, 0.0, 0.0],
            [1.0,         2.0, 0.0, 1.0, 0.0],
            [0.0,         0.0, 1.0, 0.0, s5],
            [0.0,         0.0, 0.0, s5,  4.0],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(h.entry(i, j), -gamma * expected[i][j], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn initial_states() {
        let full = SearchProblem::new(6, 0.0, Engine::Full).unwrap().initial_state();
        assert!(full.amplitudes().iter().all(|z| (z.re - 6f64.sqrt().recip()).abs() < 1e-15));

        let reduced = ReducedBarbellModel::new(12).unwrap().initial_state();
        let expected = [1.0, 2.0, 1.0, 1.0, 5f64.sqrt()].map(|x| x / 12f64.sqrt());
        for k in 0..5 {
            assert_abs_diff_eq!(reduced.amplitude(k).re, expected[k], epsilon = 1e-15);
        }
        for n in [6, 12, 100, 1200, 120_000] {
            assert_abs_diff_eq!(ReducedBarbellModel::new(n).unwrap().initial_state().norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::new(vec![]).is_err());
        assert!(Schedule::two_stage(1.0, -1.0, 2.0).is_err());
        assert!(Schedule::new(vec![
            Segment { weight: 1.0, duration: f64::INFINITY },
            Segment { weight: 2.0, duration: 1.0 },
        ])
        .is_err());
        assert!(Schedule::single(0.0).is_err());
        assert_eq!(Schedule::two_stage(1.0, 3.5, 2.0).unwrap().starts(), vec![0.0, 3.5]);
    }

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 2.0, 1.0]).is_err());
        assert!(TimeGrid::new(vec![-1.0, 0.0]).is_err());
        assert!(TimeGrid::uniform(0.0, 0.1).is_err());
        let g = TimeGrid::uniform(1.0, 0.1).unwrap();
        assert_eq!(g.len(), 11);
        assert_abs_diff_eq!(*g.times().last().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn observable_parsing() {
        assert_eq!("p_a".parse::<Observable>().unwrap(), Observable::SUCCESS);
        assert_eq!("abc".parse::<Observable>().unwrap(), Observable::Abc);
        assert_eq!("p_ab".parse::<Observable>().unwrap(), Observable::Ab);
        assert!("p_x".parse::<Observable>().is_err());
        assert_eq!(Observable::Abc.name(), "p_abc");
    }

    #[test]
    fn quadratic_refinement_recovers_vertex() {
        let f = |t: f64| 0.8 - 3.0 * (t - 1.234).powi(2);
        let t = [1.2, 1.25, 1.3];
        let p = refine_quadratic(t, t.map(f));
        assert_abs_diff_eq!(p.time, 1.234, epsilon = 1e-12);
        assert_abs_diff_eq!(p.value, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn peak_window_errors_and_edges() {
        let series = ProbabilitySeries {
            times: vec![0.0, 1.0, 2.0],
            probabilities: [0.1, 0.5, 0.9]
                .iter()
                .map(|&a| ClassProbabilities { a, e: 1.0 - a, ..Default::default() })
                .collect(),
        };
        assert!(matches!(
            peak(&series, Observable::SUCCESS, (5.0, 6.0)),
            Err(Error::EmptyWindow { .. })
        ));
        let p = peak(&series, Observable::SUCCESS, (0.0, 2.0)).unwrap();
        assert_eq!((p.time, p.value), (2.0, 0.9));
    }

    #[test]
    fn boundary_continuity() {
        let problem = SearchProblem::new(12, 4.0, Engine::Reduced).unwrap();
        let schedule = Schedule::two_stage(1.5, 3.7, 1.0).unwrap();
        let evo = ScheduledEvolution::new(&problem, &schedule).unwrap();
        let (before, after) = evo.boundary_states(0).unwrap();
        assert!(before.max_abs_diff(&after) < 1e-12);
        let at = evo.state_at(3.7).unwrap();
        assert!(at.max_abs_diff(&before) < 1e-12);
    }
}
