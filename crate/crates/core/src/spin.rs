//! Heisenberg spin networks and the single-excitation sector.
//!
//! ```text
//! H = -1/2 sum_{i,j} (Jx X_i X_j + Jy Y_i Y_j + Jz Z_i Z_j) + sum_i h_i Z_i
//! ```
//!
//! The `2^n` product basis uses bit value 0 for spin up (`Z = +1`) and 1 for
//! spin down, with vertex 0 as the most significant bit. With
//! `Jx = Jy = gamma e_ij`, `Jz = (1 - alpha) gamma e_ij` and no field, the
//! single-excitation block equals `-gamma L_alpha` plus a multiple of the
//! identity; a field `h_a = -1/2` adds the search oracle `-|a><a|`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SignedWeightedGraph;
use crate::linalg::{vertex_basis, Basis, HermitianOperator, Propagator, QuantumState};

pub const MAX_SPINS: usize = 14;

/// Off-sector matrix elements larger than this mean the couplings are wrong.
pub const SECTOR_LEAK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    pub i: usize,
    pub j: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem {
    pub n: usize,
    pub couplings: Vec<Coupling>,
    pub fields: Vec<f64>,
}

impl SpinSystem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            couplings: Vec::new(),
            fields: vec![0.0; n],
        }
    }

    /// Couplings that realize the generalized-Laplacian walk with jumping
    /// rate `gamma`, plus the oracle field `h = -1/2` at `marked`.
    pub fn walk(g: &SignedWeightedGraph, alpha: f64, gamma: f64, marked: Option<usize>) -> Self {
        let mut sys = Self::new(g.vertex_count());
        sys.couplings = g
            .edges()
            .iter()
            .map(|e| Coupling {
                i: e.i,
                j: e.j,
                jx: gamma * e.weight,
                jy: gamma * e.weight,
                jz: (1.0 - alpha) * gamma * e.weight,
            })
            .collect();
        if let Some(a) = marked {
            sys.fields[a] = -0.5;
        }
        sys
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    fn mask(&self, vertex: usize) -> usize {
        1 << (self.n - 1 - vertex)
    }
}

/// `+1` for spin up, `-1` for spin down.
fn z_value(state: usize, mask: usize) -> f64 {
    if state & mask == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn heisenberg_hamiltonian(sys: &SpinSystem) -> Result<HermitianOperator> {
    if sys.n > MAX_SPINS {
        return Err(Error::TooManySpins {
            n: sys.n,
            cap: MAX_SPINS,
        });
    }
    if sys.n == 0 || sys.fields.len() != sys.n {
        return Err(Error::InvalidGraph(format!(
            "spin system with {} spins has {} fields",
            sys.n,
            sys.fields.len()
        )));
    }
    for c in &sys.couplings {
        if c.i == c.j || c.i >= sys.n || c.j >= sys.n {
            return Err(Error::InvalidGraph(format!("bad coupling ({}, {})", c.i, c.j)));
        }
    }

    let dim = sys.dim();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        let mut diag = 0.0;
        for (v, &h) in sys.fields.iter().enumerate() {
            diag += h * z_value(s, sys.mask(v));
        }
        for c in &sys.couplings {
            let (mi, mj) = (sys.mask(c.i), sys.mask(c.j));
            let zz = z_value(s, mi) * z_value(s, mj);
            diag -= 0.5 * c.jz * zz;
            // X_i X_j and Y_i Y_j both flip spins i and j. Y|up> = i|down>,
            // Y|down> = -i|up>, so the YY factor is +1 when the two spins
            // differ and -1 when they agree.
            let flipped = s ^ mi ^ mj;
            m[(flipped, s)] += -0.5 * (c.jx - c.jy * zz);
        }
        m[(s, s)] += diag;
    }
    HermitianOperator::new(format!("H_heisenberg[{}]", sys.n), m)
}

/// Product-basis index of the state with the excitation at `vertex`.
pub fn excitation_index(n: usize, vertex: usize) -> usize {
    ((1 << n) - 1) ^ (1 << (n - 1 - vertex))
}

/// Number of up spins in a product-basis state of `n` spins.
pub fn excitation_number(n: usize, state: usize) -> u32 {
    n as u32 - state.count_ones()
}

/// The `n x n` block of `full` on the single-excitation states, in vertex
/// order. Fails if `full` connects that sector to any other.
pub fn project_single_excitation(full: &HermitianOperator, n: usize) -> Result<HermitianOperator> {
    if full.dim() != 1 << n {
        return Err(Error::DimensionMismatch {
            operator: full.dim(),
            state: 1 << n,
        });
    }
    let indices: Vec<usize> = (0..n).map(|k| excitation_index(n, k)).collect();
    for &row in &indices {
        for col in 0..full.dim() {
            if excitation_number(n, col) == 1 {
                continue;
            }
            let leak = full.entry(row, col).abs();
            if leak > SECTOR_LEAK_TOLERANCE {
                return Err(Error::SectorLeak { leak, row, col });
            }
        }
    }
    HermitianOperator::from_upper(format!("{}|1exc", full.label()), n, |i, j| {
        full.entry(indices[i], indices[j])
    })
}

/// Largest matrix element of `full` between states of different excitation
/// number.
pub fn max_sector_leak(full: &HermitianOperator, n: usize) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..full.dim() {
        let nr = excitation_number(n, r);
        for c in 0..full.dim() {
            if excitation_number(n, c) != nr {
                worst = worst.max(full.entry(r, c).abs());
            }
        }
    }
    worst
}

/// Lifts an `n`-vertex walk state into the `2^n` spin space.
pub fn embed_single_excitation(state: &QuantumState) -> Result<QuantumState> {
    let n = state.dim();
    if n > MAX_SPINS {
        return Err(Error::TooManySpins { n, cap: MAX_SPINS });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for k in 0..n {
        amps[excitation_index(n, k)] = state.amplitude(k);
    }
    QuantumState::new(spin_basis(n), amps)
}

/// Per-vertex excitation probabilities of a `2^n` spin state.
pub fn excitation_probabilities(state: &QuantumState, n: usize) -> Vec<f64> {
    (0..n).map(|k| state.probability(excitation_index(n, k))).collect()
}

pub fn spin_basis(n: usize) -> Basis {
    (0..1usize << n)
        .map(|s| {
            (0..n)
                .map(|v| if s & (1 << (n - 1 - v)) == 0 { 'u' } else { 'd' })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// `min_s max |P H P - target - s I|`.
    pub max_deviation: f64,
    /// The minimizing `s`.
    pub identity_offset: f64,
}

/// Projected spin Hamiltonian minus the walk Hamiltonian, modulo the
/// best-fitting multiple of the identity.
pub fn compare_modulo_identity(projected: &HermitianOperator, target: &HermitianOperator) -> EquivalenceReport {
    let n = projected.dim();
    let diff = projected.matrix() - target.matrix();
    let diag: Vec<f64> = (0..n).map(|k| diff[(k, k)]).collect();
    let lo = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let offset = 0.5 * (lo + hi);
    let mut worst = 0.5 * (hi - lo);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(diff[(i, j)].abs());
            }
        }
    }
    EquivalenceReport {
        max_deviation: worst,
        identity_offset: offset,
    }
}

/// `-gamma L_alpha`, minus `|a><a|` when a vertex is marked.
pub fn walk_hamiltonian(
    g: &SignedWeightedGraph,
    alpha: f64,
    gamma: f64,
    marked: Option<usize>,
) -> HermitianOperator {
    crate::search::search_hamiltonian(g, alpha, gamma, marked).relabeled("H_walk")
}

/// Checks that the spin network built by [`SpinSystem::walk`] reproduces the
/// walk Hamiltonian on the single-excitation sector.
pub fn verify_walk_equivalence(
    g: &SignedWeightedGraph,
    alpha: f64,
    gamma: f64,
    marked: Option<usize>,
) -> Result<EquivalenceReport> {
    verify_system(&SpinSystem::walk(g, alpha, gamma, marked), g, alpha, gamma, marked)
}

/// Same as [`verify_walk_equivalence`] for an explicitly supplied (possibly
/// altered) spin system.
pub fn verify_system(
    sys: &SpinSystem,
    g: &SignedWeightedGraph,
    alpha: f64,
    gamma: f64,
    marked: Option<usize>,
) -> Result<EquivalenceReport> {
    let full = heisenberg_hamiltonian(sys)?;
    let projected = project_single_excitation(&full, sys.n)?;
    Ok(compare_modulo_identity(
        &projected,
        &walk_hamiltonian(g, alpha, gamma, marked),
    ))
}

/// Largest difference, over `times` and vertices, between the walk's vertex
/// probabilities and the excitation probabilities of the spin network started
/// from the embedded walk state.
pub fn compare_dynamics(
    sys: &SpinSystem,
    g: &SignedWeightedGraph,
    alpha: f64,
    gamma: f64,
    marked: Option<usize>,
    initial: &QuantumState,
    times: &[f64],
) -> Result<f64> {
    let walk = Propagator::new(&walk_hamiltonian(g, alpha, gamma, marked), initial)?;
    let spins = Propagator::new(&heisenberg_hamiltonian(sys)?, &embed_single_excitation(initial)?)?;
    let mut worst: f64 = 0.0;
    for &t in times {
        let p_walk = walk.state_at(t)?.probabilities();
        let p_spin = excitation_probabilities(&spins.state_at(t)?, sys.n);
        for (p, q) in p_walk.values().zip(p_spin) {
            worst = worst.max((p - q).abs());
        }
    }
    Ok(worst)
}

/// Vertex labels for a walk on `n` vertices.
pub fn walk_basis(n: usize) -> Basis {
    vertex_basis(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_barbell, four_vertex_example, BarbellSpec};
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_spin_field() {
        let mut sys = SpinSystem::new(1);
        sys.fields[0] = -0.5;
        let h = heisenberg_hamiltonian(&sys).unwrap();
        assert_eq!(h.matrix().as_slice(), &[-0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn xy_coupling_swaps_excitation() {
        let mut sys = SpinSystem::new(2);
        sys.couplings.push(Coupling { i: 0, j: 1, jx: 1.0, jy: 1.0, jz: 0.0 });
        let h = heisenberg_hamiltonian(&sys).unwrap();
        // |ud> = 1, |du> = 2
        assert_eq!(h.entry(1, 2), -1.0);
        assert_eq!(h.entry(2, 1), -1.0);
        // XX + YY vanishes between |uu> and |dd>
        assert_eq!(h.entry(0, 3), 0.0);
        for s in 0..4 {
            assert_eq!(h.entry(s, s), 0.0);
        }
    }

    #[test]
    fn zz_coupling_is_diagonal() {
        let mut sys = SpinSystem::new(2);
        sys.couplings.push(Coupling { i: 0, j: 1, jx: 0.0, jy: 0.0, jz: 1.0 });
        let h = heisenberg_hamiltonian(&sys).unwrap();
        let diag: Vec<f64> = (0..4).map(|s| h.entry(s, s)).collect();
        assert_eq!(diag, vec![-0.5, 0.5, 0.5, -0.5]);
        assert_eq!(h.matrix().iter().filter(|x| **x != 0.0).count(), 4);
    }

    #[test]
    fn anisotropic_xy_mixes_sectors() {
        let mut sys = SpinSystem::new(2);
        sys.couplings.push(Coupling { i: 0, j: 1, jx: 1.0, jy: 0.5, jz: 0.0 });
        let h = heisenberg_hamiltonian(&sys).unwrap();
        assert_abs_diff_eq!(h.entry(0, 3), -0.25, epsilon = 1e-15);
        assert!(max_sector_leak(&h, 2) > 0.1);
    }

    #[test]
    fn too_many_spins() {
        let sys = SpinSystem::new(MAX_SPINS + 1);
        assert!(matches!(
            heisenberg_hamiltonian(&sys),
            Err(Error::TooManySpins { .. })
        ));
    }

    #[test]
    fn excitation_indices_put_vertex_zero_first() {
        assert_eq!(excitation_index(4, 0), 0b0111);
        assert_eq!(excitation_index(4, 3), 0b1110);
        assert_eq!(excitation_number(4, 0b0111), 1);
        assert_eq!(spin_basis(2).to_vec(), vec!["uu", "ud", "du", "dd"]);
    }

    #[test]
    fn projected_xy_part_is_minus_adjacency() {
        let w = [0.8, -1.7, 0.35, 2.2];
        let g = four_vertex_example(w).unwrap();
        let gamma = 0.3;
        let mut sys = SpinSystem::walk(&g, 0.0, gamma, None);
        for c in &mut sys.couplings {
            c.jz = 0.0;
        }
        let p = project_single_excitation(&heisenberg_hamiltonian(&sys).unwrap(), 4).unwrap();
        let a = g.adjacency_matrix();
        assert!((p.matrix() + a.matrix() * gamma).amax() <= 1e-12);
    }

    #[test]
    fn projected_zz_part_is_edge_sum_minus_twice_degree() {
        let w = [0.8, -1.7, 0.35, 2.2];
        let g = four_vertex_example(w).unwrap();
        let mut sys = SpinSystem::new(4);
        // -1/2 * Jz with Jz = -2 leaves exactly H_Z = sum e_ij Z_i Z_j.
        sys.couplings = g
            .edges()
            .iter()
            .map(|e| Coupling { i: e.i, j: e.j, jx: 0.0, jy: 0.0, jz: -2.0 * e.weight })
            .collect();
        let p = project_single_excitation(&heisenberg_hamiltonian(&sys).unwrap(), 4).unwrap();
        for k in 0..4 {
            for l in 0..4 {
                let expected = if k == l { g.total_weight() - 2.0 * g.degree(k) } else { 0.0 };
                assert_abs_diff_eq!(p.entry(k, l), expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_couplings_project_to_zero() {
        let sys = SpinSystem::new(3);
        let p = project_single_excitation(&heisenberg_hamiltonian(&sys).unwrap(), 3).unwrap();
        assert_eq!(p.max_abs(), 0.0);
    }

    #[test]
    fn leaky_hamiltonian_is_rejected() {
        let mut sys = SpinSystem::new(3);
        sys.couplings.push(Coupling { i: 0, j: 2, jx: 1.0, jy: -1.0, jz: 0.0 });
        let h = heisenberg_hamiltonian(&sys).unwrap();
        assert!(matches!(
            project_single_excitation(&h, 3),
            Err(Error::SectorLeak { .. })
        ));
    }

    #[test]
    fn four_vertex_example_equivalence() {
        let g = four_vertex_example([1.3, -0.6, 2.4, -1.1]).unwrap();
        let report = verify_walk_equivalence(&g, 0.0, 0.3, None).unwrap();
        assert!(report.max_deviation <= 1e-12, "{report:?}");
    }

    #[test]
    fn marked_barbell_equivalence() {
        let spec = BarbellSpec::new(8, -2.0).unwrap();
        let g = build_barbell(&spec).unwrap();
        let gamma = 2.0 / 8.0;
        let report = verify_walk_equivalence(&g, 1.7, gamma, Some(spec.marked())).unwrap();
        assert!(report.max_deviation <= 1e-12, "{report:?}");
        // -(1 - alpha) gamma |E| / 2 from the ZZ terms, +1/2 from the field.
        let expected = -(1.0 - 1.7) * gamma * g.total_weight() / 2.0 + 0.5;
        assert_abs_diff_eq!(report.identity_offset, expected, epsilon = 1e-12);
    }

    #[test]
    fn four_vertex_dynamics_match() {
        let g = four_vertex_example([1.0, -0.7, 2.2, 0.4]).unwrap();
        let sys = SpinSystem::walk(&g, 0.3, 0.8, Some(2));
        let psi = QuantumState::uniform(walk_basis(4));
        let times: Vec<f64> = (0..20).map(|k| 0.37 * k as f64).collect();
        let dev = compare_dynamics(&sys, &g, 0.3, 0.8, Some(2), &psi, &times).unwrap();
        assert!(dev < 1e-10, "{dev}");
    }

    #[test]
    fn perturbed_coupling_is_detected() {
        let g = four_vertex_example([1.0, 1.0, 1.0, 1.0]).unwrap();
        let mut sys = SpinSystem::walk(&g, 0.5, 0.4, None);
        sys.couplings[1].jz += 1e-3;
        let report = verify_system(&sys, &g, 0.5, 0.4, None).unwrap();
        assert!(report.max_deviation > 1e-4);
    }
}
