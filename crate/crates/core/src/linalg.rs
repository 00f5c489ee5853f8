//! Dense real-symmetric operators and exact spectral time evolution.
//!
//! Every Hamiltonian in this crate is real symmetric. An operator is
//! diagonalized once (the spectrum is cached, write-once) and a state can then
//! be evolved to any time in `O(dim^2)`:
//!
//! ```text
//! |psi(t)> = sum_k exp(-i E_k t) <v_k|psi(0)> |v_k>
//! ```

use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

/// Sweep cap handed to the symmetric QR iteration.
const MAX_QR_ITERATIONS: usize = 100_000;

/// Eigenvalues closer than this (relative to `max(1, max|E|)`) are treated as
/// one degenerate cluster by [`Propagator`].
const CLUSTER_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub values: DVector<f64>,
    /// Orthonormal eigenvectors, one per column, in the order of `values`.
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }

    /// `max |H - V diag(E) V^T|`.
    pub fn reconstruction_error(&self, matrix: &DMatrix<f64>) -> f64 {
        let scaled = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.vectors[(i, j)] * self.values[j]
        });
        let rebuilt = scaled * self.vectors.transpose();
        (matrix - rebuilt).amax()
    }

    /// `max |V^T V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.vectors.transpose() * &self.vectors;
        (gram - DMatrix::identity(self.dim(), self.dim())).amax()
    }
}

/// Dense real-symmetric matrix with a lazily computed spectrum.
///
/// Immutable after construction; the spectrum cache is written at most once,
/// so operators can be shared read-only between threads.
#[derive(Debug)]
pub struct HermitianOperator {
    label: String,
    matrix: DMatrix<f64>,
    spectrum: OnceLock<Spectrum>,
}

impl Clone for HermitianOperator {
    fn clone(&self) -> Self {
        let spectrum = OnceLock::new();
        if let Some(s) = self.spectrum.get() {
            let _ = spectrum.set(s.clone());
        }
        Self {
            label: self.label.clone(),
            matrix: self.matrix.clone(),
            spectrum,
        }
    }
}

impl HermitianOperator {
    /// Wraps a matrix that must be square, finite and exactly symmetric.
    pub fn new(label: impl Into<String>, matrix: DMatrix<f64>) -> Result<Self> {
        let label = label.into();
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { label, rows, cols });
        }
        for i in 0..rows {
            for j in 0..cols {
                if !matrix[(i, j)].is_finite() {
                    return Err(Error::NonFinite { label, row: i, col: j });
                }
                if j > i && matrix[(i, j)] != matrix[(j, i)] {
                    return Err(Error::NotSymmetric { label, row: i, col: j });
                }
            }
        }
        Ok(Self {
            label,
            matrix,
            spectrum: OnceLock::new(),
        })
    }

    /// Builds a symmetric matrix from its upper triangle (`i <= j`).
    pub fn from_upper(
        label: impl Into<String>,
        dim: usize,
        mut upper: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = upper(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Self::new(label, m)
    }

    pub fn diagonal(label: impl Into<String>, values: &[f64]) -> Result<Self> {
        Self::new(label, DMatrix::from_diagonal(&DVector::from_column_slice(values)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.amax()
    }

    /// `self + factor * other`, keeping this operator's label.
    pub fn add_scaled(&self, factor: f64, other: &HermitianOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                operator: self.dim(),
                state: other.dim(),
            });
        }
        Self::new(self.label.clone(), &self.matrix + &other.matrix * factor)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            label: self.label.clone(),
            matrix: &self.matrix * factor,
            spectrum: OnceLock::new(),
        }
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn cached_spectrum(&self) -> Option<&Spectrum> {
        self.spectrum.get()
    }

    /// Diagonalizes on first call; later calls return the cached spectrum.
    pub fn eigendecompose(&self) -> Result<&Spectrum> {
        if let Some(s) = self.spectrum.get() {
            return Ok(s);
        }
        let spectrum = self.compute_spectrum()?;
        // A concurrent caller may have won the race; both results are valid.
        let _ = self.spectrum.set(spectrum);
        Ok(self.spectrum.get().expect("spectrum was just set"))
    }

    fn compute_spectrum(&self) -> Result<Spectrum> {
        let eig = SymmetricEigen::try_new(self.matrix.clone(), f64::EPSILON, MAX_QR_ITERATIONS)
            .ok_or_else(|| {
                let mut off = self.matrix.clone();
                off.fill_diagonal(0.0);
                Error::NoConvergence {
                    label: self.label.clone(),
                    iterations: MAX_QR_ITERATIONS,
                    residual: off.norm(),
                }
            })?;

        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        // Stable sort: ties keep the solver's order.
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
        let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        let spectrum = Spectrum { values, vectors };

        let limit = tolerance::spectral() * self.max_abs().max(1.0);
        let residual = spectrum.reconstruction_error(&self.matrix);
        if !(residual <= limit) {
            return Err(Error::SpectralResidual {
                label: self.label.clone(),
                check: "reconstruction",
                residual,
                limit,
            });
        }
        let residual = spectrum.orthonormality_error();
        if !(residual <= tolerance::spectral()) {
            return Err(Error::SpectralResidual {
                label: self.label.clone(),
                check: "orthonormality",
                residual,
                limit: tolerance::spectral(),
            });
        }
        Ok(spectrum)
    }
}

/// Shared, immutable basis labels.
pub type Basis = Arc<[String]>;

pub fn basis_from<S: AsRef<str>>(labels: &[S]) -> Basis {
    labels.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Labels `"0"`, `"1"`, ... for a vertex basis.
pub fn vertex_basis(n: usize) -> Basis {
    (0..n).map(|i| i.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    basis: Basis,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if basis.len() != amplitudes.len() || amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                operator: basis.len(),
                state: amplitudes.len(),
            });
        }
        Ok(Self { basis, amplitudes })
    }

    pub fn from_real(basis: Basis, amplitudes: &[f64]) -> Result<Self> {
        Self::new(basis, amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The basis state `|k>`.
    pub fn basis_state(basis: Basis, k: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.len()];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { basis, amplitudes }
    }

    pub fn uniform(basis: Basis) -> Self {
        let a = 1.0 / (basis.len() as f64).sqrt();
        let amplitudes = vec![Complex64::new(a, 0.0); basis.len()];
        Self { basis, amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            for z in &mut self.amplitudes {
                *z /= n;
            }
        }
        self
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `max_k |self_k - other_k|`.
    pub fn max_abs_diff(&self, other: &QuantumState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn probability(&self, k: usize) -> f64 {
        self.amplitudes[k].norm_sqr()
    }

    pub fn probabilities(&self) -> ProbabilityMap {
        ProbabilityMap(
            self.basis
                .iter()
                .zip(&self.amplitudes)
                .map(|(label, z)| (label.clone(), z.norm_sqr()))
                .collect(),
        )
    }
}

/// Per-label measurement probabilities in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMap(Vec<(String, f64)>);

impl ProbabilityMap {
    pub fn get(&self, label: &str) -> Option<f64> {
        self.0.iter().find(|(l, _)| l == label).map(|(_, p)| *p)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|(_, p)| *p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(l, p)| (l.as_str(), *p))
    }

    pub fn total(&self) -> f64 {
        self.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_norm(before: f64, after: f64) -> Result<()> {
    let drift = (after - before).abs();
    let limit = tolerance::numeric();
    if drift <= limit {
        Ok(())
    } else {
        Err(Error::NormDrift { drift, limit })
    }
}

/// `exp(-iHt) |psi0>` by the full spectral sum.
pub fn evolve(h: &HermitianOperator, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
    if h.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            operator: h.dim(),
            state: psi0.dim(),
        });
    }
    let spectrum = h.eigendecompose()?;
    let n = h.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let v = spectrum.vectors.column(k);
        let overlap: Complex64 = v.iter().zip(psi0.amplitudes()).map(|(x, z)| z * x).sum();
        let c = overlap * Complex64::from_polar(1.0, -spectrum.values[k] * t);
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    let state = QuantumState::new(psi0.basis().clone(), out)?;
    check_norm(psi0.norm(), state.norm())?;
    Ok(state)
}

/// Evolution of one fixed initial state under one fixed Hamiltonian.
///
/// The initial state is projected onto each eigenspace once. Numerically
/// degenerate eigenvalues are merged into a single mode and modes with zero
/// overlap are dropped, so sampling costs `O(modes * dim)` instead of
/// `O(dim^2)` per time point.
#[derive(Debug, Clone)]
pub struct Propagator {
    basis: Basis,
    initial_norm: f64,
    modes: Vec<Mode>,
}

#[derive(Debug, Clone)]
struct Mode {
    energy: f64,
    vector: Vec<Complex64>,
}

impl Propagator {
    pub fn new(h: &HermitianOperator, psi0: &QuantumState) -> Result<Self> {
        if h.dim() != psi0.dim() {
            return Err(Error::DimensionMismatch {
                operator: h.dim(),
                state: psi0.dim(),
            });
        }
        let spectrum = h.eigendecompose()?;
        let n = h.dim();
        let scale = spectrum.values.amax().max(1.0);

        let mut modes: Vec<Mode> = Vec::new();
        let mut k = 0;
        while k < n {
            let mut end = k + 1;
            while end < n && spectrum.values[end] - spectrum.values[end - 1] <= CLUSTER_TOLERANCE * scale {
                end += 1;
            }
            let mut vector = vec![Complex64::new(0.0, 0.0); n];
            let mut energy = 0.0;
            for j in k..end {
                let v = spectrum.vectors.column(j);
                let c: Complex64 = v.iter().zip(psi0.amplitudes()).map(|(x, z)| z * x).sum();
                for (o, x) in vector.iter_mut().zip(v.iter()) {
                    *o += c * x;
                }
                energy += spectrum.values[j];
            }
            let weight: f64 = vector.iter().map(|z| z.norm_sqr()).sum();
            if weight > 0.0 {
                modes.push(Mode {
                    energy: energy / (end - k) as f64,
                    vector,
                });
            }
            k = end;
        }

        Ok(Self {
            basis: psi0.basis().clone(),
            initial_norm: psi0.norm(),
            modes,
        })
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn state_at(&self, t: f64) -> Result<QuantumState> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.basis.len()];
        for mode in &self.modes {
            let phase = Complex64::from_polar(1.0, -mode.energy * t);
            for (o, z) in out.iter_mut().zip(&mode.vector) {
                *o += phase * z;
            }
        }
        let state = QuantumState::new(self.basis.clone(), out)?;
        check_norm(self.initial_norm, state.norm())?;
        Ok(state)
    }
}
