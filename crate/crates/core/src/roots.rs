//! Scalar root finding and maximization on bounded intervals.

use crate::error::{Error, Result};

/// Absolute tolerance on the abscissa for bisection and golden-section search.
pub const X_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: usize = 200;

/// Root of `f` in `[lo, hi]`, which must bracket a sign change.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.signum() != f_hi.signum()) {
        return Err(Error::RootFinding(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= X_TOLERANCE || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::RootFinding(format!("bisection did not converge on [{lo}, {hi}]")))
}

/// Every sign change of `f` seen on a uniform scan of `samples` intervals,
/// each refined by bisection.
pub fn roots_in(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    let step = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut y0 = f(x0);
    for k in 1..=samples {
        let x1 = lo + k as f64 * step;
        let y1 = f(x1);
        if y0 != 0.0 && y1 != 0.0 && y0.signum() != y1.signum() {
            roots.push(bisect(&mut f, x0, x1)?);
        } else if y1 == 0.0 && k < samples {
            roots.push(x1);
        }
        x0 = x1;
        y0 = y1;
    }
    Ok(roots)
}

/// Maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= X_TOLERANCE {
            let x = 0.5 * (lo + hi);
            return Ok((x, f(x)));
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    Err(Error::RootFinding(format!("golden-section search did not converge on [{lo}, {hi}]")))
}

/// Global maximum of `f` on `[lo, hi]`: the best of `samples + 1` grid points,
/// then golden-section search between its neighbours.
pub fn global_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Result<(f64, f64)> {
    let step = (hi - lo) / samples as f64;
    let (best, _) = (0..=samples)
        .map(|k| (k, f(lo + k as f64 * step)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sample");
    let a = lo + best.saturating_sub(1) as f64 * step;
    let b = lo + (best + 1).min(samples) as f64 * step;
    golden_max(f, a, b)
}
