//! Process-wide numeric tolerance.
//!
//! One base value drives every runtime check: state-norm drift is compared
//! against it directly and spectral reconstruction against a tenth of it
//! (relative to `max(1, max|H|)`). The value is read once, from `QWALK_TOL`
//! when set, and is fixed afterwards.

use std::sync::OnceLock;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const ENV_VAR: &str = "QWALK_TOL";

static NUMERIC: OnceLock<f64> = OnceLock::new();

/// Parses a tolerance override. Must be a finite positive number.
pub fn parse(text: &str) -> Option<f64> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite() && *v > 0.0)
}

/// Fixes the tolerance before first use. Returns the value already in force
/// if it was set (or read) earlier.
pub fn set(value: f64) -> Result<(), f64> {
    NUMERIC.set(value).map_err(|_| numeric())
}

pub fn numeric() -> f64 {
    *NUMERIC.get_or_init(|| {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|v| parse(&v))
            .unwrap_or(DEFAULT_TOLERANCE)
    })
}

pub fn spectral() -> f64 {
    numeric() / 10.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse("1e-8"), Some(1e-8));
        assert_eq!(parse(" 0.5 "), Some(0.5));
        assert_eq!(parse("0"), None);
        assert_eq!(parse("-1e-9"), None);
        assert_eq!(parse("nan"), None);
        assert_eq!(parse("abc"), None);
    }
}
