//! Flag values that need more than clap's built-in parsing.

use std::fmt;
use std::str::FromStr;

use qwalk::analysis::critical_params;

/// A bridge weight, numeric or resolved from the critical weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightSpec {
    Value(f64),
    Plus,
    Minus,
}

impl WeightSpec {
    pub fn resolve(self, n: usize, alpha: f64) -> Result<f64, String> {
        let params = critical_params(n, alpha).map_err(|e| e.to_string())?;
        match self {
            WeightSpec::Value(w) => Ok(w),
            WeightSpec::Plus => params
                .w_plus
                .ok_or_else(|| format!("wplus is undefined for alpha = {alpha}")),
            WeightSpec::Minus => params
                .w_minus
                .ok_or_else(|| format!("wminus is undefined for alpha = {alpha}")),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "wplus" => Ok(WeightSpec::Plus),
            "wminus" => Ok(WeightSpec::Minus),
            other => finite(other).map(WeightSpec::Value),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Value(w) => write!(f, "{w}"),
            WeightSpec::Plus => f.write_str("wplus"),
            WeightSpec::Minus => f.write_str("wminus"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaSpec {
    Critical,
    Value(f64),
}

impl GammaSpec {
    pub fn resolve(self, n: usize) -> f64 {
        match self {
            GammaSpec::Critical => qwalk::search::critical_gamma(n),
            GammaSpec::Value(g) => g,
        }
    }
}

impl FromStr for GammaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "critical" => Ok(GammaSpec::Critical),
            other => finite(other).map(GammaSpec::Value),
        }
    }
}

/// When a two-stage run leaves the first bridge weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchRule {
    /// Peak of the marked-clique probability in the stage-1 series.
    AbcPeak,
    /// Peak of `p_a + p_b` in the stage-1 series.
    AbPeak,
    At(f64),
}

impl FromStr for SwitchRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "abc-peak" => Ok(SwitchRule::AbcPeak),
            "ab-peak" => Ok(SwitchRule::AbPeak),
            other => {
                let time = other
                    .strip_prefix("at:")
                    .ok_or_else(|| format!("unknown rule `{other}` (abc-peak, ab-peak or at:<time>)"))?;
                let t = finite(time)?;
                if t <= 0.0 {
                    return Err(format!("switch time must be positive, got {t}"));
                }
                Ok(SwitchRule::At(t))
            }
        }
    }
}

impl fmt::Display for SwitchRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchRule::AbcPeak => f.write_str("abc-peak"),
            SwitchRule::AbPeak => f.write_str("ab-peak"),
            SwitchRule::At(t) => write!(f, "at:{t}"),
        }
    }
}

fn finite(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("`{s}` is not a finite number"))
}

/// Comma-separated items; an item `lo..hi` expands to the integers between
/// them, inclusive.
pub fn parse_list<T: FromStr<Err = String>>(s: &str) -> Result<Vec<T>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in list `{s}`"));
        }
        match item.split_once("..") {
            Some((lo, hi)) => {
                let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start in `{item}`"))?;
                let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end in `{item}`"))?;
                if lo > hi {
                    return Err(format!("empty range `{item}`"));
                }
                for k in lo..=hi {
                    out.push(k.to_string().parse()?);
                }
            }
            None => out.push(item.parse()?),
        }
    }
    Ok(out)
}

/// Wrapper so plain numbers go through [`parse_list`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num<T>(pub T);

impl<T: FromStr> FromStr for Num<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.trim()
            .parse()
            .map(Num)
            .map_err(|_| format!("`{s}` is not a valid number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!("wplus".parse::<WeightSpec>().unwrap(), WeightSpec::Plus);
        assert_eq!("-120".parse::<WeightSpec>().unwrap(), WeightSpec::Value(-120.0));
        assert!("nan".parse::<WeightSpec>().is_err());
        assert_eq!(WeightSpec::Minus.resolve(1200, 4.0).unwrap(), 300.0);
        assert!(WeightSpec::Minus.resolve(1200, 2.0).is_err());
        assert!(WeightSpec::Plus.resolve(1200, 0.0).is_err());
    }

    #[test]
    fn rules() {
        assert_eq!("at:113.1".parse::<SwitchRule>().unwrap(), SwitchRule::At(113.1));
        assert_eq!("ab-peak".parse::<SwitchRule>().unwrap(), SwitchRule::AbPeak);
        assert!("at:-1".parse::<SwitchRule>().is_err());
        assert!("later".parse::<SwitchRule>().is_err());
    }

    #[test]
    fn lists() {
        let v: Vec<Num<f64>> = parse_list("-5..-3,0.5").unwrap();
        assert_eq!(v.iter().map(|x| x.0).collect::<Vec<_>>(), vec![-5.0, -4.0, -3.0, 0.5]);
        let w: Vec<WeightSpec> = parse_list("150, wminus").unwrap();
        assert_eq!(w, vec![WeightSpec::Value(150.0), WeightSpec::Minus]);
        assert!(parse_list::<Num<usize>>("12,,14").is_err());
        assert!(parse_list::<Num<usize>>("5..3").is_err());
    }
}
