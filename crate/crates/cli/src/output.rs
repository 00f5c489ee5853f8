//! Serialization of results. Files are written to a temporary sibling and
//! renamed into place, so a failed run never leaves a partial file.

use std::io::{self, Write};
use std::path::Path;

use qwalk::search::ProbabilitySeries;
use serde::Serialize;

pub const SERIES_HEADER: [&str; 8] = ["time", "p_a", "p_b", "p_c", "p_d", "p_e", "p_abc", "p_ab"];

/// Round-trip exact: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn series_csv(series: &ProbabilitySeries) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SERIES_HEADER)?;
    for (t, p) in series.times.iter().zip(&series.probabilities) {
        w.write_record([*t, p.a, p.b, p.c, p.d, p.e, p.abc(), p.ab()].map(num))?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Columns as arrays, plus a metadata object.
#[derive(Serialize)]
pub struct SeriesJson<'a, M: Serialize> {
    pub metadata: &'a M,
    pub time: Vec<f64>,
    pub p_a: Vec<f64>,
    pub p_b: Vec<f64>,
    pub p_c: Vec<f64>,
    pub p_d: Vec<f64>,
    pub p_e: Vec<f64>,
    pub p_abc: Vec<f64>,
    pub p_ab: Vec<f64>,
}

pub fn series_json<M: Serialize>(series: &ProbabilitySeries, metadata: &M) -> serde_json::Result<Vec<u8>> {
    let col = |f: fn(&qwalk::search::ClassProbabilities) -> f64| series.probabilities.iter().map(f).collect();
    let doc = SeriesJson {
        metadata,
        time: series.times.clone(),
        p_a: col(|p| p.a),
        p_b: col(|p| p.b),
        p_c: col(|p| p.c),
        p_d: col(|p| p.d),
        p_e: col(|p| p.e),
        p_abc: col(|p| p.abc()),
        p_ab: col(|p| p.ab()),
    };
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `bytes` to `path` atomically, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
