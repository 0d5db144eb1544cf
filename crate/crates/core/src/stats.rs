//! Size and time metrics for converting resolution proofs to hyper
//! tableaux, per proof and aggregated over a corpus.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::batch;
use crate::hyper::{hyper_convert, HyperOptions};
use crate::proof::{parse_proof, DEFAULT_MAX_TREE_NODES};

/// One converted proof: S2 resolution steps, S3 cut-normal-form size, S4
/// hyper size (inner nodes), T2 conversion time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofRow {
    pub name: String,
    pub steps: usize,
    pub cut_size: usize,
    pub hyper_size: usize,
    pub rounds: usize,
    pub hyper_ms: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub name: String,
    pub error: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spread {
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

impl Spread {
    pub fn of(values: &[f64]) -> Option<Spread> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 };
        Some(Spread { median, min: v[0], max: v[n - 1] })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub proofs: usize,
    pub converted: usize,
    /// Conversions whose hyper tableau is no larger than the input.
    pub not_larger: usize,
    pub ratio: Option<Spread>,
    pub cut_size: Option<Spread>,
    pub hyper_size: Option<Spread>,
    pub hyper_ms: Option<Spread>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub rows: Vec<ProofRow>,
    pub failures: Vec<Failure>,
    pub summary: Summary,
}

pub fn proof_row(name: &str, src: &str, opts: &HyperOptions) -> Result<ProofRow, String> {
    let doc = parse_proof(src).map_err(|e| e.to_string())?;
    let steps = doc.steps.iter().filter(|s| !matches!(s.rule, crate::proof::Rule::Input)).count();
    let cut = doc.import(DEFAULT_MAX_TREE_NODES).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (h, trace) = hyper_convert(&cut, opts).map_err(|e| e.to_string())?;
    let hyper_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (cut_size, hyper_size) = (cut.size(), h.size());
    let ratio = if cut_size == 0 { 1.0 } else { hyper_size as f64 / cut_size as f64 };
    Ok(ProofRow { name: name.to_owned(), steps, cut_size, hyper_size, rounds: trace.total_rounds, hyper_ms, ratio })
}

/// Convert every `(name, source)` pair; rows keep input order.
pub fn collect(inputs: &[(String, String)], opts: &HyperOptions) -> StatsReport {
    let results = batch::map(inputs, |(name, src)| proof_row(name, src, opts));
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for ((name, _), r) in inputs.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(Failure { name: name.clone(), error }),
        }
    }
    let col = |f: fn(&ProofRow) -> f64| Spread::of(&rows.iter().map(f).collect::<Vec<_>>());
    let summary = Summary {
        proofs: inputs.len(),
        converted: rows.len(),
        not_larger: rows.iter().filter(|r| r.hyper_size <= r.cut_size).count(),
        ratio: col(|r| r.ratio),
        cut_size: col(|r| r.cut_size as f64),
        hyper_size: col(|r| r.hyper_size as f64),
        hyper_ms: col(|r| r.hyper_ms),
    };
    StatsReport { rows, failures, summary }
}

/// `*.proof` files of `dir`, sorted by file name.
pub fn proof_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "proof"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn collect_dir(dir: &Path, opts: &HyperOptions) -> std::io::Result<StatsReport> {
    let mut inputs = Vec::new();
    for p in proof_files(dir)? {
        let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        inputs.push((name, std::fs::read_to_string(&p)?));
    }
    Ok(collect(&inputs, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG5: &str = "proof.\n1 input p .\n2 input ~p | q .\n3 input ~q .\n4 resolve(1, 2, p) q .\n5 resolve(4, 3, q) $false .\n";

    #[test]
    fn spread() {
        let s = Spread::of(&[3.0, 1.0, 2.0, 10.0]).unwrap();
        assert_eq!((s.median, s.min, s.max), (2.5, 1.0, 10.0));
        assert!(Spread::of(&[]).is_none());
    }

    #[test]
    fn rows_and_failures() {
        let inputs = vec![("fig5".to_owned(), FIG5.to_owned()), ("bad".to_owned(), "proof.\n1 input p .\n".to_owned())];
        let r = collect(&inputs, &HyperOptions::default());
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.failures[0].name, "bad");
        let row = &r.rows[0];
        assert_eq!((row.steps, row.cut_size, row.hyper_size), (2, 5, 3));
        assert_eq!(r.summary.not_larger, 1);
    }
}
