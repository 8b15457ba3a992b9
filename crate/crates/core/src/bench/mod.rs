//! Accuracy and running-time sweeps over methods and training counts.
//!
//! For every `(method, l)` pair the dataset is split, the extractor is
//! fitted on the training part and the test part is recognised by nearest
//! neighbour. One untimed run fixes the effective parameters and the
//! accuracy; `repeats` further runs of fit + evaluation are timed and
//! averaged.

mod report;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::classify::evaluate;
use crate::dataset::{load_path, split, synth_faces, LabeledDataset, SplitSpec, SynthSpec};
use crate::dpca::{fit_dpca, DpcaParams};
use crate::error::Error;
use crate::lda::{fit_dlda, fit_fisher};
use crate::pca::{fit_pca, FeatureSubspace, Method};
use crate::scatter::Rule;

pub use report::{emit_report, ReportFormat, CSV_HEADER};

#[derive(Debug, Clone)]
pub enum DataSource {
    /// Image directory tree or interchange CSV file.
    Path(PathBuf),
    Synth(SynthSpec),
    Dataset(LabeledDataset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitKind {
    #[default]
    First,
    /// Per-class shuffle seeded from [`BenchConfig::seed`].
    Random,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub data: DataSource,
    pub methods: Vec<Method>,
    pub l_values: Vec<usize>,
    /// Requested components for pca and dpca, capped at the numerical rank.
    pub p: usize,
    /// Direct LDA directions (`None`: all remaining after discarding).
    pub m: Option<usize>,
    pub discarded_w: usize,
    pub rule: Rule,
    pub repeats: usize,
    pub seed: u64,
    pub split: SplitKind,
}

impl BenchConfig {
    pub fn new(data: DataSource) -> Self {
        Self {
            data,
            methods: vec![Method::Pca, Method::Dlda, Method::Dpca],
            l_values: vec![3, 5, 7],
            p: 40,
            m: None,
            discarded_w: 0,
            rule: Rule::Mean,
            repeats: 20,
            seed: 42,
            split: SplitKind::First,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.repeats == 0 {
            return Err(Error::InvalidParameter("repeats must be >= 1".into()));
        }
        if self.l_values.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one l value is required".into(),
            ));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one method is required".into(),
            ));
        }
        if self.p == 0 {
            return Err(Error::InvalidParameter("p must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Dataset,
    Split,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Config => "config",
            Stage::Dataset => "dataset",
            Stage::Split => "split",
        })
    }
}

/// A failure that aborts the whole run.
#[derive(Debug, thiserror::Error)]
#[error("{stage} stage failed: {source}")]
pub struct BenchError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

impl BenchError {
    fn at(stage: Stage) -> impl FnOnce(Error) -> Self {
        move |source| Self { stage, source }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowResult {
    pub accuracy: f64,
    pub mean_time_s: f64,
    /// SHA-256 of the fitted basis bits.
    pub basis_fingerprint: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub l: usize,
    /// Effective parameters; `None` where the method has no such knob.
    pub p: Option<usize>,
    pub m: Option<usize>,
    pub discarded_w: Option<usize>,
    pub rule: Option<Rule>,
    pub seed: u64,
    /// `Err` holds the message of a fit failure confined to this row.
    pub outcome: Result<RowResult, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub dataset_fingerprint: String,
    pub dim: usize,
    pub samples: usize,
    pub classes: usize,
    pub repeats: usize,
}

fn basis_fingerprint(s: &FeatureSubspace) -> String {
    let mut h = Sha256::new();
    h.update((s.basis.rows() as u64).to_le_bytes());
    h.update((s.basis.cols() as u64).to_le_bytes());
    for v in s.basis.as_slice() {
        h.update(v.to_bits().to_le_bytes());
    }
    hex::encode(h.finalize())
}

/// Fits one method; `p` is used exactly as given.
fn fit(
    method: Method,
    train: &LabeledDataset,
    cfg: &BenchConfig,
    p: usize,
) -> Result<FeatureSubspace, Error> {
    match method {
        Method::Pca => fit_pca(train, p),
        Method::Fisher => fit_fisher(
            train,
            cfg.m.unwrap_or(train.num_classes().saturating_sub(1)),
        ),
        Method::Dlda => fit_dlda(train, cfg.rule, cfg.m, cfg.discarded_w),
        Method::Dpca => fit_dpca(
            train,
            &DpcaParams {
                p,
                m: cfg.m,
                discarded_w: cfg.discarded_w,
                rule: cfg.rule,
            },
        ),
    }
}

/// Fits with `cfg.p`, retrying once at the numerical rank if that is lower.
fn fit_capped(
    method: Method,
    train: &LabeledDataset,
    cfg: &BenchConfig,
) -> Result<(FeatureSubspace, usize), Error> {
    match fit(method, train, cfg, cfg.p) {
        Err(Error::RankExceeded { rank, .. }) if rank >= 1 => {
            fit(method, train, cfg, rank).map(|s| (s, rank))
        }
        other => other.map(|s| (s, cfg.p)),
    }
}

fn run_row(
    method: Method,
    l: usize,
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &BenchConfig,
) -> BenchRow {
    let mut row = BenchRow {
        method,
        l,
        p: None,
        m: None,
        discarded_w: None,
        rule: None,
        seed: cfg.seed,
        outcome: Err(String::new()),
    };
    let first = fit_capped(method, train, cfg).and_then(|(s, p)| {
        let acc = evaluate(&s, train, test)?;
        Ok((s, p, acc))
    });
    let (subspace, p, accuracy) = match first {
        Ok(v) => v,
        Err(e) => {
            row.outcome = Err(e.to_string());
            return row;
        }
    };
    row.p = subspace.params.p.map(|_| p);
    row.m = subspace.params.m;
    row.discarded_w = subspace.params.discarded_w;
    row.rule = subspace.params.rule;

    let mut total = 0.0;
    for _ in 0..cfg.repeats {
        let start = Instant::now();
        let timed = fit(method, train, cfg, p).and_then(|s| evaluate(&s, train, test));
        total += start.elapsed().as_secs_f64();
        if let Err(e) = timed {
            row.outcome = Err(e.to_string());
            return row;
        }
    }
    row.outcome = Ok(RowResult {
        accuracy,
        mean_time_s: total / cfg.repeats as f64,
        basis_fingerprint: basis_fingerprint(&subspace),
    });
    row
}

fn load(source: &DataSource) -> Result<LabeledDataset, Error> {
    match source {
        DataSource::Path(p) => load_path(p),
        DataSource::Synth(spec) => synth_faces(spec),
        DataSource::Dataset(d) => Ok(d.clone()),
    }
}

/// Methods in canonical order without duplicates.
fn canonical_methods(methods: &[Method]) -> Vec<Method> {
    let mut out = methods.to_vec();
    out.sort();
    out.dedup();
    out
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate().map_err(BenchError::at(Stage::Config))?;
    let data = load(&cfg.data).map_err(BenchError::at(Stage::Dataset))?;

    let mut l_values = cfg.l_values.clone();
    l_values.sort_unstable();
    l_values.dedup();
    let mut splits = Vec::with_capacity(l_values.len());
    for &l in &l_values {
        let spec = match cfg.split {
            SplitKind::First => SplitSpec::first(l),
            SplitKind::Random => SplitSpec::seeded(l, cfg.seed),
        };
        splits.push(split(&data, spec).map_err(BenchError::at(Stage::Split))?);
    }

    let mut rows = Vec::new();
    for method in canonical_methods(&cfg.methods) {
        for (&l, (train, test)) in l_values.iter().zip(&splits) {
            rows.push(run_row(method, l, train, test, cfg));
        }
    }
    Ok(BenchReport {
        rows,
        dataset_fingerprint: data.fingerprint(),
        dim: data.dim(),
        samples: data.len(),
        classes: data.num_classes(),
        repeats: cfg.repeats,
    })
}
