//! Nearest-neighbour recognition in a projected feature space.

use crate::dataset::LabeledDataset;
use crate::eigencore::Matrix;
use crate::error::{Error, Result};
use crate::pca::{project, FeatureSubspace};

/// Projected training samples, one feature column per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Gallery {
    pub features: Matrix,
    pub labels: Vec<usize>,
}

impl Gallery {
    pub fn new(features: Matrix, labels: Vec<usize>) -> Result<Self> {
        if features.cols() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} gallery columns but {} labels",
                features.cols(),
                labels.len()
            )));
        }
        Ok(Self { features, labels })
    }

    pub fn from_dataset(s: &FeatureSubspace, train: &LabeledDataset) -> Result<Self> {
        Self::new(project(s, train.samples())?, train.labels().to_vec())
    }
}

/// Label of the gallery column closest to `probe` in Euclidean distance.
/// Ties go to the lowest column index.
pub fn nn_classify(g: &Gallery, probe: &[f64]) -> Result<usize> {
    if g.labels.is_empty() {
        return Err(Error::EmptyGallery);
    }
    if probe.len() != g.features.rows() {
        return Err(Error::DimensionMismatch {
            op: "nn_classify",
            left: g.features.shape(),
            right: (probe.len(), 1),
        });
    }
    let mut best = (f64::INFINITY, 0);
    for (j, col) in g.features.columns().enumerate() {
        let dist: f64 = col.iter().zip(probe).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist < best.0 {
            best = (dist, j);
        }
    }
    Ok(g.labels[best.1])
}

/// Fraction of `test` samples whose nearest projected training sample has
/// the right label.
pub fn evaluate(
    subspace: &FeatureSubspace,
    train: &LabeledDataset,
    test: &LabeledDataset,
) -> Result<f64> {
    let gallery = Gallery::from_dataset(subspace, train)?;
    let probes = project(subspace, test.samples())?;
    let mut correct = 0usize;
    for (probe, &label) in probes.columns().zip(test.labels()) {
        if nn_classify(&gallery, probe)? == label {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}
