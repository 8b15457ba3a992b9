#![allow(dead_code)]

use dpca_core::{LabeledDataset, Matrix};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    Matrix::new(m.nrows(), m.ncols(), m.as_slice().to_vec()).unwrap()
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// Dataset with the given per-class counts and uniform random entries.
pub fn random_dataset(dim: usize, counts: &[usize], rng: &mut ChaCha8Rng) -> LabeledDataset {
    let n: usize = counts.iter().sum();
    let data = (0..dim * n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let labels = counts
        .iter()
        .enumerate()
        .flat_map(|(c, &k)| std::iter::repeat_n(c, k))
        .collect();
    LabeledDataset::new(Matrix::new(dim, n, data).unwrap(), labels).unwrap()
}

/// Orthonormal basis of the column span of `m` (thin QR).
pub fn orthonormal(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().qr().q()
}

/// Largest principal angle between the spans of two orthonormal bases of
/// equal width, from the sine side so small angles are resolved.
pub fn max_principal_angle(q1: &DMatrix<f64>, q2: &DMatrix<f64>) -> f64 {
    let residual = q2 - q1 * (q1.transpose() * q2);
    let sigma = residual
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max);
    sigma.min(1.0).asin()
}

/// Eigenpairs of a symmetric matrix sorted by descending eigenvalue.
pub fn sorted_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let e = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| e.eigenvalues[b].total_cmp(&e.eigenvalues[a]));
    let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| e.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Brute-force nearest neighbour accuracy on raw vectors.
pub fn raw_nn_accuracy(train: &LabeledDataset, test: &LabeledDataset) -> f64 {
    let mut correct = 0;
    for (j, &label) in test.labels().iter().enumerate() {
        let probe = test.samples().col(j);
        let mut best = (f64::MAX, usize::MAX);
        for (k, &tl) in train.labels().iter().enumerate() {
            let d: f64 = train
                .samples()
                .col(k)
                .iter()
                .zip(probe)
                .map(|(a, b)| (a - b).powi(2))
                .sum();
            if d < best.0 {
                best = (d, tl);
            }
        }
        if best.1 == label {
            correct += 1;
        }
    }
    correct as f64 / test.len() as f64
}
