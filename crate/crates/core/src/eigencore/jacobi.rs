use super::matrix::Matrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-9;
const SIGN_THRESHOLD: f64 = 1e-12;
const RANK_FACTOR: f64 = 1e-12;

/// Eigenvalues in non-increasing order with matching unit eigenvectors as
/// columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// Zero-eigenvalue cutoff `n · λ_max · 1e-12`.
    pub fn tolerance(&self) -> f64 {
        rank_tolerance(&self.values)
    }

    /// Number of eigenvalues strictly above [`Self::tolerance`].
    pub fn rank(&self) -> usize {
        let tau = self.tolerance();
        self.values.iter().filter(|&&v| v > tau).count()
    }
}

/// Numerical-rank cutoff for a spectrum: `n · max(λ_max, 0) · 1e-12`.
pub fn rank_tolerance(values: &[f64]) -> f64 {
    let lambda_max = values.iter().copied().fold(0.0_f64, f64::max);
    values.len() as f64 * lambda_max * RANK_FACTOR
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Symmetry is checked entrywise against `1e-9 · max(1, max|a|)`; the input
/// is averaged with its transpose before iterating. Iteration stops once the
/// off-diagonal Frobenius norm falls to `1e-12 · ‖A‖_F` or after 100 sweeps.
/// Each eigenvector is signed so its first entry with magnitude above
/// `1e-12` is positive.
pub fn sym_eig(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "sym_eig",
            left: a.shape(),
            right: (a.cols(), a.rows()),
        });
    }
    if let Some(idx) = a.as_slice().iter().position(|v| !v.is_finite()) {
        return Err(Error::NotFinite {
            row: idx % a.rows(),
            col: idx / a.rows(),
        });
    }
    let (gap, row, col) = a.max_asymmetry();
    if gap > SYMMETRY_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { row, col, gap });
    }

    let n = a.rows();
    let mut work = a.symmetrized();
    let mut vectors = Matrix::identity(n);
    let target = OFF_DIAGONAL_TOL * work.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&work) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut work, &mut vectors, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps equal eigenvalues in sweep order
    order.sort_by(|&i, &j| work[(j, j)].total_cmp(&work[(i, i)]));

    let values: Vec<f64> = order.iter().map(|&i| work[(i, i)]).collect();
    let mut sorted = vectors.select_columns(&order);
    for k in 0..n {
        let col = sorted.col_mut(k);
        if let Some(first) = col.iter().find(|v| v.abs() > SIGN_THRESHOLD) {
            if *first < 0.0 {
                col.iter_mut().for_each(|v| *v = -*v);
            }
        }
    }

    Ok(EigenDecomposition {
        values,
        vectors: sorted,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// One plane rotation `A ← JᵀAJ`, `V ← VJ` annihilating `a[p,q]`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
