//! Discriminative PCA: principal components of the discriminative matrix
//! `W = Ω·W̃` produced by Gram-space Direct LDA.

use crate::dataset::LabeledDataset;
use crate::eigencore::{gram, matmul, sym_eig, Matrix};
use crate::error::{Error, Result};
use crate::lda::{fit_dlda_gram, lift, DldaResult};
use crate::pca::{normalize_columns, FeatureSubspace, Method, SubspaceParams};
use crate::scatter::{gram_scatter, regularize, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpcaParams {
    /// Number of discriminative principal components kept.
    pub p: usize,
    /// Direct LDA directions; `None` keeps every one left after discarding.
    pub m: Option<usize>,
    /// Largest within-class directions dropped by Direct LDA.
    pub discarded_w: usize,
    pub rule: Rule,
}

impl Default for DpcaParams {
    fn default() -> Self {
        Self {
            p: 1,
            m: None,
            discarded_w: 0,
            rule: Rule::Mean,
        }
    }
}

/// Gram scatter, regularisation, Direct LDA and the lift `W = Ω·W̃`.
pub fn discriminative_matrix(
    d: &LabeledDataset,
    rule: Rule,
    m: Option<usize>,
    discarded_w: usize,
) -> Result<(DldaResult, Matrix)> {
    let s = regularize(gram_scatter(d), rule)?;
    let r = fit_dlda_gram(&s, m, discarded_w)?;
    let w = lift(&r.w_tilde, d.samples())?;
    Ok((r, w))
}

/// PCA of the columns of `w` via the dual trick.
///
/// `Â = W − W̄` with `W̄` the mean column, `C_W = ÂᵀÂ / m`. The top `p`
/// eigenvectors `e_k` of `C_W` are lifted to `Â·e_k` and normalised, which
/// makes the returned columns orthonormal. Returns the basis and the
/// retained `C_W` eigenvalues.
pub fn principal_directions(w: &Matrix, p: usize) -> Result<(Matrix, Vec<f64>)> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    let m = w.cols();
    let mut centred = w.clone();
    let mut mean = vec![0.0; w.rows()];
    for col in w.columns() {
        for (acc, v) in mean.iter_mut().zip(col) {
            *acc += v;
        }
    }
    mean.iter_mut().for_each(|v| *v /= m as f64);
    for j in 0..m {
        for (v, mu) in centred.col_mut(j).iter_mut().zip(&mean) {
            *v -= mu;
        }
    }
    let cw = gram(&centred).scaled(1.0 / m as f64);
    let eig = sym_eig(&cw)?;
    let rank = eig.rank();
    if rank == 0 {
        return Err(Error::DegenerateData(
            "centred discriminative matrix is numerically zero",
        ));
    }
    if p > rank {
        return Err(Error::RankExceeded { requested: p, rank });
    }
    let top: Vec<usize> = (0..p).collect();
    let mut basis = matmul(&centred, &eig.vectors.select_columns(&top))?;
    normalize_columns(&mut basis)?;
    Ok((basis, eig.values[..p].to_vec()))
}

/// Feature subspace `Ξ` (`dim × p`, orthonormal columns) for `Y = ΞᵀΩ`.
pub fn fit_dpca(d: &LabeledDataset, params: &DpcaParams) -> Result<FeatureSubspace> {
    let (r, w) = discriminative_matrix(d, params.rule, params.m, params.discarded_w)?;
    let (basis, eigenvalues) = principal_directions(&w, params.p)?;
    Ok(FeatureSubspace {
        basis,
        method: Method::Dpca,
        eigenvalues,
        params: SubspaceParams {
            p: Some(params.p),
            m: Some(r.m()),
            discarded_w: Some(params.discarded_w),
            rule: Some(params.rule),
        },
    })
}
