//! Fisher LDA for small pixel dimensions, and Direct LDA carried out on the
//! Gram-space scatter of `ΩᵀΩ` then lifted back with `W = Ω·W̃`.
//!
//! If `S̃_w = XᵀAX` and `S̃_b = XᵀBX` with `X`, `A` invertible, every
//! eigenvector `w̃` of `S̃_w⁻¹S̃_b` gives an eigenvector `Xw̃` of `A⁻¹B` with
//! the same eigenvalue; this is what makes the lift valid.

use crate::dataset::LabeledDataset;
use crate::eigencore::{matmul, sym_eig, t_matmul, transpose, Matrix};
use crate::error::{Error, Result};
use crate::pca::{normalize_columns, FeatureSubspace, Method, SubspaceParams};
use crate::scatter::{direct_scatter, gram_scatter, regularize, Rule, ScatterPair};

/// `n · s · 1e-12` with `s = max(λ_max, 1)`: the whitened between-class
/// scatter is the identity, so the within-class floor never drops below the
/// unit scale it is compared against.
fn within_floor(values: &[f64]) -> f64 {
    let lambda_max = values.iter().copied().fold(1.0_f64, f64::max);
    values.len() as f64 * lambda_max * 1e-12
}

/// Column `k` of `v` scaled by `factors[k]`.
fn scale_columns(v: &Matrix, factors: &[f64]) -> Matrix {
    let mut out = v.clone();
    for (k, &f) in factors.iter().enumerate() {
        out.col_mut(k).iter_mut().for_each(|x| *x *= f);
    }
    out
}

/// `Bᵀ M B`, symmetrised.
fn congruence(b: &Matrix, m: &Matrix) -> Result<Matrix> {
    Ok(t_matmul(b, &matmul(m, b)?)?.symmetrized())
}

/// Solves `B w = λ A w` for symmetric `B` and symmetric positive definite
/// `A`, by eigendecomposing `A^{-1/2} B A^{-1/2}`.
///
/// Returns eigenvalues in non-increasing order and the matching
/// eigenvectors, each scaled to unit Euclidean length (they are
/// `A`-orthogonal, not orthogonal).
pub fn generalized_eig(b: &Matrix, a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "generalized_eig",
            left: b.shape(),
            right: a.shape(),
        });
    }
    let ea = sym_eig(a)?;
    let tau = ea.tolerance();
    let min = ea.values.last().copied().unwrap_or(0.0);
    if min.is_nan() || min <= tau {
        return Err(Error::SingularWithinClass {
            min_eigenvalue: min,
        });
    }
    let inv_sqrt: Vec<f64> = ea.values.iter().map(|v| v.sqrt().recip()).collect();
    let half = scale_columns(&ea.vectors, &inv_sqrt);
    // A^{-1/2} = V Λ^{-1/2} Vᵀ
    let a_inv_sqrt = matmul(&half, &transpose(&ea.vectors))?.symmetrized();
    let reduced = congruence(&a_inv_sqrt, b)?;
    let er = sym_eig(&reduced)?;
    let mut w = matmul(&a_inv_sqrt, &er.vectors)?;
    normalize_columns(&mut w)?;
    Ok((er.values, w))
}

/// Fisher discriminant directions from pixel-space scatter: the top `m`
/// eigenvectors of `S_w⁻¹S_b`, unit length, with `m <= c − 1`.
///
/// Only practical for `dim <= 512`, and fails with
/// [`Error::SingularWithinClass`] whenever there are fewer samples than
/// pixels.
pub fn fit_fisher(d: &LabeledDataset, m: usize) -> Result<FeatureSubspace> {
    let s = direct_scatter(d)?;
    let available = d.num_classes().saturating_sub(1);
    if m == 0 || m > available {
        return Err(Error::MExceedsRange { m, available });
    }
    let (values, vectors) = generalized_eig(&s.sb, &s.sw)?;
    let keep: Vec<usize> = (0..m).collect();
    Ok(FeatureSubspace {
        basis: vectors.select_columns(&keep),
        method: Method::Fisher,
        eigenvalues: values[..m].to_vec(),
        params: SubspaceParams {
            m: Some(m),
            ..SubspaceParams::default()
        },
    })
}

/// Gram-space Direct LDA output.
#[derive(Debug, Clone, PartialEq)]
pub struct DldaResult {
    /// `W̃ = B′ Ê_w Λ̂_w^{-1/2}`, `n × m`.
    pub w_tilde: Matrix,
    /// Whitening of the between-class range, `B′ = Ê_b Λ̂_b^{-1/2}`.
    pub b_prime: Matrix,
    /// Between-class eigenvectors kept (eigenvalue above tolerance).
    pub kept_b: usize,
    /// Largest within-class directions dropped.
    pub discarded_w: usize,
    /// Kept `S̃_b` eigenvalues, non-increasing.
    pub between_eigenvalues: Vec<f64>,
    /// `Λ̂_w` before flooring, ascending.
    pub within_eigenvalues: Vec<f64>,
    /// Columns whose within-class eigenvalue was raised to the floor.
    pub floored: usize,
}

impl DldaResult {
    pub fn m(&self) -> usize {
        self.w_tilde.cols()
    }
}

/// Direct LDA on Gram-space scatter.
///
/// 1. Keep the eigenvectors of `S̃_b` with eigenvalue above tolerance and
///    whiten them: `B′ = Ê_b Λ̂_b^{-1/2}`, so `B′ᵀS̃_bB′ = I`.
/// 2. Diagonalise `B′ᵀS̃_wB′`, drop the `discarded_w` largest directions and
///    order the rest by ascending eigenvalue.
/// 3. Keep the first `m` (default: all remaining) and rescale by
///    `Λ̂_w^{-1/2}`, flooring near-null eigenvalues so the within-class null
///    space is kept instead of blowing up.
pub fn fit_dlda_gram(s: &ScatterPair, m: Option<usize>, discarded_w: usize) -> Result<DldaResult> {
    let eb = sym_eig(&s.sb)?;
    let tau_b = eb.tolerance();
    let kept_b = eb.values.iter().take_while(|&&v| v > tau_b).count();
    if kept_b == 0 {
        return Err(Error::EmptyBetweenClassRange);
    }
    let between_eigenvalues = eb.values[..kept_b].to_vec();
    let whiten: Vec<f64> = between_eigenvalues
        .iter()
        .map(|v| v.sqrt().recip())
        .collect();
    let keep: Vec<usize> = (0..kept_b).collect();
    let b_prime = scale_columns(&eb.vectors.select_columns(&keep), &whiten);

    let available = kept_b.saturating_sub(discarded_w);
    let m = m.unwrap_or(available);
    if m == 0 || m > available {
        return Err(Error::MExceedsRange { m, available });
    }

    let ew = sym_eig(&congruence(&b_prime, &s.sw)?)?;
    let floor = within_floor(&ew.values);
    // descending order reversed, skipping the discarded largest ones
    let order: Vec<usize> = (discarded_w..kept_b).rev().take(m).collect();
    let within_eigenvalues: Vec<f64> = order.iter().map(|&k| ew.values[k]).collect();
    let floored = within_eigenvalues.iter().filter(|&&v| v < floor).count();
    let rescale: Vec<f64> = within_eigenvalues
        .iter()
        .map(|&v| v.max(floor).sqrt().recip())
        .collect();
    let e_w = scale_columns(&ew.vectors.select_columns(&order), &rescale);
    let w_tilde = matmul(&b_prime, &e_w)?;

    Ok(DldaResult {
        w_tilde,
        b_prime,
        kept_b,
        discarded_w,
        between_eigenvalues,
        within_eigenvalues,
        floored,
    })
}

/// `W = Ω · W̃`, unnormalised.
pub fn lift(w_tilde: &Matrix, omega: &Matrix) -> Result<Matrix> {
    if omega.cols() != w_tilde.rows() {
        return Err(Error::DimensionMismatch {
            op: "lift",
            left: omega.shape(),
            right: w_tilde.shape(),
        });
    }
    matmul(omega, w_tilde)
}

/// Direct LDA as a standalone extractor: Gram scatter, regularisation,
/// [`fit_dlda_gram`], lift, and unit-length columns.
pub fn fit_dlda(
    d: &LabeledDataset,
    rule: Rule,
    m: Option<usize>,
    discarded_w: usize,
) -> Result<FeatureSubspace> {
    let s = regularize(gram_scatter(d), rule)?;
    let r = fit_dlda_gram(&s, m, discarded_w)?;
    let mut basis = lift(&r.w_tilde, d.samples())?;
    normalize_columns(&mut basis)?;
    Ok(FeatureSubspace {
        basis,
        method: Method::Dlda,
        params: SubspaceParams {
            p: None,
            m: Some(r.m()),
            discarded_w: Some(discarded_w),
            rule: Some(rule),
        },
        eigenvalues: r.within_eigenvalues,
    })
}
