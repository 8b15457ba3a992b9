//! Eigenfaces and the shared [`FeatureSubspace`] type.

use std::fmt;
use std::str::FromStr;

use crate::dataset::LabeledDataset;
use crate::eigencore::{gram, matmul, norm, sym_eig, t_matmul, Matrix};
use crate::error::{Error, Result};
use crate::scatter::{class_means, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Pca,
    Fisher,
    Dlda,
    Dpca,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pca => "pca",
            Method::Fisher => "fisher",
            Method::Dlda => "dlda",
            Method::Dpca => "dpca",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pca" => Ok(Method::Pca),
            "fisher" => Ok(Method::Fisher),
            "dlda" => Ok(Method::Dlda),
            "dpca" => Ok(Method::Dpca),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

/// Parameters a subspace was fitted with. Fields a method does not use are
/// `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SubspaceParams {
    pub p: Option<usize>,
    pub m: Option<usize>,
    pub discarded_w: Option<usize>,
    pub rule: Option<Rule>,
}

/// Projection basis with unit-norm columns, applied as `Y = basisᵀ · X`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSubspace {
    pub basis: Matrix,
    pub method: Method,
    /// Spectrum associated with each basis column.
    pub eigenvalues: Vec<f64>,
    pub params: SubspaceParams,
}

impl FeatureSubspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Eigenfaces through the dual trick.
///
/// With `A = (1/√MN)·[x_j − μ]`, the top eigenvectors `u_k` of the small
/// `n × n` matrix `AᵀA` map to eigenvectors `A·u_k` of `AAᵀ`, which are
/// normalised to form the basis. Labels are ignored.
pub fn fit_pca(d: &LabeledDataset, p: usize) -> Result<FeatureSubspace> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    let (mean, _) = class_means(d);
    let scale = 1.0 / (d.dim() as f64).sqrt();
    let mut a = d.samples().clone();
    for j in 0..a.cols() {
        for (v, mu) in a.col_mut(j).iter_mut().zip(&mean) {
            *v = (*v - mu) * scale;
        }
    }
    let small = gram(&a);
    let eig = sym_eig(&small)?;
    let rank = eig.rank();
    if rank == 0 {
        return Err(Error::DegenerateData("all samples are identical"));
    }
    if p > rank {
        return Err(Error::RankExceeded { requested: p, rank });
    }
    let top: Vec<usize> = (0..p).collect();
    let mut basis = matmul(&a, &eig.vectors.select_columns(&top))?;
    normalize_columns(&mut basis)?;
    Ok(FeatureSubspace {
        basis,
        method: Method::Pca,
        eigenvalues: eig.values[..p].to_vec(),
        params: SubspaceParams {
            p: Some(p),
            ..SubspaceParams::default()
        },
    })
}

/// Scales every column to unit length.
pub(crate) fn normalize_columns(m: &mut Matrix) -> Result<()> {
    for j in 0..m.cols() {
        let col = m.col_mut(j);
        let len = norm(col);
        if !len.is_finite() || len <= f64::MIN_POSITIVE {
            return Err(Error::DegenerateData("basis column has zero length"));
        }
        col.iter_mut().for_each(|v| *v /= len);
    }
    Ok(())
}

/// `Y = basisᵀ · samples`. Probes are not centred.
pub fn project(s: &FeatureSubspace, samples: &Matrix) -> Result<Matrix> {
    if samples.rows() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op: "project",
            left: s.basis.shape(),
            right: samples.shape(),
        });
    }
    t_matmul(&s.basis, samples)
}
