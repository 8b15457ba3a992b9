//! Between-class and within-class scatter, in pixel space and in the
//! Gram space of `ΩᵀΩ`, plus the mean and maximum normalisation rules.
//!
//! Neither scatter is normalised by class sizes:
//! `S_b = Σ_i (μ_i − μ)(μ_i − μ)ᵀ`, `S_w = Σ_i Σ_j (x_ij − μ_i)(x_ij − μ_i)ᵀ`.

use std::fmt;
use std::str::FromStr;

use crate::dataset::LabeledDataset;
use crate::eigencore::{gram, transpose, Matrix};
use crate::error::{Error, Result};

/// Largest pixel dimension for which ambient scatter is materialised.
pub const AMBIENT_LIMIT: usize = 512;
const DIVISOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rule {
    None,
    /// Divide each matrix by the mean of its own entries.
    #[default]
    Mean,
    /// Divide each matrix by its own largest entry.
    Max,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::None => "none",
            Rule::Mean => "mean",
            Rule::Max => "max",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Rule::None),
            "mean" => Ok(Rule::Mean),
            "max" => Ok(Rule::Max),
            other => Err(Error::InvalidParameter(format!(
                "unknown regularization rule `{other}` (expected none, mean or max)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterSpace {
    Ambient,
    Gram,
}

/// Which rule was applied and the divisors it used (`1.0` for none).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regularization {
    pub rule: Rule,
    pub sb_divisor: f64,
    pub sw_divisor: f64,
}

impl Regularization {
    const NONE: Self = Self {
        rule: Rule::None,
        sb_divisor: 1.0,
        sw_divisor: 1.0,
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPair {
    pub sb: Matrix,
    pub sw: Matrix,
    pub space: ScatterSpace,
    pub regularization: Regularization,
}

/// Global mean and the per-class means (one column per class).
pub fn class_means(d: &LabeledDataset) -> (Vec<f64>, Matrix) {
    column_block_means(d.samples(), d)
}

/// Means of `m`'s columns, overall and per class block of `d`.
fn column_block_means(m: &Matrix, d: &LabeledDataset) -> (Vec<f64>, Matrix) {
    let dim = m.rows();
    let mut global = vec![0.0; dim];
    let mut means = Matrix::zeros(dim, d.num_classes());
    for class in 0..d.num_classes() {
        let range = d.class_range(class);
        let inv = 1.0 / range.len() as f64;
        let dst = means.col_mut(class);
        for j in range {
            for (acc, v) in dst.iter_mut().zip(m.col(j)) {
                *acc += v;
            }
        }
        for (g, v) in global.iter_mut().zip(dst.iter_mut()) {
            *g += *v;
            *v *= inv;
        }
    }
    let inv_n = 1.0 / d.len() as f64;
    global.iter_mut().for_each(|v| *v *= inv_n);
    (global, means)
}

/// `Σ_k d_k d_kᵀ` over the columns of `deviations`, exactly symmetric.
fn outer_sum(deviations: &Matrix) -> Matrix {
    gram(&transpose(deviations))
}

/// Scatter of the columns of `m` (pixel space when `m = Ω`, Gram space when
/// `m = ΩᵀΩ`).
fn scatter_of(m: &Matrix, d: &LabeledDataset) -> (Matrix, Matrix) {
    let (global, means) = column_block_means(m, d);
    let mut between = means.clone();
    for c in 0..between.cols() {
        for (v, g) in between.col_mut(c).iter_mut().zip(&global) {
            *v -= g;
        }
    }
    let mut within = m.clone();
    for (j, &label) in d.labels().iter().enumerate() {
        let mean = means.col(label);
        for (v, mu) in within.col_mut(j).iter_mut().zip(mean) {
            *v -= mu;
        }
    }
    (outer_sum(&between), outer_sum(&within))
}

/// Pixel-space `S_b`, `S_w`. Limited to `dim <= 512`; beyond that use
/// [`gram_scatter`].
pub fn direct_scatter(d: &LabeledDataset) -> Result<ScatterPair> {
    if d.dim() > AMBIENT_LIMIT {
        return Err(Error::AmbientTooLarge {
            dim: d.dim(),
            limit: AMBIENT_LIMIT,
        });
    }
    let (sb, sw) = scatter_of(d.samples(), d);
    Ok(ScatterPair {
        sb,
        sw,
        space: ScatterSpace::Ambient,
        regularization: Regularization::NONE,
    })
}

/// Gram-space `S̃_b = Ωᵀ S_b Ω` and `S̃_w = Ωᵀ S_w Ω`, each `n × n` for `n`
/// samples.
///
/// The columns of `G = ΩᵀΩ` are `Ωᵀω_ij`, so their class-block means are
/// `Ωᵀμ_i` and the scatter of `G`'s columns is the conjugated scatter; no
/// pixel-space matrix is formed.
pub fn gram_scatter(d: &LabeledDataset) -> ScatterPair {
    let g = gram(d.samples());
    let (sb, sw) = scatter_of(&g, d);
    ScatterPair {
        sb,
        sw,
        space: ScatterSpace::Gram,
        regularization: Regularization::NONE,
    }
}

fn entry_mean(m: &Matrix) -> f64 {
    let n = m.as_slice().len();
    if n == 0 {
        return 0.0;
    }
    m.as_slice().iter().sum::<f64>() / n as f64
}

fn entry_max(m: &Matrix) -> f64 {
    m.as_slice()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Elementwise division of each matrix by its own mean or maximum entry.
pub fn regularize(s: ScatterPair, rule: Rule) -> Result<ScatterPair> {
    if s.regularization.rule != Rule::None {
        return Err(Error::InvalidParameter(format!(
            "scatter pair already regularized with rule {}",
            s.regularization.rule
        )));
    }
    let statistic: fn(&Matrix) -> f64 = match rule {
        Rule::None => return Ok(s),
        Rule::Mean => entry_mean,
        Rule::Max => entry_max,
    };
    let sb_divisor = statistic(&s.sb);
    let sw_divisor = statistic(&s.sw);
    for (which, value) in [("sb", sb_divisor), ("sw", sw_divisor)] {
        if value.is_nan() || value.abs() < DIVISOR_FLOOR {
            return Err(Error::DegenerateDivisor { which, value });
        }
    }
    Ok(ScatterPair {
        sb: s.sb.scaled(1.0 / sb_divisor),
        sw: s.sw.scaled(1.0 / sw_divisor),
        space: s.space,
        regularization: Regularization {
            rule,
            sb_divisor,
            sw_divisor,
        },
    })
}
