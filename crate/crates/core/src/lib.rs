//! Linear feature extraction for face recognition.
//!
//! Three extractors share one small dense linear-algebra core:
//!
//! * [`pca::fit_pca`]: eigenfaces, computed through the `AᵀA` dual trick.
//! * [`lda::fit_dlda`]: Direct LDA performed on the Gram matrix `ΩᵀΩ` and
//!   lifted back to pixel space.
//! * [`dpca::fit_dpca`]: Discriminative PCA, the PCA of the centred
//!   discriminative matrix produced by Direct LDA.
//!
//! [`classify`] provides the nearest-neighbour recognition step,
//! [`dataset`] loads PGM image folders and generates synthetic faces, and
//! [`bench`] drives the accuracy/timing sweeps exposed by the `dpca` CLI.
//!
//! ```no_run
//! use dpca_core::{evaluate, fit_dpca, load_dataset, split, DpcaParams, SplitSpec};
//!
//! let data = load_dataset("faces")?;
//! let (train, test) = split(&data, SplitSpec::first(5))?;
//! let subspace = fit_dpca(&train, &DpcaParams { p: 20, ..DpcaParams::default() })?;
//! let accuracy = evaluate(&subspace, &train, &test)?;
//! # Ok::<(), dpca_core::Error>(())
//! ```

pub mod bench;
pub mod classify;
pub mod dataset;
pub mod dpca;
pub mod eigencore;
mod error;
pub mod lda;
pub mod pca;
pub mod scatter;

pub use classify::{evaluate, nn_classify, Gallery};
pub use dataset::{
    load_dataset, split, synth_faces, LabeledDataset, SplitSpec, SplitStrategy, SynthSpec,
};
pub use dpca::{fit_dpca, DpcaParams};
pub use eigencore::{matmul, sym_eig, transpose, EigenDecomposition, Matrix};
pub use error::{Error, Result};
pub use lda::{fit_dlda, fit_dlda_gram, fit_fisher, lift, DldaResult};
pub use pca::{fit_pca, project, FeatureSubspace, Method, SubspaceParams};
pub use scatter::{Regularization, Rule, ScatterPair, ScatterSpace};
