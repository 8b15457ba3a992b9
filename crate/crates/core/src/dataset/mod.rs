//! Labelled sample matrices: loading, splitting and synthetic generation.
//!
//! Images are flattened row-major (row 0 left to right, then row 1, ...)
//! into one column each. Classes are held contiguously in ascending label
//! order, which every fitting routine relies on.

mod interchange;
mod pgm;
mod split;
mod synth;

use std::ops::Range;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::eigencore::Matrix;
use crate::error::{Error, Result};

pub use interchange::{parse_csv, read_csv, to_csv, write_csv};
pub use pgm::{parse_pgm, PgmImage};
pub use split::{split, SplitSpec, SplitStrategy};
pub use synth::{parse_synth_spec, synth_faces, SynthSpec};

/// Sample matrix (one column per image) with per-column class labels in
/// canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    samples: Matrix,
    labels: Vec<usize>,
    counts: Vec<usize>,
    class_names: Option<Vec<String>>,
}

impl LabeledDataset {
    /// Wraps a sample matrix whose columns are already grouped by class in
    /// ascending label order, with every label in `0..c` present.
    pub fn new(samples: Matrix, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != samples.cols() {
            return Err(Error::InvalidDataset(format!(
                "{} labels for {} samples",
                labels.len(),
                samples.cols()
            )));
        }
        if labels.is_empty() {
            return Err(Error::InvalidDataset("no samples".into()));
        }
        if samples.rows() == 0 {
            return Err(Error::InvalidDataset("zero-dimensional samples".into()));
        }
        let mut counts: Vec<usize> = Vec::new();
        for (j, &label) in labels.iter().enumerate() {
            match label.cmp(&counts.len()) {
                std::cmp::Ordering::Equal => counts.push(1),
                std::cmp::Ordering::Less if label + 1 == counts.len() => counts[label] += 1,
                _ => {
                    return Err(Error::InvalidDataset(format!(
                        "label {label} at column {j} breaks contiguous ascending class order"
                    )))
                }
            }
        }
        Ok(Self {
            samples,
            labels,
            counts,
            class_names: None,
        })
    }

    /// Stably regroups columns by label, then validates as [`Self::new`].
    pub fn from_unordered(samples: Matrix, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != samples.cols() {
            return Self::new(samples, labels);
        }
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&j| labels[j]);
        let sorted_labels = order.iter().map(|&j| labels[j]).collect();
        Self::new(samples.select_columns(&order), sorted_labels)
    }

    pub fn with_class_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_classes() {
            return Err(Error::InvalidDataset(format!(
                "{} class names for {} classes",
                names.len(),
                self.num_classes()
            )));
        }
        self.class_names = Some(names);
        Ok(self)
    }

    pub fn samples(&self) -> &Matrix {
        &self.samples
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Samples per class.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn class_names(&self) -> Option<&[String]> {
        self.class_names.as_deref()
    }

    pub fn num_classes(&self) -> usize {
        self.counts.len()
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Ambient (pixel) dimension.
    pub fn dim(&self) -> usize {
        self.samples.rows()
    }

    /// Column range occupied by class `i`.
    pub fn class_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.counts[..i].iter().sum();
        start..start + self.counts[i]
    }

    /// SHA-256 over shape, labels and the bit patterns of every sample.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim() as u64).to_le_bytes());
        h.update((self.len() as u64).to_le_bytes());
        for &l in &self.labels {
            h.update((l as u64).to_le_bytes());
        }
        for v in self.samples.as_slice() {
            h.update(v.to_bits().to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Loads a class-per-subdirectory tree of PGM images.
///
/// Classes are subdirectories sorted by name; images inside each are sorted
/// by file name. Hidden entries (leading `.`) and loose files at the root
/// are ignored. Pixel values are kept as-is, without rescaling by `maxval`.
pub fn load_dataset(root: impl AsRef<Path>) -> Result<LabeledDataset> {
    let root = root.as_ref();
    let mut class_dirs = Vec::new();
    for entry in std::fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        let path = entry.path();
        if is_hidden(&path) {
            continue;
        }
        if path.is_dir() {
            class_dirs.push(path);
        }
    }
    class_dirs.sort();
    if class_dirs.is_empty() {
        return Err(Error::InvalidDataset(format!(
            "{} has no class subdirectories",
            root.display()
        )));
    }

    let mut shape: Option<(usize, usize)> = None;
    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut names = Vec::with_capacity(class_dirs.len());
    for (class, dir) in class_dirs.iter().enumerate() {
        let mut files = Vec::new();
        for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
            let path = entry.map_err(|e| Error::io(dir, e))?.path();
            if path.is_file() && !is_hidden(&path) {
                files.push(path);
            }
        }
        files.sort();
        if files.is_empty() {
            return Err(Error::EmptyClass(dir.clone()));
        }
        for file in files {
            let bytes = std::fs::read(&file).map_err(|e| Error::io(&file, e))?;
            let img = parse_pgm(&bytes).map_err(|e| match e {
                Error::UnsupportedFormat(msg) => {
                    Error::UnsupportedFormat(format!("{}: {msg}", file.display()))
                }
                other => other,
            })?;
            let got = (img.width, img.height);
            match shape {
                None => shape = Some(got),
                Some(expected) if expected != got => {
                    return Err(Error::MixedDimensions {
                        path: file,
                        expected,
                        got,
                    })
                }
                Some(_) => {}
            }
            data.extend(img.pixels.iter().map(|&p| f64::from(p)));
            labels.push(class);
        }
        names.push(
            dir.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
        );
    }
    let (w, h) = shape.expect("at least one image was read");
    let samples = Matrix::new(w * h, labels.len(), data)?;
    LabeledDataset::new(samples, labels)?.with_class_names(names)
}

/// A directory is loaded as an image tree, anything else as CSV.
pub fn load_path(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    if path.is_dir() {
        load_dataset(path)
    } else {
        read_csv(path)
    }
}

fn is_hidden(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with('.'))
}
