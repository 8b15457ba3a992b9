use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LabeledDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// First `l` samples of each class (in load order) train.
    FirstL,
    /// Each class is shuffled on its own ChaCha stream derived from the
    /// seed, then the first `l` train.
    SeededRandom(u64),
}

/// `l` training samples per class; the rest of each class is test data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub l: usize,
    pub strategy: SplitStrategy,
}

impl SplitSpec {
    pub fn first(l: usize) -> Self {
        Self {
            l,
            strategy: SplitStrategy::FirstL,
        }
    }

    pub fn seeded(l: usize, seed: u64) -> Self {
        Self {
            l,
            strategy: SplitStrategy::SeededRandom(seed),
        }
    }
}

/// Per-class train/test split. Both halves keep canonical class order and,
/// within a class, the original relative order of their columns.
pub fn split(d: &LabeledDataset, s: SplitSpec) -> Result<(LabeledDataset, LabeledDataset)> {
    if s.l == 0 {
        return Err(Error::InvalidParameter(
            "training count l must be >= 1".into(),
        ));
    }
    let mut train_idx = Vec::with_capacity(s.l * d.num_classes());
    let mut test_idx = Vec::with_capacity(d.len());
    let mut train_labels = Vec::with_capacity(train_idx.capacity());
    let mut test_labels = Vec::with_capacity(d.len());

    for class in 0..d.num_classes() {
        let range = d.class_range(class);
        if range.len() <= s.l {
            return Err(Error::NotEnoughSamples {
                class,
                have: range.len(),
                need: s.l,
            });
        }
        let mut members: Vec<usize> = range.collect();
        if let SplitStrategy::SeededRandom(seed) = s.strategy {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(class as u64);
            members.shuffle(&mut rng);
        }
        let (train, test) = members.split_at_mut(s.l);
        train.sort_unstable();
        test.sort_unstable();
        train_labels.extend(std::iter::repeat_n(class, train.len()));
        test_labels.extend(std::iter::repeat_n(class, test.len()));
        train_idx.extend_from_slice(train);
        test_idx.extend_from_slice(test);
    }

    let pick = |idx: &[usize], labels: Vec<usize>| {
        let sub = LabeledDataset::new(d.samples().select_columns(idx), labels)?;
        match d.class_names() {
            Some(names) => sub.with_class_names(names.to_vec()),
            None => Ok(sub),
        }
    };
    Ok((
        pick(&train_idx, train_labels)?,
        pick(&test_idx, test_labels)?,
    ))
}
