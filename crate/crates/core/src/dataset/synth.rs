//! Seeded synthetic "faces": class clusters plus a strong class-independent
//! nuisance, standing in for illumination changes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::LabeledDataset;
use crate::eigencore::Matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Number of classes.
    pub c: usize,
    pub per_class: usize,
    /// Ambient dimension.
    pub ambient: usize,
    /// Radius of the sphere the class means are placed on.
    pub class_sep: f64,
    /// Standard deviation of the isotropic within-class noise.
    pub within_spread: f64,
    /// Trailing coordinates that carry the nuisance component.
    pub nuisance_dims: usize,
    /// Standard deviation of the nuisance component.
    pub nuisance_scale: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            c: 10,
            per_class: 10,
            ambient: 200,
            class_sep: 1.0,
            within_spread: 0.1,
            nuisance_dims: 1,
            nuisance_scale: 10.0,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidParameter(format!("synth spec: {m}")));
        if self.c == 0 || self.per_class == 0 || self.ambient == 0 {
            return fail("c, per_class and ambient must be >= 1");
        }
        if self.nuisance_dims >= self.ambient {
            return fail("nuisance_dims must leave at least one class coordinate");
        }
        for (name, v) in [
            ("class_sep", self.class_sep),
            ("within_spread", self.within_spread),
            ("nuisance_scale", self.nuisance_scale),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return fail(&format!("{name} must be finite and >= 0"));
            }
        }
        Ok(())
    }
}

/// Generates `c × per_class` samples, class-contiguous.
///
/// Class means are Gaussian directions scaled to `class_sep` in the leading
/// `ambient - nuisance_dims` coordinates. Each sample adds isotropic noise
/// of scale `within_spread` over all coordinates and an independent
/// `nuisance_scale` Gaussian on the trailing `nuisance_dims` coordinates,
/// drawn from the same distribution regardless of class.
pub fn synth_faces(spec: &SynthSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let signal = spec.ambient - spec.nuisance_dims;
    let mut normal = move || -> f64 { StandardNormal.sample(&mut rng) };

    let mut means = Vec::with_capacity(spec.c);
    for _ in 0..spec.c {
        let mut mean: Vec<f64> = (0..signal).map(|_| normal()).collect();
        let len = mean.iter().map(|v| v * v).sum::<f64>().sqrt();
        let factor = if len > 0.0 { spec.class_sep / len } else { 0.0 };
        mean.iter_mut().for_each(|v| *v *= factor);
        means.push(mean);
    }

    let n = spec.c * spec.per_class;
    let mut data = Vec::with_capacity(n * spec.ambient);
    let mut labels = Vec::with_capacity(n);
    for (class, mean) in means.iter().enumerate() {
        for _ in 0..spec.per_class {
            for i in 0..spec.ambient {
                let mut v = spec.within_spread * normal();
                match mean.get(i) {
                    Some(mu) => v += mu,
                    None => v += spec.nuisance_scale * normal(),
                }
                data.push(v);
            }
            labels.push(class);
        }
    }
    LabeledDataset::new(Matrix::new(spec.ambient, n, data)?, labels)
}

/// Reads a flat `key = value` description of a [`SynthSpec`]. Blank lines
/// and `#` comments are skipped; absent keys keep their defaults.
pub fn parse_synth_spec(text: &str) -> Result<SynthSpec> {
    let mut spec = SynthSpec::default();
    let mut seen: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
        if seen.contains(&key) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        let count = || {
            value
                .parse::<usize>()
                .map_err(|_| err(format!("`{key}` needs a count")))
        };
        let real = || {
            value
                .parse::<f64>()
                .map_err(|_| err(format!("`{key}` needs a number")))
        };
        match key {
            "c" => spec.c = count()?,
            "per_class" => spec.per_class = count()?,
            "ambient" => spec.ambient = count()?,
            "nuisance_dims" => spec.nuisance_dims = count()?,
            "class_sep" => spec.class_sep = real()?,
            "within_spread" => spec.within_spread = real()?,
            "nuisance_scale" => spec.nuisance_scale = real()?,
            "seed" => {
                spec.seed = value
                    .parse()
                    .map_err(|_| err(format!("`{key}` needs an unsigned integer")))?
            }
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
        seen.push(key);
    }
    spec.validate()?;
    Ok(spec)
}
