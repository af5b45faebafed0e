//! Seeded stand-in for classifier output.
//!
//! Each example draws a latent risk `r ~ Beta(κ·rate, κ·(1 - rate))`, a label
//! `y ~ Bernoulli(r)` and a score `clamp(r + noise·N(0, 1), 0, 1)`. Scores are
//! therefore calibrated up to the noise, informative about the label, and
//! imperfect; groups with different base rates get different score
//! distributions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{Dataset, Group, ScoredExample};

/// Seed of the frozen reference fixture.
pub const REFERENCE_SEED: u64 = 2;

fn default_concentration() -> f64 {
    4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub size: usize,
    pub base_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    /// Group 0 then group 1.
    pub groups: [GroupSpec; 2],
    /// Standard deviation of the score noise.
    pub noise: f64,
    pub seed: u64,
    /// Beta concentration of the latent risk; larger means less separable.
    #[serde(default = "default_concentration")]
    pub concentration: f64,
}

impl SynthSpec {
    pub fn new(sizes: [usize; 2], base_rates: [f64; 2], noise: f64, seed: u64) -> Self {
        SynthSpec {
            groups: [0, 1].map(|g| GroupSpec {
                size: sizes[g],
                base_rate: base_rates[g],
            }),
            noise,
            seed,
            concentration: default_concentration(),
        }
    }

    /// The frozen recidivism-like reference fixture: equal group sizes,
    /// base rates 0.51 and 0.39, score noise 0.1.
    pub fn reference(size: usize) -> Self {
        SynthSpec::new(
            [size / 2, size - size / 2],
            [0.51, 0.39],
            0.1,
            REFERENCE_SEED,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (g, spec) in self.groups.iter().enumerate() {
            if spec.size == 0 {
                return Err(Error::config(
                    format!("groups[{g}].size"),
                    "must be at least 1",
                ));
            }
            if !(spec.base_rate > 0.0 && spec.base_rate < 1.0) {
                return Err(Error::config(
                    format!("groups[{g}].base_rate"),
                    "must lie strictly between 0 and 1",
                ));
            }
        }
        if !self.noise.is_finite() || self.noise < 0.0 {
            return Err(Error::config("noise", "must be finite and non-negative"));
        }
        if !self.concentration.is_finite() || self.concentration <= 0.0 {
            return Err(Error::config("concentration", "must be positive"));
        }
        Ok(())
    }
}

pub fn parse_synth_spec(text: &str) -> Result<SynthSpec> {
    let spec: SynthSpec = serde_json::from_str(text)?;
    spec.validate()?;
    Ok(spec)
}

/// Group 0 examples first, then group 1; ids are `g<group>-<n>`.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.noise).expect("validated noise");
    let mut examples = Vec::with_capacity(spec.groups.iter().map(|g| g.size).sum());
    for group in Group::BOTH {
        let gs = spec.groups[group.index()];
        let risk = Beta::new(
            spec.concentration * gs.base_rate,
            spec.concentration * (1.0 - gs.base_rate),
        )
        .expect("validated beta parameters");
        for n in 0..gs.size {
            let r: f64 = risk.sample(&mut rng);
            let label = rng.random::<f64>() < r;
            let score = (r + noise.sample(&mut rng)).clamp(0.0, 1.0);
            examples.push(ScoredExample::new(
                format!("g{}-{n}", group.index()),
                score,
                group,
                label,
            )?);
        }
    }
    Dataset::new(examples)
}
