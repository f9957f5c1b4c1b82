//! Monte Carlo tolerance analysis of the success probability.
//!
//! Each run scales both wave-plate angles by independent factors drawn
//! uniformly from `[1 − spread, 1 + spread]`. Run `k` draws from its own
//! ChaCha stream `(seed, k)`, so results do not depend on evaluation order.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gate::{GateParams, Preset};

pub const DEFAULT_RUNS: usize = 5000;
pub const DEFAULT_SPREAD: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McConfig {
    /// Supplies the input state, target qubits and nominal angles
    /// ([`Preset::monte_carlo_params`]).
    pub preset: Preset,
    pub n_runs: usize,
    /// Fractional half-width of the angle perturbation.
    pub spread: f64,
    pub seed: u64,
}

impl McConfig {
    pub fn new(preset: Preset, seed: u64) -> Self {
        Self { preset, n_runs: DEFAULT_RUNS, spread: DEFAULT_SPREAD, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_runs == 0 {
            return Err(Error::InvalidConfig("n_runs must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.spread) {
            return Err(Error::InvalidConfig("spread must lie in [0, 1)"));
        }
        Ok(())
    }

    pub fn nominal_params(&self) -> GateParams {
        self.preset.monte_carlo_params()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McSample {
    pub params: GateParams,
    pub success_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McReport {
    pub preset: Preset,
    pub nominal: GateParams,
    pub spread: f64,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator; 0 for a single run).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub n_runs: usize,
    pub seed: u64,
}

/// Perturbed angles for run `index`.
pub fn perturbed_params(nominal: &GateParams, spread: f64, seed: u64, index: u64) -> GateParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut factor = || 1.0 + spread * (rng.gen::<f64>() * 2.0 - 1.0);
    let f1 = factor();
    let f2 = factor();
    nominal.scaled(f1, f2)
}

/// Every run's angles and success probability, in run order.
pub fn sample_success_probabilities(cfg: &McConfig) -> Result<Vec<McSample>> {
    cfg.validate()?;
    let input = cfg.preset.input();
    let targets = cfg.preset.targets();
    let nominal = cfg.nominal_params();
    (0..cfg.n_runs as u64)
        .map(|k| {
            let params = perturbed_params(&nominal, cfg.spread, cfg.seed, k);
            let success_probability = input.success_probability(&params, targets)?;
            Ok(McSample { params, success_probability })
        })
        .collect()
}

/// Summarizes samples with Welford's update.
pub fn summarize(cfg: &McConfig, samples: &[McSample]) -> McReport {
    let (mut mean, mut m2) = (0.0, 0.0);
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (k, s) in samples.iter().enumerate() {
        let x = s.success_probability;
        let delta = x - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (x - mean);
        min = min.min(x);
        max = max.max(x);
    }
    let n = samples.len();
    let std = if n > 1 { (m2 / (n - 1) as f64).max(0.0).sqrt() } else { 0.0 };
    McReport {
        preset: cfg.preset,
        nominal: cfg.nominal_params(),
        spread: cfg.spread,
        mean,
        std,
        min,
        max,
        n_runs: n,
        seed: cfg.seed,
    }
}

pub fn run_monte_carlo(cfg: &McConfig) -> Result<McReport> {
    let samples = sample_success_probabilities(cfg)?;
    Ok(summarize(cfg, &samples))
}
