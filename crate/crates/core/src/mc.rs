//! Seeded Monte Carlo with counter-based streams: trial `i` under seed `s`
//! always draws from the same generator, whatever the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    /// Summary of samples, reduced in order.
    pub fn from_samples(samples: &[f64]) -> Self {
        let m = samples.len();
        if m == 0 {
            return McEstimate { mean: f64::NAN, std_error: f64::NAN, trials: 0 };
        }
        let mean = samples.iter().sum::<f64>() / m as f64;
        let var = if m > 1 {
            samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1) as f64
        } else {
            0.0
        };
        McEstimate { mean, std_error: (var / m as f64).sqrt(), trials: m as u64 }
    }

    /// `mean ± k·σ` contains `value`.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs `trials` independent trials, possibly in parallel; per-trial values
/// are collected in index order and summed sequentially, so the result does
/// not depend on scheduling.
pub fn run_trials<F>(trials: u64, seed: u64, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(seed, i)))
        .collect();
    McEstimate::from_samples(&samples)
}

/// Sequential variant for trials that are themselves parallel.
pub fn run_trials_sequential<F>(trials: u64, seed: u64, mut f: F) -> McEstimate
where
    F: FnMut(&mut ChaCha8Rng) -> f64,
{
    let samples: Vec<f64> = (0..trials).map(|i| f(&mut trial_rng(seed, i))).collect();
    McEstimate::from_samples(&samples)
}
