//! Finite-length checks for random codes with i.i.d. uniform codewords:
//! Monte Carlo estimates of `Q_n(α) = E‖2^n T_r f_C‖_α^α`, its recursive
//! upper bound, and the bound on `E‖2^n T_r f_C‖_∞`.

use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypercube::{binomial, walsh_hadamard};
use crate::kernels::Kernel;
use crate::mc::{run_trials, McEstimate};
use crate::smoothing::{kernel_spectrum_f64, MAX_FLOAT_N};

/// Entries of `2^n T_r f_C` below this count as zero when measuring support.
const SUPPORT_THRESHOLD: f64 = 1e-9;

/// An ensemble of `m` i.i.d. uniform codewords of length `n`, drawn with
/// repetition.
#[derive(Clone, Debug)]
pub struct EnsembleSpec {
    pub n: usize,
    pub m: u64,
    pub kernel: Kernel,
    pub trials: u64,
    pub seed: u64,
}

impl EnsembleSpec {
    /// `M = round(2^{nR})`, at least 1.
    pub fn from_rate(n: usize, rate: f64, kernel: Kernel, trials: u64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(invalid(format!("rate {rate} outside [0,1]")));
        }
        let m = (n as f64 * rate).exp2().round().max(1.0) as u64;
        Self::new(n, m, kernel, trials, seed)
    }

    pub fn new(n: usize, m: u64, kernel: Kernel, trials: u64, seed: u64) -> Result<Self> {
        if kernel.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: kernel.n() });
        }
        if m == 0 || trials == 0 {
            return Err(invalid("need at least one codeword and one trial"));
        }
        if n > MAX_FLOAT_N {
            return Err(Error::BudgetExceeded { what: "random-code smoothing", n, limit: MAX_FLOAT_N });
        }
        Ok(EnsembleSpec { n, m, kernel, trials, seed })
    }

    /// `log2(M)/n`.
    pub fn rate(&self) -> f64 {
        (self.m as f64).log2() / self.n as f64
    }
}

/// Unnormalized kernel transform at every point.
fn full_spectrum(kernel: &Kernel) -> Result<Vec<f64>> {
    let n = kernel.n();
    if kernel.is_radial() {
        let s = kernel_spectrum_f64(kernel)?;
        Ok((0u32..1 << n).map(|y| s[y.count_ones() as usize]).collect())
    } else {
        let mut k = kernel.lift::<f64>()?.into_values();
        walsh_hadamard(&mut k);
        Ok(k)
    }
}

/// `2^n T_r f_C` for one sampled code.
fn sample_smoothed(spec: &EnsembleSpec, spectrum: &[f64], rng: &mut impl Rng) -> Vec<f64> {
    let mut a = vec![0f64; 1 << spec.n];
    let w = 1.0 / spec.m as f64;
    let mask = (1u64 << spec.n) - 1;
    for _ in 0..spec.m {
        a[(rng.gen::<u64>() & mask) as usize] += w;
    }
    walsh_hadamard(&mut a);
    for (v, s) in a.iter_mut().zip(spectrum) {
        *v *= s;
    }
    walsh_hadamard(&mut a);
    a
}

/// `‖g‖_α^α` under the normalized measure; the support fraction at `α = 0`.
fn power_mean(g: &[f64], alpha: f64) -> f64 {
    let len = g.len() as f64;
    if alpha == 0.0 {
        return g.iter().filter(|v| **v > SUPPORT_THRESHOLD).count() as f64 / len;
    }
    g.iter().map(|v| v.max(0.0).powf(alpha)).sum::<f64>() / len
}

/// Monte Carlo estimate of `Q_n(α)`, `α ∈ [0, ∞)`.
pub fn qn_estimate(spec: &EnsembleSpec, alpha: f64) -> Result<McEstimate> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::UnsupportedOrder(crate::kernels::format_order(alpha)));
    }
    let spectrum = full_spectrum(&spec.kernel)?;
    Ok(run_trials(spec.trials, spec.seed, |rng| power_mean(&sample_smoothed(spec, &spectrum, rng), alpha)))
}

/// Monte Carlo estimate of `E‖2^n T_r f_C‖_∞`.
pub fn dinf_estimate(spec: &EnsembleSpec) -> Result<McEstimate> {
    let spectrum = full_spectrum(&spec.kernel)?;
    Ok(run_trials(spec.trials, spec.seed, |rng| {
        sample_smoothed(spec, &spectrum, rng).into_iter().fold(0.0, f64::max)
    }))
}

/// `E Q(2) = 1 + (2^{n - H_2(r)} - 1)/M` for i.i.d. codewords.
pub fn q2_exact(n: usize, m: u64, kernel: &Kernel) -> Result<f64> {
    let h2 = kernel.renyi_entropy(2.0)?;
    Ok(1.0 + ((n as f64 - h2).exp2() - 1.0) / m as f64)
}

/// Right side of the recursion for `Q_n(1 + p/q)` at `M = 2^{nR}`:
/// `Σ_k C(p,k) 2^{(nk/q)(1 - R - H_{1+k/q}(r)/n)} Q_n((p-k)/q)`, with
/// `Q_n(x) ≤ 1` for `x ≤ 1` closing the recursion.
pub fn qn_recursive_bound(n: usize, rate: f64, kernel: &Kernel, p: u64, q: u64) -> Result<f64> {
    if p == 0 || q == 0 {
        return Err(invalid("p and q must be positive"));
    }
    if kernel.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.n() });
    }
    let nf = n as f64;
    let exponents: Vec<f64> = (0..=p)
        .map(|k| {
            let h = kernel.renyi_entropy(1.0 + k as f64 / q as f64)?;
            Ok(k as f64 / q as f64 * (nf * (1.0 - rate) - h))
        })
        .collect::<Result<_>>()?;
    // memo[j] bounds Q_n(j/q) for 0 ≤ j ≤ p.
    let mut memo = vec![1.0f64; p as usize + 1];
    for j in (q + 1)..=p {
        let pp = j - q;
        memo[j as usize] = (0..=pp)
            .map(|k| {
                let c = binomial(pp as usize, k as usize).to_f64().unwrap_or(f64::INFINITY);
                c * exponents[k as usize].exp2() * memo[(pp - k) as usize]
            })
            .sum();
    }
    Ok((0..=p)
        .map(|k| {
            let c = binomial(p as usize, k as usize).to_f64().unwrap_or(f64::INFINITY);
            c * exponents[k as usize].exp2() * memo[(p - k) as usize]
        })
        .sum())
}

/// `1 + ε + 2^{2n - H_∞(r)} exp(-2ε² 2^{-[n(1-R) - H_∞(r)]})`.
pub fn dinf_bound(n: usize, rate: f64, kernel: &Kernel, eps: f64) -> Result<f64> {
    dinf_with(n, rate, kernel, eps, 1.0)
}

/// The same union-plus-concentration estimate with the Hoeffding exponent
/// for summands of range `‖2^n r‖_∞`, `2Mε²/‖2^n r‖_∞²`:
/// `1 + ε + 2^{2n - H_∞(r)} exp(-2ε² 2^{-[n(2-R) - 2H_∞(r)]})`.
pub fn dinf_bound_hoeffding(n: usize, rate: f64, kernel: &Kernel, eps: f64) -> Result<f64> {
    dinf_with(n, rate, kernel, eps, 2.0)
}

fn dinf_with(n: usize, rate: f64, kernel: &Kernel, eps: f64, range_power: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(invalid(format!("epsilon must be positive, got {eps}")));
    }
    let hinf = kernel.renyi_entropy(f64::INFINITY)?;
    let nf = n as f64;
    let log_front = 2.0 * nf - hinf;
    // log2 of M / ‖2^n r‖_∞^power
    let log_ratio = nf * rate - range_power * (nf - hinf);
    let inner = -2.0 * eps * eps * log_ratio.exp2();
    // Combine in the log domain so a vanishing exponential is not 0·∞.
    let tail = (log_front + inner / std::f64::consts::LN_2).exp2();
    Ok(1.0 + eps + tail)
}

fn minimize_eps(f: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=600 {
        let eps = (-12.0 + 0.05 * i as f64).exp2();
        let b = f(eps)?;
        if b < best.0 {
            best = (b, eps);
        }
    }
    Ok(best)
}

/// [`dinf_bound`] minimized over a logarithmic grid of `ε`.
pub fn dinf_bound_opt(n: usize, rate: f64, kernel: &Kernel) -> Result<(f64, f64)> {
    minimize_eps(|e| dinf_bound(n, rate, kernel, e))
}

/// [`dinf_bound_hoeffding`] minimized over the same grid.
pub fn dinf_bound_hoeffding_opt(n: usize, rate: f64, kernel: &Kernel) -> Result<(f64, f64)> {
    minimize_eps(|e| dinf_bound_hoeffding(n, rate, kernel, e))
}

/// Both sides of `(x+y)^{p/q} ≤ Σ_k C(p,k) x^{k/q} y^{(p-k)/q}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FractionalBinomial {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn fractional_binomial(x: f64, y: f64, p: u64, q: u64) -> FractionalBinomial {
    let e = 1.0 / q as f64;
    let lhs = (x + y).powf(p as f64 * e);
    let rhs = (0..=p)
        .map(|k| {
            let c = binomial(p as usize, k as usize).to_f64().unwrap_or(f64::INFINITY);
            c * x.powf(k as f64 * e) * y.powf((p - k) as f64 * e)
        })
        .sum();
    FractionalBinomial { lhs, rhs }
}
