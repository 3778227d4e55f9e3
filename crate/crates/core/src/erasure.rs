//! Erasure side of smoothing: collision counts `F^C(Γ, 0)`, the conditional
//! entropy of a dual codeword seen through a binary erasure channel, the
//! bound of Bernoulli smoothing by that entropy, and direct checks of the
//! Samorodnitsky inequalities.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{Code, LinearCode};
use crate::error::{invalid, Error, Result};
use crate::hypercube::{convolve, DenseFunction};
use crate::kernels::{binary_renyi, format_order, Kernel};
use crate::mc::{run_trials, McEstimate};
use crate::report::BoundReport;
use crate::smoothing::{divergence_to_uniform, smooth};

/// Largest length for exact expectations over all `2^n` erasure patterns.
pub const MAX_EXACT_ERASURE_N: usize = 22;

/// Largest length for the dense Samorodnitsky checks.
pub const MAX_SUBSET_CHECK_N: usize = 12;

/// Number of codewords vanishing on `Γ`: `F^C(Γ, 0) = 2^{k - rank(G|_Γ)}`.
pub fn collision_count(code: &LinearCode, gamma: u32) -> u64 {
    1u64 << (code.k() - code.rank_on(gamma))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErasureMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

impl ErasureMode {
    /// `exact` or `mc:TRIALS`.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(ErasureMode::Exact),
            other => {
                let t = other
                    .strip_prefix("mc:")
                    .ok_or_else(|| invalid(format!("mode must be exact or mc:TRIALS, got {other:?}")))?;
                let trials: u64 = t.parse().map_err(|_| invalid(format!("bad trial count {t:?}")))?;
                if trials == 0 {
                    return Err(invalid("at least one trial is needed"));
                }
                Ok(ErasureMode::MonteCarlo { trials, seed })
            }
        }
    }
}

/// A code observed through `BEC(λ)`.
#[derive(Clone, Debug)]
pub struct ErasureContext<'a> {
    pub code: &'a LinearCode,
    pub lambda: f64,
    pub mode: ErasureMode,
}

/// Exact value or estimate of a conditional entropy, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyValue {
    pub value: f64,
    /// Standard error for Monte Carlo, `None` when exact.
    pub std_error: Option<f64>,
}

/// `H(X_{C⊥} | Y)` for a uniform dual codeword sent over `BEC(λ)`:
/// `E_{Γ∼λ}[|Γ| - rank(G|_Γ)]`, `Γ` the erased coordinates.
pub fn bec_conditional_entropy(ctx: &ErasureContext) -> Result<EntropyValue> {
    let lambda = ctx.lambda;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(invalid(format!("erasure probability {lambda} outside [0,1]")));
    }
    let code = ctx.code;
    match ctx.mode {
        ErasureMode::Exact => {
            let deficits = rank_deficit_by_size(code)?;
            Ok(EntropyValue { value: weighted_by_size(&deficits, lambda), std_error: None })
        }
        ErasureMode::MonteCarlo { trials, seed } => {
            let n = code.n();
            let est: McEstimate = run_trials(trials, seed, |rng| {
                let mut gamma = 0u32;
                for i in 0..n {
                    if rng.gen::<f64>() < lambda {
                        gamma |= 1 << i;
                    }
                }
                (gamma.count_ones() as usize - code.rank_on(gamma)) as f64
            });
            Ok(EntropyValue { value: est.mean, std_error: Some(est.std_error) })
        }
    }
}

/// `Σ_s S[s] λ^s (1-λ)^{n-s}`.
fn weighted_by_size(s: &[u64], lambda: f64) -> f64 {
    let n = s.len() - 1;
    s.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(k, &v)| v as f64 * lambda.powi(k as i32) * (1.0 - lambda).powi((n - k) as i32))
        .sum()
}

/// `S[s] = Σ_{|Γ| = s} (s - rank(G|_Γ))` over all subsets, by depth-first
/// search that inserts one column at a time into an echelon basis.
pub fn rank_deficit_by_size(code: &LinearCode) -> Result<Vec<u64>> {
    let n = code.n();
    if n > MAX_EXACT_ERASURE_N {
        return Err(Error::BudgetExceeded { what: "exact erasure expectation", n, limit: MAX_EXACT_ERASURE_N });
    }
    let columns: Vec<u32> = (0..n)
        .map(|i| {
            code.rows()
                .iter()
                .enumerate()
                .fold(0u32, |c, (j, &r)| c | ((r >> i & 1) << j))
        })
        .collect();
    // Shard on the first few coordinates; each shard owns its counters.
    let split = n.min(6);
    let shards: Vec<Vec<u64>> = (0u32..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut basis = [0u32; 32];
            let mut rank = 0usize;
            let mut size = 0usize;
            for (i, &col) in columns.iter().enumerate().take(split) {
                if prefix >> i & 1 == 1 {
                    size += 1;
                    if insert(&mut basis, col) {
                        rank += 1;
                    }
                }
            }
            let mut acc = vec![0u64; n + 1];
            dfs(&columns, split, basis, rank, size, &mut acc);
            acc
        })
        .collect();
    let mut total = vec![0u64; n + 1];
    for s in shards {
        for (t, v) in total.iter_mut().zip(s) {
            *t += v;
        }
    }
    Ok(total)
}

fn insert(basis: &mut [u32; 32], col: u32) -> bool {
    let mut v = col;
    while v != 0 {
        let h = 31 - v.leading_zeros() as usize;
        if basis[h] == 0 {
            basis[h] = v;
            return true;
        }
        v ^= basis[h];
    }
    false
}

fn dfs(columns: &[u32], i: usize, basis: [u32; 32], rank: usize, size: usize, acc: &mut [u64]) {
    if i == columns.len() {
        acc[size] += (size - rank) as u64;
        return;
    }
    dfs(columns, i + 1, basis, rank, size, acc);
    let mut with = basis;
    let grew = insert(&mut with, columns[i]);
    dfs(columns, i + 1, with, rank + grew as usize, size + 1, acc);
}

/// The erasure probability paired with order `α`: `(1-2δ)²` at `α = 1`,
/// `1 - h_α(δ)` at integers `α ≥ 2`, `1 + log(1-δ)` at `α = ∞`.
pub fn erasure_lambda(alpha: f64, delta: f64) -> Result<f64> {
    if alpha == 1.0 {
        Ok((1.0 - 2.0 * delta).powi(2))
    } else if alpha.is_infinite() || (alpha >= 2.0 && alpha.fract() == 0.0) {
        Ok(1.0 - binary_renyi(alpha, delta))
    } else {
        Err(Error::UnsupportedOrder(format_order(alpha)))
    }
}

/// `D_α(T_δ f_C ‖ U_n) ≤ H(X_{C⊥} | Y_{BEC(λ)})` with `λ` from
/// [`erasure_lambda`].
pub fn smoothing_erasure_report(code: &LinearCode, delta: f64, alpha: f64) -> Result<BoundReport> {
    smoothing_erasure_report_with(code, delta, alpha, ErasureMode::Exact)
}

pub fn smoothing_erasure_report_with(
    code: &LinearCode,
    delta: f64,
    alpha: f64,
    mode: ErasureMode,
) -> Result<BoundReport> {
    let lambda = erasure_lambda(alpha, delta)?;
    let n = code.n();
    let wrapped = Code::from(code.clone());
    let kernel = Kernel::bernoulli_f64(n, delta)?;
    let f = smooth::<f64>(&wrapped, &kernel)?;
    let lhs = divergence_to_uniform(&f, alpha)?.d_alpha;
    let h = bec_conditional_entropy(&ErasureContext { code, lambda, mode })?;
    // A Monte Carlo right side is judged at its upper 3σ edge.
    let rhs = h.value + 3.0 * h.std_error.unwrap_or(0.0);
    let name = format!("smoothing<=erasure n={n} k={} d={delta} a={}", code.k(), format_order(alpha));
    Ok(BoundReport::new(name, lhs, rhs))
}

/// `E(f | Γ)(x) = 2^{-(n-|Γ|)} Σ_{y : y|_Γ = x|_Γ} f(y)`: the average over
/// the coordinates outside `Γ`.
pub fn conditional_average(f: &DenseFunction<f64>, gamma: u32) -> DenseFunction<f64> {
    let n = f.n();
    let mut v = f.values().to_vec();
    for i in 0..n {
        if gamma >> i & 1 == 1 {
            continue;
        }
        let bit = 1usize << i;
        for x in 0..v.len() {
            if x & bit == 0 {
                let m = 0.5 * (v[x] + v[x | bit]);
                v[x] = m;
                v[x | bit] = m;
            }
        }
    }
    DenseFunction::new(n, v).expect("length preserved")
}

/// `Ent[f] = ‖f log f‖_1 - ‖f‖_1 log ‖f‖_1` under the normalized counting
/// measure, in bits.
pub fn entropy_functional(f: &DenseFunction<f64>) -> f64 {
    let scale = (f.n() as f64).exp2();
    let m1: f64 = f.values().iter().sum::<f64>() / scale;
    let flogf: f64 = f
        .values()
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| v * v.log2())
        .sum::<f64>()
        / scale;
    if m1 <= 0.0 {
        return 0.0;
    }
    flogf - m1 * m1.log2()
}

fn check_nonnegative(f: &DenseFunction<f64>) -> Result<()> {
    if f.values().iter().any(|v| *v < 0.0 || v.is_nan()) {
        return Err(invalid("function must be nonnegative"));
    }
    if f.n() > MAX_SUBSET_CHECK_N {
        return Err(Error::BudgetExceeded { what: "subset expectation", n: f.n(), limit: MAX_SUBSET_CHECK_N });
    }
    Ok(())
}

/// `E_{Γ∼λ} φ(E(f|Γ))` over all subsets.
fn subset_expectation(f: &DenseFunction<f64>, lambda: f64, phi: impl Fn(&DenseFunction<f64>) -> f64 + Sync) -> f64 {
    let n = f.n();
    let terms: Vec<f64> = (0u32..1 << n)
        .into_par_iter()
        .map(|gamma| {
            let s = gamma.count_ones() as i32;
            let w = lambda.powi(s) * (1.0 - lambda).powi(n as i32 - s);
            if w == 0.0 {
                0.0
            } else {
                w * phi(&conditional_average(f, gamma))
            }
        })
        .collect();
    terms.iter().sum()
}

/// `E_{Γ∼λ} Ent[E(f|Γ)]`.
pub fn expected_entropy(f: &DenseFunction<f64>, lambda: f64) -> Result<f64> {
    check_nonnegative(f)?;
    Ok(subset_expectation(f, lambda, entropy_functional))
}

/// `E_{Γ∼λ} log ‖E(f|Γ)‖_α`.
pub fn expected_log_norm(f: &DenseFunction<f64>, lambda: f64, alpha: f64) -> Result<f64> {
    check_nonnegative(f)?;
    Ok(subset_expectation(f, lambda, |g| g.norm(alpha).log2()))
}

/// One Samorodnitsky inequality for `f ≥ 0`: entropy form at `α = 1`
/// (`λ = (1-2δ)²`), norm form at integers `α ≥ 2` (`λ = 1 - h_α(δ)`) and at
/// `α = ∞` (`λ = 1 + log(1-δ)`).
pub fn samorodnitsky_check(f: &DenseFunction<f64>, delta: f64, alpha: f64) -> Result<BoundReport> {
    check_nonnegative(f)?;
    let lambda = erasure_lambda(alpha, delta)?;
    let n = f.n();
    let noise = Kernel::bernoulli_f64(n, delta)?.lift::<f64>()?;
    let tf = convolve(f, &noise)?;
    let (lhs, rhs) = if alpha == 1.0 {
        (entropy_functional(&tf), expected_entropy(f, lambda)?)
    } else {
        (tf.norm(alpha).log2(), expected_log_norm(f, lambda, alpha)?)
    };
    let name = format!("samorodnitsky n={n} d={delta} a={}", format_order(alpha));
    Ok(BoundReport::new(name, lhs, rhs))
}
