//! The inequality and identity suite behind `smoothing verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{golay23, hamming, parity, random_linear, reed_muller, Code, LinearCode};
use crate::decoding::{list_error_bound_opt, mc_decoding_error, DecodingBound};
use crate::erasure::{
    bec_conditional_entropy, collision_count, expected_entropy, expected_log_norm, samorodnitsky_check,
    smoothing_erasure_report, ErasureContext, ErasureMode,
};
use crate::error::Result;
use crate::hypercube::DenseFunction;
use crate::kernels::{format_order, Kernel};
use crate::report::BoundReport;
use crate::smoothing::{lower_bound_report, smooth_exact};
use crate::wiretap::{leakage_direct, leakage_exact, secrecy_bound, NestedScheme};

/// Absolute tolerance for floating-point identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub quick: bool,
    pub seed: u64,
}

fn identity(name: String, a: f64, b: f64) -> BoundReport {
    BoundReport::new(name, (a - b).abs(), IDENTITY_TOLERANCE)
}

fn exact(name: String, holds: bool) -> BoundReport {
    BoundReport::with_recheck(name, 0.0, 0.0, || Some(holds))
}

/// Exact uniformity of `hamming(3)` under `ball(1)` and `golay23` under
/// `ball(3)`.
pub fn perfect_certificates() -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for (label, code, t) in [("hamming(3)", hamming(3)?, 1), ("golay23", golay23(), 3)] {
        let n = code.n();
        let e = smooth_exact(&Code::from(code), &Kernel::ball(n, t)?)?;
        out.push(exact(format!("perfect {label} ball:{t}"), e.is_uniform()));
    }
    Ok(out)
}

fn random_code(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> Result<LinearCode> {
    let n = rng.gen_range(n_lo..=n_hi);
    let k = rng.gen_range(1..n);
    random_linear(n, k, rng.gen())
}

/// `D_α(T_r f_C ‖ U_n) ≥ n(1-R) - H_α(r)` on random (code, kernel, order)
/// triples.
pub fn lower_bound_suite(count: usize, seed: u64) -> Result<Vec<BoundReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = [0.0, 0.5, 1.0, 2.0, 3.0, f64::INFINITY];
    (0..count)
        .map(|_| {
            let code = random_code(&mut rng, 6, 12)?;
            let n = code.n();
            let kernel = if rng.gen_bool(0.5) {
                Kernel::bernoulli_f64(n, rng.gen_range(0.01..0.5))?
            } else {
                Kernel::ball(n, rng.gen_range(0..=n / 2))?
            };
            let alpha = orders[rng.gen_range(0..orders.len())];
            lower_bound_report(&Code::from(code), &kernel, alpha)
        })
        .collect()
}

/// Smoothing against erasure entropy for `α ∈ {1, 2, 3, ∞}`.
pub fn erasure_suite(codes: usize, seed: u64) -> Result<Vec<BoundReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..codes {
        let code = random_code(&mut rng, 6, 14)?;
        for delta in [0.05, 0.1, 0.2] {
            for alpha in [1.0, 2.0, 3.0, f64::INFINITY] {
                out.push(smoothing_erasure_report(&code, delta, alpha)?);
            }
        }
    }
    Ok(out)
}

/// Both Samorodnitsky inequalities on random nonnegative functions, `n = 8`.
pub fn samorodnitsky_suite(count: usize, seed: u64) -> Result<Vec<BoundReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let f = DenseFunction::new(8, (0..256).map(|_| rng.gen::<f64>().powi(3)).collect())?;
        for delta in [0.1, 0.3] {
            for alpha in [1.0, 2.0, 3.0] {
                out.push(samorodnitsky_check(&f, delta, alpha)?);
            }
        }
    }
    Ok(out)
}

/// Nested pairs used by the secrecy checks: three Reed-Muller chains and
/// seven random chains.
pub fn nested_schemes(seed: u64) -> Result<Vec<NestedScheme>> {
    let mut out = vec![
        NestedScheme::new(reed_muller(1, 4)?, reed_muller(2, 4)?)?,
        NestedScheme::new(reed_muller(0, 4)?, reed_muller(1, 4)?)?,
        NestedScheme::new(reed_muller(1, 3)?, reed_muller(2, 3)?)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 10 {
        let outer = random_code(&mut rng, 6, 12)?;
        let ke = rng.gen_range(0..outer.k());
        let inner = LinearCode::from_rows(outer.n(), outer.rows()[..ke].iter().copied())?;
        out.push(NestedScheme::new(inner, outer)?);
    }
    Ok(out)
}

/// `I(M;Z) ≤ D(T_δ f_{C_e} ‖ U_n)`.
pub fn secrecy_suite(seed: u64) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for s in nested_schemes(seed)? {
        for de in [0.1, 0.3] {
            let leak = leakage_exact(&s, de)?;
            let bound = secrecy_bound(&s, de, 1.0)?;
            let name = format!("secrecy n={} ke={} kb={} de={de}", s.n(), s.inner().k(), s.outer().k());
            out.push(BoundReport::new(name, leak, bound));
        }
    }
    Ok(out)
}

/// The list-decoding bound with the best `(t, t′)` for a code.
pub fn best_decoding_bound(code: &LinearCode, delta: f64, list: u64) -> Result<DecodingBound> {
    let dist = Code::from(code.clone()).distance_distribution()?;
    let mut best: Option<DecodingBound> = None;
    for t in 2..code.n() {
        let b = list_error_bound_opt(&dist, delta, list, t)?;
        if best.as_ref().is_none_or(|x| b.total < x.total) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| crate::error::invalid("code too short for a list-decoding bound"))
}

/// Decoding bound against the Monte Carlo decoder at the same radius.
pub fn decoding_suite(trials: u64, seed: u64) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for (label, code) in [("hamming(3)", hamming(3)?), ("rm(1,4)", reed_muller(1, 4)?)] {
        for delta in [0.01, 0.05] {
            let b = best_decoding_bound(&code, delta, 1)?;
            let mc = mc_decoding_error(&code, delta, 1, b.t, trials, seed)?;
            let name = format!("decoding {label} d={delta} t={} t'={}", b.t, b.t_prime);
            out.push(BoundReport::new(name, mc.mean - 3.0 * mc.std_error, b.total));
        }
    }
    Ok(out)
}

/// Exact and floating-point identities.
pub fn identity_suite(seed: u64) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // (α/(α-1)) E log‖E(2^n f_C|Γ)‖_α against the erasure entropy.
    let mut chain_codes = vec![hamming(3)?];
    for _ in 0..3 {
        chain_codes.push(random_code(&mut rng, 6, 10)?);
    }
    for code in &chain_codes {
        let n = code.n();
        let f = Code::from(code.clone()).pmf::<f64>()?.scale(&(n as f64).exp2());
        for lambda in [0.2, 0.6] {
            let ctx = ErasureContext { code, lambda, mode: ErasureMode::Exact };
            let h = bec_conditional_entropy(&ctx)?.value;
            for alpha in [2.0, 3.0, 4.0] {
                let v = alpha / (alpha - 1.0) * expected_log_norm(&f, lambda, alpha)?;
                out.push(identity(format!("macwilliams n={n} k={} l={lambda} a={}", code.k(), format_order(alpha)), v, h));
            }
            out.push(identity(format!("macwilliams-ent n={n} k={} l={lambda}", code.k()), expected_entropy(&f, lambda)?, h));
        }
    }

    // D(P_{Z|M}‖U|P_M) = I(M;Z) + D(P_Z‖U).
    for s in nested_schemes(seed)?.into_iter().filter(|s| s.n() <= 14) {
        for de in [0.1, 0.3] {
            let m = leakage_direct(&s, de)?;
            let name = format!("decomposition n={} ke={} kb={} de={de}", s.n(), s.inner().k(), s.outer().k());
            out.push(identity(name, m.conditional_divergence, m.mutual_information + m.output_divergence));
            let name = format!("leakage paths n={} ke={} kb={} de={de}", s.n(), s.inner().k(), s.outer().k());
            out.push(identity(name, m.mutual_information, leakage_exact(&s, de)?));
        }
    }

    // F^C(Γ,0) 2^{|Γ|} = |C| F^{C⊥}(Γ^c,0).
    for _ in 0..10 {
        let code = random_code(&mut rng, 4, 14)?;
        let dual = code.dual();
        let n = code.n();
        let full = (1u32 << n) - 1;
        let holds = (0..64).all(|_| {
            let g = rng.gen::<u32>() & full;
            (collision_count(&code, g) << g.count_ones()) == code.size() * collision_count(&dual, full ^ g)
        });
        out.push(exact(format!("matroid n={n} k={}", code.k()), holds));
    }

    // parity(3): H(X_{rep(3)} | Y) = λ³.
    let p3 = parity(3)?;
    for i in 0..=20 {
        let lambda = i as f64 / 20.0;
        let h = bec_conditional_entropy(&ErasureContext { code: &p3, lambda, mode: ErasureMode::Exact })?.value;
        out.push(identity(format!("parity3 l={lambda}"), h, lambda.powi(3)));
    }
    Ok(out)
}

/// Every section, sized down when `quick`.
pub fn run_suite(cfg: SuiteConfig) -> Result<Vec<BoundReport>> {
    let (lb, er, sam, trials) = if cfg.quick { (30, 6, 10, 20_000) } else { (100, 25, 50, 100_000) };
    let mut out = perfect_certificates()?;
    out.extend(lower_bound_suite(lb, cfg.seed)?);
    out.extend(erasure_suite(er, cfg.seed)?);
    out.extend(samorodnitsky_suite(sam, cfg.seed)?);
    out.extend(secrecy_suite(cfg.seed)?);
    out.extend(decoding_suite(trials, cfg.seed)?);
    out.extend(identity_suite(cfg.seed)?);
    Ok(out)
}

/// Runs the lower-bound and erasure checks on user-supplied codes.
pub fn code_suite(codes: &[Code]) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for code in codes {
        let n = code.n();
        for alpha in [0.0, 1.0, 2.0, f64::INFINITY] {
            out.push(lower_bound_report(code, &Kernel::bernoulli_f64(n, 0.1)?, alpha)?);
        }
        if let (Some(c), true) = (code.as_linear(), n <= 16) {
            for alpha in [1.0, 2.0, f64::INFINITY] {
                out.push(smoothing_erasure_report(c, 0.1, alpha)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        let r = identity_suite(1).unwrap();
        assert!(r.iter().all(|x| x.passed()), "{:?}", r.iter().find(|x| !x.passed()));
    }

    #[test]
    fn small_sections_pass() {
        for r in lower_bound_suite(10, 2).unwrap().into_iter().chain(erasure_suite(2, 2).unwrap()) {
            assert!(r.passed(), "{r}");
        }
    }
}
