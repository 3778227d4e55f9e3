//! List-decoding error on a binary symmetric channel: the energy bound in
//! terms of the distance distribution, its asymptotic form, and a Monte Carlo
//! decoder for comparison.

use std::num::Wrapping;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::codes::{DistanceDistribution, LinearCode};
use crate::error::{invalid, Result};
use crate::hypercube::{ball_volume, binomial, mu, walsh_hadamard, weight};
use crate::mc::{run_trials, McEstimate};
use crate::scalar::{rational_to_f64, Rational};

/// Largest length for which `F_t` is tabulated densely in the decoder.
pub const DENSE_DECODER_N: usize = 22;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodingBound {
    pub n: usize,
    pub delta: f64,
    pub list: u64,
    pub t: usize,
    pub t_prime: i64,
    pub energy_term: f64,
    pub tail_term: f64,
    pub total: f64,
}

/// `Σ_{w≥1} μ_t(w) A_w`.
pub fn potential_energy(dist: &DistanceDistribution, t: usize) -> Result<Rational> {
    let n = dist.n();
    let mut acc = Rational::zero();
    for w in 1..=n {
        let a = dist.get(w);
        if !a.is_zero() {
            acc += Rational::from_integer(mu(n, t, w)?) * a;
        }
    }
    Ok(acc)
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..0.5).contains(&delta) {
        return Err(invalid(format!("crossover probability {delta} outside [0, 1/2)")));
    }
    Ok(())
}

/// `δ^j (1-δ)^{n-j}`.
fn beta_point(n: usize, delta: f64, j: usize) -> f64 {
    delta.powi(j as i32) * (1.0 - delta).powi((n - j) as i32)
}

/// `Pr(|Y| ≤ t′) + Pr(|Y| ≥ t)` for `Y ∼ β_δ`, summed term by term.
pub fn tail_probability(n: usize, delta: f64, t_prime: usize, t: usize) -> f64 {
    (0..=n)
        .filter(|&j| j <= t_prime || j >= t)
        .map(|j| rational_to_f64(&Rational::from_integer(binomial(n, j))) * beta_point(n, delta, j))
        .sum()
}

/// [`tail_probability`] in exact arithmetic.
pub fn tail_probability_exact(n: usize, delta: &Rational, t_prime: usize, t: usize) -> Rational {
    let q = Rational::one() - delta;
    (0..=n)
        .filter(|&j| j <= t_prime || j >= t)
        .map(|j| Rational::from_integer(binomial(n, j)) * pow(delta, j) * pow(&q, n - j))
        .fold(Rational::zero(), |a, b| a + b)
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |a, _| a * x)
}

/// `P_{L,t} ≤ (β_δ(t′)/L) Σ_{w≥1} μ_t(w) A_w + Pr(|Y| ≤ t′) + Pr(|Y| ≥ t)`.
pub fn list_error_bound(dist: &DistanceDistribution, delta: f64, list: u64, t: usize, t_prime: usize) -> Result<DecodingBound> {
    let energy = rational_to_f64(&potential_energy(dist, t)?);
    bound_from_energy(dist.n(), energy, delta, list, t, t_prime)
}

fn bound_from_energy(n: usize, energy: f64, delta: f64, list: u64, t: usize, t_prime: usize) -> Result<DecodingBound> {
    check_delta(delta)?;
    if list == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    if !(0 < t_prime && t_prime < t && t < n) {
        return Err(invalid(format!("need 0 < t' < t < n, got t'={t_prime} t={t} n={n}")));
    }
    let energy_term = if energy == 0.0 { 0.0 } else { beta_point(n, delta, t_prime) / list as f64 * energy };
    let tail_term = tail_probability(n, delta, t_prime, t);
    Ok(DecodingBound {
        n,
        delta,
        list,
        t,
        t_prime: t_prime as i64,
        energy_term,
        tail_term,
        total: energy_term + tail_term,
    })
}

/// [`list_error_bound`] with `t′` chosen from `1..t` to minimize the total.
pub fn list_error_bound_opt(dist: &DistanceDistribution, delta: f64, list: u64, t: usize) -> Result<DecodingBound> {
    let energy = rational_to_f64(&potential_energy(dist, t)?);
    let mut best: Option<DecodingBound> = None;
    for tp in 1..t {
        let b = bound_from_energy(dist.n(), energy, delta, list, t, tp)?;
        if best.as_ref().is_none_or(|x| b.total < x.total) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| invalid(format!("no admissible t' below t={t}")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticBound {
    /// `√(2n)/(L V_t) ((1-δ)/δ)^{2n^θ} Σ μ_t(w) A_w + 2 e^{-n^{2θ-1}}`.
    pub stated: DecodingBound,
    /// Same energy term with the exact binomial tail; absent when `t′ ≤ 0`.
    pub exact_tail_total: Option<f64>,
}

/// `t = ⌈δn + n^θ⌉`, `t′ = ⌊δn - n^θ⌋`.
pub fn asymptotic_bound(dist: &DistanceDistribution, delta: f64, list: u64, theta: f64) -> Result<AsymptoticBound> {
    check_delta(delta)?;
    if !(theta > 0.5 && theta < 1.0) {
        return Err(invalid(format!("theta {theta} outside (1/2, 1)")));
    }
    if list == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    let n = dist.n();
    let nf = n as f64;
    let spread = nf.powf(theta);
    let t = (delta * nf + spread).ceil() as i64;
    let t_prime = (delta * nf - spread).floor() as i64;
    if t >= n as i64 {
        return Err(invalid(format!("induced radius t={t} is not below n={n}")));
    }
    let t = t as usize;
    let energy = rational_to_f64(&potential_energy(dist, t)?);
    let energy_term = if energy == 0.0 {
        0.0
    } else {
        let vt = rational_to_f64(&Rational::from_integer(ball_volume(n, t)?));
        let log_factor = 2.0 * spread * ((1.0 - delta) / delta).log2();
        (2.0 * nf).sqrt() / (list as f64 * vt) * log_factor.exp2() * energy
    };
    let tail_term = 2.0 * (-nf.powf(2.0 * theta - 1.0)).exp();
    let exact_tail_total = (t_prime > 0).then(|| energy_term + tail_probability(n, delta, t_prime as usize, t));
    Ok(AsymptoticBound {
        stated: DecodingBound {
            n,
            delta,
            list,
            t,
            t_prime,
            energy_term,
            tail_term,
            total: energy_term + tail_term,
        },
        exact_tail_total,
    })
}

/// `F_t(y) = |C ∩ B(y, t)|` for every `y`, via integer transforms.
pub fn ball_counts(code: &LinearCode, t: usize) -> Result<Vec<u64>> {
    let n = code.n();
    if n > DENSE_DECODER_N {
        return Err(crate::Error::BudgetExceeded { what: "dense ball counts", n, limit: DENSE_DECODER_N });
    }
    let size = 1usize << n;
    let mut c = vec![Wrapping(0i64); size];
    code.for_each_codeword(|w| c[w as usize] = Wrapping(1))?;
    let mut b: Vec<Wrapping<i64>> = (0..size as u32)
        .map(|x| Wrapping((weight(x) <= t) as i64))
        .collect();
    walsh_hadamard(&mut c);
    walsh_hadamard(&mut b);
    for (x, y) in c.iter_mut().zip(&b) {
        *x *= *y;
    }
    walsh_hadamard(&mut c);
    Ok(c.into_iter().map(|v| (v.0 >> n) as u64).collect())
}

/// Monte Carlo estimate of `Pr{F_t(Y) ≥ L+1 or |Y| > t}` with `0^n` sent.
pub fn mc_decoding_error(code: &LinearCode, delta: f64, list: u64, t: usize, trials: u64, seed: u64) -> Result<McEstimate> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(invalid(format!("crossover probability {delta} outside [0,1]")));
    }
    let n = code.n();
    let dense = if n <= DENSE_DECODER_N { Some(ball_counts(code, t)?) } else { None };
    let words = if dense.is_none() { Some(code.codewords()?) } else { None };
    Ok(run_trials(trials, seed, |rng| {
        let mut y = 0u32;
        for i in 0..n {
            if rng.gen::<f64>() < delta {
                y |= 1 << i;
            }
        }
        if weight(y) > t {
            return 1.0;
        }
        let count = match (&dense, &words) {
            (Some(d), _) => d[y as usize],
            (None, Some(w)) => w.iter().filter(|&&c| weight(c ^ y) <= t).count() as u64,
            _ => unreachable!(),
        };
        (count > list) as u8 as f64
    }))
}

/// `Σ_{y ∈ B(0,t)} (F_t(y) - 1)`, the dense form of the potential energy.
pub fn dense_energy(code: &LinearCode, t: usize) -> Result<BigInt> {
    let counts = ball_counts(code, t)?;
    Ok((0..counts.len() as u32)
        .filter(|&y| weight(y) <= t)
        .map(|y| BigInt::from(counts[y as usize]) - 1)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming, random_linear, Code};

    fn dist(c: &LinearCode) -> DistanceDistribution {
        Code::from(c.clone()).distance_distribution().unwrap()
    }

    #[test]
    fn singleton_has_tail_only() {
        let z = LinearCode::zero(10).unwrap();
        let b = list_error_bound(&dist(&z), 0.1, 1, 4, 1).unwrap();
        assert_eq!(b.energy_term, 0.0);
        assert_eq!(b.total, b.tail_term);
        let a = asymptotic_bound(&dist(&z), 0.1, 1, 0.6).unwrap();
        assert_eq!(a.stated.energy_term, 0.0);
    }

    #[test]
    fn energy_matches_dense_count() {
        for seed in 0..4 {
            let c = random_linear(11, 4, seed).unwrap();
            for t in 1..5 {
                let e = potential_energy(&dist(&c), t).unwrap();
                assert_eq!(e, Rational::from_integer(dense_energy(&c, t).unwrap()));
            }
        }
    }

    #[test]
    fn tail_matches_rational() {
        let d = Rational::new(3.into(), 40.into());
        for n in [10, 20, 30] {
            for (tp, t) in [(1, 3), (2, 9), (0, n)] {
                let f = tail_probability(n, 0.075, tp, t);
                let e = rational_to_f64(&tail_probability_exact(n, &d, tp, t));
                assert!((f - e).abs() <= 1e-14 * e.max(1e-300), "{n} {tp} {t}: {f} vs {e}");
            }
        }
    }

    #[test]
    fn monotone_in_list_size() {
        let d = dist(&random_linear(14, 5, 1).unwrap());
        let mut prev = f64::INFINITY;
        for l in 1..6 {
            let b = list_error_bound(&d, 0.05, l, 4, 1).unwrap();
            assert!(b.total <= prev);
            prev = b.total;
        }
    }

    #[test]
    fn radius_order_enforced() {
        let d = dist(&hamming(3).unwrap());
        assert!(list_error_bound(&d, 0.1, 1, 2, 2).is_err());
        assert!(list_error_bound(&d, 0.1, 1, 7, 2).is_err());
        assert!(list_error_bound(&d, 0.1, 1, 3, 0).is_err());
    }

    #[test]
    fn asymptotic_random_linear() {
        let d = dist(&random_linear(18, 6, 0).unwrap());
        let a = asymptotic_bound(&d, 0.05, 1, 0.6).unwrap();
        assert!(a.stated.total.is_finite());
        assert!(a.stated.t_prime <= 0);
        assert!(a.exact_tail_total.is_none());
        let d = dist(&random_linear(30, 3, 0).unwrap());
        let a = asymptotic_bound(&d, 0.3, 1, 0.55).unwrap();
        assert!(a.exact_tail_total.unwrap() <= a.stated.total);
    }

    #[test]
    fn mc_trivial_cases() {
        let c = hamming(3).unwrap();
        assert_eq!(mc_decoding_error(&c, 0.0, 1, 1, 500, 1).unwrap().mean, 0.0);
        assert_eq!(mc_decoding_error(&c, 0.3, 16, 7, 500, 1).unwrap().mean, 0.0);
    }

    #[test]
    fn mc_below_bound() {
        let c = hamming(3).unwrap();
        let b = list_error_bound_opt(&dist(&c), 0.01, 1, 2).unwrap();
        let m = mc_decoding_error(&c, 0.01, 1, 1, 20000, 3).unwrap();
        assert!(b.total >= m.mean - 3.0 * m.std_error);
    }
}
