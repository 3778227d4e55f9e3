use hamming_smoothing::codes::{hamming, random_linear, reed_muller, Code, DistanceDistribution, LinearCode};
use hamming_smoothing::decoding::{
    asymptotic_bound, ball_counts, dense_energy, list_error_bound, list_error_bound_opt, mc_decoding_error,
    potential_energy, tail_probability, tail_probability_exact,
};
use hamming_smoothing::hypercube::{ball_volume, weight};
use hamming_smoothing::kernels::Kernel;
use hamming_smoothing::scalar::rational_to_f64;
use hamming_smoothing::smoothing::l2_closed_form;
use hamming_smoothing::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn dist(c: &LinearCode) -> DistanceDistribution {
    Code::from(c.clone()).distance_distribution().unwrap()
}

#[test]
fn singleton_code_has_no_energy() {
    let d = dist(&LinearCode::zero(12).unwrap());
    let b = list_error_bound(&d, 0.1, 1, 4, 1).unwrap();
    assert_eq!(b.energy_term, 0.0);
    assert_eq!(b.total, b.tail_term);
    let a = asymptotic_bound(&dist(&LinearCode::zero(20).unwrap()), 0.05, 1, 0.6).unwrap();
    assert_eq!(a.stated.energy_term, 0.0);
}

#[test]
fn radius_ordering_is_enforced() {
    let d = dist(&hamming(3).unwrap());
    assert!(list_error_bound(&d, 0.1, 1, 2, 2).is_err());
    assert!(list_error_bound(&d, 0.1, 1, 2, 0).is_err());
    assert!(list_error_bound(&d, 0.1, 1, 7, 3).is_err());
    assert!(list_error_bound(&d, 0.1, 0, 3, 1).is_err());
    assert!(list_error_bound(&d, 0.5, 1, 3, 1).is_err());
    assert!(list_error_bound_opt(&d, 0.1, 1, 1).is_err());
}

#[test]
fn bound_total_is_sum_and_monotone_in_list() {
    let d = dist(&reed_muller(1, 4).unwrap());
    let mut last = f64::INFINITY;
    for l in 1..=8 {
        let b = list_error_bound(&d, 0.05, l, 4, 1).unwrap();
        assert_eq!(b.total, b.energy_term + b.tail_term);
        assert!(b.total <= last);
        last = b.total;
    }
}

#[test]
fn hamming_bound_dominates_monte_carlo() {
    let code = hamming(3).unwrap();
    let d = dist(&code);
    let b = list_error_bound_opt(&d, 0.01, 1, 2).unwrap();
    assert!(b.total.is_finite() && b.t_prime == 1);
    let mc = mc_decoding_error(&code, 0.01, 1, 2, 50_000, 3).unwrap();
    assert!(b.total >= mc.mean - 3.0 * mc.std_error);
}

#[test]
fn mc_trivial_cases() {
    let code = hamming(3).unwrap();
    assert_eq!(mc_decoding_error(&code, 0.0, 1, 1, 1000, 1).unwrap().mean, 0.0);
    assert_eq!(mc_decoding_error(&code, 0.3, 16, 7, 1000, 1).unwrap().mean, 0.0);
    let a = mc_decoding_error(&code, 0.2, 1, 1, 1000, 9).unwrap();
    let b = mc_decoding_error(&code, 0.2, 1, 1, 1000, 9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn asymptotic_examples() {
    let a = asymptotic_bound(&dist(&random_linear(18, 6, 0).unwrap()), 0.05, 1, 0.6).unwrap();
    assert!(a.stated.total.is_finite());
    assert_eq!(a.stated.total, a.stated.energy_term + a.stated.tail_term);
    assert!(a.stated.t_prime <= 0 && a.exact_tail_total.is_none());
    assert!(asymptotic_bound(&dist(&hamming(3).unwrap()), 0.1, 1, 0.4).is_err());
}

#[test]
fn exact_tail_never_exceeds_stated_tail() {
    // large enough that t′ > 0 and t < n
    for (n, delta) in [(200usize, 0.3f64), (400, 0.4)] {
        // the tails do not depend on the code; a lone codeword suffices
        let mut a = vec![Rational::zero(); n + 1];
        a[0] = Rational::from_integer(1.into());
        let d = DistanceDistribution::new(n, a).unwrap();
        let b = asymptotic_bound(&d, delta, 1, 0.6).unwrap();
        let exact = b.exact_tail_total.expect("t' > 0");
        assert!(exact <= b.stated.total, "{exact} vs {}", b.stated.total);
    }
}

#[test]
fn tails_match_exact_rationals() {
    let delta = Rational::new(1.into(), 10.into());
    for n in 3..=30 {
        for t in 2..n {
            for tp in [1, t / 2, t - 1] {
                if tp == 0 || tp >= t {
                    continue;
                }
                let f = tail_probability(n, 0.1, tp, t);
                let e = rational_to_f64(&tail_probability_exact(n, &delta, tp, t));
                assert!((f - e).abs() <= 1e-13 * e.max(1e-300), "n={n} t={t} t'={tp}");
            }
        }
    }
}

#[test]
fn energy_matches_dense_oracle_and_l2() {
    for (n, k, seed) in [(8usize, 3usize, 1u64), (10, 4, 2), (12, 5, 3), (12, 7, 4)] {
        let code = random_linear(n, k, seed).unwrap();
        let d = dist(&code);
        for t in 0..=n {
            let e = potential_energy(&d, t).unwrap();
            assert_eq!(e, Rational::from_integer(dense_energy(&code, t).unwrap()));
            // Σ_{w≥1} μ_t(w) A_w = (|C| V_t² / 2^n) ‖2^n T_{b_t} f_C‖² - V_t
            let vt = Rational::from_integer(ball_volume(n, t).unwrap());
            let l2 = l2_closed_form(&d, &Kernel::ball(n, t).unwrap()).unwrap();
            let size = Rational::from_integer(BigInt::from(code.size()));
            let via = size * &vt * &vt / Rational::from_integer(BigInt::from(1u64 << n)) * l2 - &vt;
            assert_eq!(e, via);
        }
    }
}

#[test]
fn ball_counts_by_enumeration() {
    let code = random_linear(9, 3, 5).unwrap();
    let words = code.codewords().unwrap();
    for t in 0..=9 {
        let counts = ball_counts(&code, t).unwrap();
        for y in 0u32..1 << 9 {
            let direct = words.iter().filter(|&&c| weight(c ^ y) <= t).count() as u64;
            assert_eq!(counts[y as usize], direct);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn bound_dominates_mc_on_random_codes(n in 6usize..=12, kf in 0.0f64..0.6, seed in any::<u64>(), di in 1usize..=3) {
        let k = 1 + ((n - 1) as f64 * kf) as usize;
        let code = random_linear(n, k, seed).unwrap();
        let delta = di as f64 * 0.05;
        let b = list_error_bound_opt(&dist(&code), delta, 2, 3).unwrap();
        let mc = mc_decoding_error(&code, delta, 2, 3, 4000, seed).unwrap();
        prop_assert!(b.total >= mc.mean - 3.0 * mc.std_error);
    }
}
