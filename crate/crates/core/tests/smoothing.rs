use hamming_smoothing::codes::{golay23, hamming, parity, random_linear, Code, ExplicitCode, LinearCode};
use hamming_smoothing::hypercube::{convolve_direct, DenseFunction};
use hamming_smoothing::kernels::{binary_renyi, Kernel};
use hamming_smoothing::smoothing::{
    capacity, capacity_curve, divergence_to_uniform, l2_ball_forms, l2_closed_form, l2_dual_form, lower_bound,
    lower_bound_report, perfect_kernel_search, pi_rate, smooth, smooth_exact, NoiseFamily,
};
use hamming_smoothing::Rational;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDERS: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, f64::INFINITY];

#[test]
fn full_space_smooths_to_uniform() {
    let code = Code::from(LinearCode::full(5).unwrap());
    for spec in ["bernoulli:0.1", "ball:2", "sphere:3"] {
        let k = Kernel::parse(5, spec).unwrap();
        assert_eq!(smooth::<Rational>(&code, &k).unwrap(), DenseFunction::uniform(5).unwrap());
        assert!(l2_closed_form(&code.distance_distribution().unwrap(), &k).unwrap().is_one());
    }
}

#[test]
fn hamming_ball_is_perfect() {
    let code = Code::from(hamming(3).unwrap());
    let k = Kernel::ball(7, 1).unwrap();
    assert_eq!(smooth::<Rational>(&code, &k).unwrap(), DenseFunction::uniform(7).unwrap());
    assert!(smooth_exact(&code, &k).unwrap().is_uniform());
    let d = code.distance_distribution().unwrap();
    assert!(l2_closed_form(&d, &k).unwrap().is_one());
    let (direct, dual) = l2_ball_forms(&d, 1).unwrap();
    assert!(direct.is_one() && dual.is_one());
}

#[test]
fn singleton_code_returns_kernel() {
    let code = Code::from(LinearCode::zero(6).unwrap());
    let k = Kernel::bernoulli_f64(6, 0.2).unwrap();
    assert_eq!(smooth::<Rational>(&code, &k).unwrap(), k.lift::<Rational>().unwrap());
}

#[test]
fn smoothing_matches_direct_convolution() {
    let code = Code::from(random_linear(8, 3, 4).unwrap());
    let k = Kernel::parse(8, "ball:2").unwrap();
    let direct = convolve_direct(&code.pmf::<Rational>().unwrap(), &k.lift::<Rational>().unwrap()).unwrap();
    assert_eq!(smooth::<Rational>(&code, &k).unwrap(), direct);
}

#[test]
fn uniform_has_zero_divergence() {
    let u = DenseFunction::<f64>::uniform(6).unwrap();
    for a in ORDERS {
        let r = divergence_to_uniform(&u, a).unwrap();
        assert!(r.d_alpha.abs() < 1e-12);
        if a != 0.0 {
            assert!((r.l_alpha.unwrap() - 1.0).abs() < 1e-12);
            assert!(r.dimensionless.unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn noiseless_code_max_divergence() {
    let code = Code::from(random_linear(10, 4, 1).unwrap());
    let f = code.pmf::<f64>().unwrap();
    let r = divergence_to_uniform(&f, f64::INFINITY).unwrap();
    assert!((r.d_alpha - 6.0).abs() < 1e-12);
}

#[test]
fn collision_divergence_matches_closed_form() {
    let code = Code::from(random_linear(10, 5, 3).unwrap());
    let k = Kernel::bernoulli_f64(10, 0.2).unwrap();
    let f = smooth::<f64>(&code, &k).unwrap();
    let r = divergence_to_uniform(&f, 2.0).unwrap();
    let d = code.distance_distribution().unwrap();
    let closed = l2_closed_form(&d, &k).unwrap();
    let closed_f = hamming_smoothing::scalar::rational_to_f64(&closed);
    // D_2 = log ‖2^n f‖_2²
    assert!((r.d_alpha - closed_f.log2()).abs() < 1e-10);
    let dense: f64 = f.values().iter().map(|v| (v * 1024.0).powi(2)).sum::<f64>() / 1024.0;
    assert!((dense - closed_f).abs() < 1e-10 * closed_f);
    assert_eq!(l2_dual_form(&d, &k).unwrap(), closed);
}

#[test]
fn report_fields_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let n = rng.gen_range(4..=10);
        let code = Code::from(random_linear(n, rng.gen_range(1..n), rng.gen()).unwrap());
        let k = Kernel::bernoulli_f64(n, rng.gen_range(0.02..0.4)).unwrap();
        let f = smooth::<f64>(&code, &k).unwrap();
        let mut last = -1.0;
        for a in ORDERS {
            let r = divergence_to_uniform(&f, a).unwrap();
            assert!(r.d_alpha >= -1e-12);
            assert!(r.d_alpha >= last - 1e-12, "D_α must not decrease in α");
            last = r.d_alpha;
            if let Some(d) = r.d_from_l() {
                assert!((d - r.d_alpha).abs() < 1e-12 * (1.0 + r.d_alpha), "{a}: {d} vs {}", r.d_alpha);
            }
        }
    }
}

#[test]
fn lower_bound_examples() {
    let k = Kernel::bernoulli_f64(6, 0.1).unwrap();
    for a in ORDERS {
        assert!(lower_bound(6, 1.0, &k, a).unwrap() <= 0.0);
    }
    let u = Kernel::bernoulli(6, Rational::new(1.into(), 2.into())).unwrap();
    let zero = Code::from(LinearCode::zero(6).unwrap());
    for a in ORDERS {
        assert!(lower_bound(6, 0.0, &u, a).unwrap().abs() < 1e-12);
        let r = lower_bound_report(&zero, &u, a).unwrap();
        assert!(r.passed());
        assert!(r.rhs.abs() < 1e-12);
    }
}

#[test]
fn lower_bound_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let code: Code = if rng.gen_bool(0.7) {
            random_linear(n, rng.gen_range(1..=n), rng.gen()).unwrap().into()
        } else {
            let m = rng.gen_range(1..=8);
            ExplicitCode::new(n, (0..m).map(|_| rng.gen_range(0..1u32 << n))).unwrap().into()
        };
        let spec = match rng.gen_range(0..3) {
            0 => format!("bernoulli:{}", rng.gen_range(1..50) as f64 / 100.0),
            1 => format!("ball:{}", rng.gen_range(0..=n)),
            _ => format!("sphere:{}", rng.gen_range(0..=n)),
        };
        let k = Kernel::parse(n, &spec).unwrap();
        let a = ORDERS[rng.gen_range(0..ORDERS.len())];
        let r = lower_bound_report(&code, &k, a).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn capacity_values() {
    let c = capacity(NoiseFamily::Bernoulli, 2.0, 0.25).unwrap();
    assert!((c - (1.0 + 0.625f64.log2())).abs() < 1e-15);
    for fam in [NoiseFamily::Bernoulli, NoiseFamily::Ball] {
        for a in [0.5, 1.0, 2.0, f64::INFINITY] {
            assert!(capacity(fam, a, 0.5).unwrap().abs() < 1e-15);
            assert_eq!(capacity(fam, a, 0.0).unwrap(), 1.0);
        }
    }
    assert_eq!(capacity(NoiseFamily::Bernoulli, 0.0, 0.1).unwrap(), 0.0);
    assert!(capacity(NoiseFamily::Ball, 1.0, 0.6).is_err());
    assert!((pi_rate(NoiseFamily::Bernoulli, 2.0, 0.1, None).unwrap() - binary_renyi(2.0, 0.1)).abs() < 1e-15);
    let v = pi_rate(NoiseFamily::Ball, 2.0, 0.25, Some(8)).unwrap();
    assert!((v - 37f64.log2() / 8.0).abs() < 1e-12);
}

#[test]
fn capacity_curves_stack() {
    for row in capacity_curve(51).unwrap() {
        assert!(row.s_inf >= row.s2 - 1e-15 && row.s2 >= row.shannon - 1e-15, "{row:?}");
        assert!(row.bec_dual >= row.shannon - 1e-15, "{row:?}");
    }
}

#[test]
fn perfect_kernels_for_perfect_codes() {
    let h = perfect_kernel_search(&Code::from(hamming(3).unwrap())).unwrap().unwrap();
    assert_eq!(h.kernel.profile().unwrap(), Kernel::ball(7, 1).unwrap().profile().unwrap());
    let g = perfect_kernel_search(&Code::from(golay23())).unwrap().unwrap();
    assert_eq!(g.kernel.profile().unwrap(), Kernel::ball(23, 3).unwrap().profile().unwrap());
    assert!(g.radius >= g.external_distance);
}

#[test]
fn perfect_kernel_respects_external_distance() {
    let even = Code::from(parity(4).unwrap());
    let p = perfect_kernel_search(&even).unwrap().unwrap();
    assert!(p.radius >= p.external_distance);
    assert!(smooth_exact(&even, &p.kernel).unwrap().is_uniform());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(3..=9);
        let code = Code::from(random_linear(n, rng.gen_range(1..n), rng.gen()).unwrap());
        if let Some(p) = perfect_kernel_search(&code).unwrap() {
            assert!(p.radius >= p.external_distance);
            assert!(smooth_exact(&code, &p.kernel).unwrap().is_uniform());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn l2_forms_agree(n in 2usize..=10, kf in 0.0f64..1.0, seed in any::<u64>(), t in 0usize..=10) {
        let k = 1 + ((n - 1) as f64 * kf) as usize;
        let t = t.min(n);
        let d = Code::from(random_linear(n, k, seed).unwrap()).distance_distribution().unwrap();
        let ball = Kernel::ball(n, t).unwrap();
        let closed = l2_closed_form(&d, &ball).unwrap();
        prop_assert_eq!(&l2_dual_form(&d, &ball).unwrap(), &closed);
        let (direct, dual) = l2_ball_forms(&d, t).unwrap();
        prop_assert_eq!(&direct, &closed);
        prop_assert_eq!(&dual, &closed);
    }
}
