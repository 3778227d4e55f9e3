//! Collision moments of random codes above the order-2 smoothing threshold.

use hamming_smoothing::kernels::{binary_renyi, Kernel};
use hamming_smoothing::random_coding::{q2_exact, qn_estimate, qn_recursive_bound, EnsembleSpec};

fn main() -> hamming_smoothing::Result<()> {
    let delta = 0.1;
    let rate = 1.0 - binary_renyi(2.0, delta) + 0.1;
    for n in [8usize, 12, 16] {
        let k = Kernel::bernoulli_f64(n, delta)?;
        let spec = EnsembleSpec::from_rate(n, rate, k.clone(), 500, 7)?;
        let est = qn_estimate(&spec, 2.0)?;
        println!(
            "n={n:<2} M={:<5} Q(2)={:.4}±{:.4}  exact={:.4}  bound={:.4}",
            spec.m,
            est.mean,
            est.std_error,
            q2_exact(n, spec.m, &k)?,
            qn_recursive_bound(n, spec.rate(), &k, 1, 1)?
        );
    }
    Ok(())
}
