//! Divergence of a noisy code against the erasure entropy of its dual.

use hamming_smoothing::codes::reed_muller;
use hamming_smoothing::erasure::{erasure_lambda, smoothing_erasure_report};

fn main() -> hamming_smoothing::Result<()> {
    let code = reed_muller(1, 4)?;
    for delta in [0.05, 0.1, 0.2] {
        for alpha in [1.0, 2.0, 3.0, f64::INFINITY] {
            let r = smoothing_erasure_report(&code, delta, alpha)?;
            println!(
                "delta={delta:<5} alpha={alpha:<4} lambda={:.4}  D={:.5} <= H={:.5}  {}",
                erasure_lambda(alpha, delta)?,
                r.lhs,
                r.rhs,
                r.verdict
            );
        }
    }
    Ok(())
}
