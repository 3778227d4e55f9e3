//! Smoothing capacities of Bernoulli noise at orders 1, 2 and infinity.

use hamming_smoothing::smoothing::capacity_curve;

fn main() -> hamming_smoothing::Result<()> {
    println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "delta", "1-h", "S_2", "S_inf", "(1-2d)^2");
    for r in capacity_curve(11)? {
        println!("{:>6.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4}", r.delta, r.shannon, r.s2, r.s_inf, r.bec_dual);
    }
    Ok(())
}
