//! Noisy ball code versus the strong-converse prediction `1 - h(δ⋆δ′)`.

use hamming_smoothing::kernels::binary_entropy;
use hamming_smoothing::smoothing::ball_code_divergence;

fn main() -> hamming_smoothing::Result<()> {
    let (delta, delta_prime) = (0.25f64, 0.25f64);
    let star = delta * (1.0 - delta_prime) + delta_prime * (1.0 - delta);
    let target = 1.0 - binary_entropy(star);
    println!("n,t,d_per_n,target,gap");
    for n in [8usize, 16, 24, 32, 64, 128, 256, 512, 1000] {
        let t = (delta_prime * n as f64).floor() as usize;
        let d = ball_code_divergence(n, t, delta)? / n as f64;
        println!("{n},{t},{d:.6},{target:.6},{:.6}", d - target);
    }
    Ok(())
}
