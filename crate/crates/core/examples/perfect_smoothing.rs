//! Perfect codes are smoothed to exactly uniform by the ball kernel of their
//! covering radius; the kernel search recovers that kernel on its own.

use hamming_smoothing::codes::{golay23, hamming, parity, Code};
use hamming_smoothing::kernels::Kernel;
use hamming_smoothing::smoothing::{perfect_kernel_search, smooth_exact};

fn main() -> hamming_smoothing::Result<()> {
    for (label, code, t) in [("hamming(3)", hamming(3)?, 1), ("golay23", golay23(), 3)] {
        let n = code.n();
        let f = smooth_exact(&Code::from(code), &Kernel::ball(n, t)?)?;
        println!("{label} under ball:{t}: exactly uniform = {}", f.is_uniform());
    }
    for (label, code) in [("hamming(3)", hamming(3)?), ("golay23", golay23()), ("parity(4)", parity(4)?)] {
        match perfect_kernel_search(&Code::from(code))? {
            Some(p) => println!(
                "{label}: kernel {} (radius {}, covering radius {}, external distance {})",
                p.kernel, p.radius, p.covering_radius, p.external_distance
            ),
            None => println!("{label}: no nonnegative radial kernel"),
        }
    }
    Ok(())
}
