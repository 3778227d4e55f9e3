//! List-decoding error bound from the distance distribution, next to a
//! simulated decoder.

use hamming_smoothing::codes::{hamming, reed_muller};
use hamming_smoothing::decoding::mc_decoding_error;
use hamming_smoothing::verify::best_decoding_bound;

fn main() -> hamming_smoothing::Result<()> {
    for (label, code) in [("hamming(3)", hamming(3)?), ("rm(1,4)", reed_muller(1, 4)?)] {
        for delta in [0.01, 0.05] {
            let b = best_decoding_bound(&code, delta, 1)?;
            let mc = mc_decoding_error(&code, delta, 1, b.t, 100_000, 1)?;
            println!(
                "{label} delta={delta}: t={} t'={} bound={:.4} (energy {:.4}, tail {:.4})  simulated={:.4}±{:.4}",
                b.t, b.t_prime, b.total, b.energy_term, b.tail_term, mc.mean, mc.std_error
            );
        }
    }
    Ok(())
}
