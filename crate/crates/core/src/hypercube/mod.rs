//! Primitives of the binary Hamming cube: words, dense functions on all
//! `2^n` points, the Walsh-Hadamard transform, Krawtchouk and Lloyd
//! polynomials, ball volumes and ball-intersection volumes.
//!
//! The forward transform carries the `2^{-n}` factor,
//! `f̂(y) = 2^{-n} Σ_x f(x) (-1)^{x·y}`, so norms taken with the normalized
//! counting measure line up with the rest of the crate. The inverse has no
//! factor.

mod dense;
mod krawtchouk;
mod radial;
mod transform;
mod word;

pub use dense::{Domain, DenseFunction};
pub use krawtchouk::{
    ball_volume, binomial, krawtchouk, lloyd, mu, mu_spectral, KrawtchoukTable,
};
pub use radial::RadialProfile;
pub use transform::{convolve, convolve_direct, fwht, inverse_fwht, walsh_hadamard};
pub use word::{weight, Word};

/// Largest supported dimension for dense arrays.
pub const MAX_N: usize = 30;

/// Largest dimension for dense functions with arbitrary-precision rational
/// entries.
pub const MAX_EXACT_N: usize = 20;

pub fn check_n(n: usize) -> crate::Result<()> {
    if n == 0 || n > MAX_N {
        return Err(crate::Error::DimensionOutOfRange { n, max: MAX_N });
    }
    Ok(())
}
