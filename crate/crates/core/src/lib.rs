//! Noise smoothing of binary codes on the Hamming cube.
//!
//! A code `C ⊆ {0,1}^n` is spread out by additive noise with a kernel `r`,
//! giving the distribution `T_r f_C = r ∗ f_C`. The crate measures how close
//! that is to uniform (Rényi divergences, `L_α` norms), evaluates the
//! smoothing capacities of Bernoulli and ball noise, checks the
//! smoothing/erasure and Samorodnitsky inequalities, computes wiretap
//! leakage and achievable rates, list-decoding error bounds, random-coding
//! bounds, and certifies perfect smoothing exactly.
//!
//! Everything that can be done exactly is done in rational or integer
//! arithmetic; the rest uses `f64` and seeded Monte Carlo.

pub mod cli;
pub mod codes;
pub mod decoding;
pub mod erasure;
pub mod error;
pub mod hypercube;
pub mod kernels;
pub mod mc;
pub mod random_coding;
pub mod report;
pub mod scalar;
pub mod smoothing;
pub mod verify;
pub mod wiretap;

pub use error::{Error, Result};
pub use scalar::{parse_rational, Rational, Scalar};
