use num_bigint::BigInt;
use num_traits::Zero;

use crate::codes::DistanceDistribution;
use crate::error::{Error, Result};
use crate::hypercube::{ball_volume, binomial, lloyd, mu};
use crate::kernels::Kernel;
use crate::scalar::Rational;

/// `(r ∗ r)(i)` for a radial `r`, from intersection numbers: with `|x| = i`,
/// the points `z` of weight `a` with `|x + z| = b` number
/// `C(i, j) C(n-i, a-j)` where `j = (i + a - b) / 2` is the overlap.
pub fn self_convolution(profile: &[Rational], n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|i| {
            let mut acc = Rational::zero();
            for a in 0..=n {
                if profile[a].is_zero() {
                    continue;
                }
                for j in 0..=a.min(i) {
                    if a - j > n - i {
                        continue;
                    }
                    let b = i + a - 2 * j;
                    if profile[b].is_zero() {
                        continue;
                    }
                    let count = binomial(i, j) * binomial(n - i, a - j);
                    acc += &profile[a] * &profile[b] * Rational::from_integer(count);
                }
            }
            acc
        })
        .collect()
}

fn check(dist: &DistanceDistribution, kernel: &Kernel) -> Result<()> {
    if dist.n() != kernel.n() {
        return Err(Error::DimensionMismatch { expected: dist.n(), found: kernel.n() });
    }
    Ok(())
}

/// `‖2^n T_r f_C‖_2² = (2^n / |C|) Σ_i (r∗r)(i) A_i`, exactly.
pub fn l2_closed_form(dist: &DistanceDistribution, kernel: &Kernel) -> Result<Rational> {
    check(dist, kernel)?;
    let n = dist.n();
    let r = kernel.profile().ok_or(Error::NotRadial)?;
    let rr = self_convolution(r.values(), n);
    let s: Rational = rr.iter().zip(dist.values()).map(|(x, a)| x * a).sum();
    Ok(s * Rational::from_integer(BigInt::from(1) << n) / dist.size())
}

/// The same quantity from the dual side, `4^n Σ_k r̂(k)² A_k^⊥`.
pub fn l2_dual_form(dist: &DistanceDistribution, kernel: &Kernel) -> Result<Rational> {
    check(dist, kernel)?;
    let n = dist.n();
    let spec = kernel.spectrum()?;
    let dual = dist.dual()?;
    let s: Rational = spec
        .values()
        .iter()
        .zip(dual.values())
        .map(|(r, a)| r * r * a)
        .sum();
    Ok(s * Rational::from_integer(BigInt::from(1) << (2 * n)))
}

/// Ball-kernel forms `(2^n / (|C| V_t²)) Σ μ_t(i) A_i` and
/// `(1/V_t²) Σ_k L_t(k)² A_k^⊥`.
pub fn l2_ball_forms(dist: &DistanceDistribution, t: usize) -> Result<(Rational, Rational)> {
    let n = dist.n();
    let v = Rational::from_integer(ball_volume(n, t)?);
    let v2 = &v * &v;
    let mut direct = Rational::zero();
    for i in 0..=n {
        if !dist.get(i).is_zero() {
            direct += Rational::from_integer(mu(n, t, i)?) * dist.get(i);
        }
    }
    let direct = direct * Rational::from_integer(BigInt::from(1) << n) / (dist.size() * &v2);
    let dual = dist.dual()?;
    let mut spectral = Rational::zero();
    for k in 0..=n {
        if !dual.get(k).is_zero() {
            let l = Rational::from_integer(lloyd(n, t, k)?);
            spectral += &l * &l * dual.get(k);
        }
    }
    Ok((direct, spectral / v2))
}
