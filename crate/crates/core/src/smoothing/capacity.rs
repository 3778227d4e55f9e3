use num_bigint::BigInt;
use serde::Serialize;

use crate::codes::Code;
use crate::error::{invalid, Result};
use crate::hypercube::ball_volume;
use crate::kernels::{binary_entropy, binary_renyi, Kernel};
use crate::report::BoundReport;
use crate::scalar::{rational_to_f64, Rational};

use super::divergence::divergence_to_uniform;
use super::noisy::{smooth, smooth_exact};

/// Noise families with closed-form smoothing capacities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseFamily {
    /// `β_δ`, i.i.d. flips.
    Bernoulli,
    /// `b_{δn}`, uniform on a ball of radius `δn`.
    Ball,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(invalid(format!("δ = {delta} outside [0, 1/2]")));
    }
    Ok(())
}

/// `D_α`-smoothing capacity.
///
/// Bernoulli: `0` at `α = 0`, `1 - h(δ)` for `α ∈ (0,1]`, `1 - h_α(δ)` for
/// `α > 1`. Ball: `1 - h(δ)` for every `α`.
pub fn capacity(family: NoiseFamily, alpha: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if alpha.is_nan() || alpha < 0.0 {
        return Err(invalid(format!("order {alpha} must be nonnegative")));
    }
    Ok(match family {
        NoiseFamily::Bernoulli if alpha == 0.0 => 0.0,
        NoiseFamily::Bernoulli if alpha <= 1.0 => 1.0 - binary_entropy(delta),
        NoiseFamily::Bernoulli => 1.0 - binary_renyi(alpha, delta),
        NoiseFamily::Ball => 1.0 - binary_entropy(delta),
    })
}

/// Normalized Rényi entropy `H_α(r_n)/n` of a family member. With `n` given
/// the ball family uses `log V_{⌊δn⌋} / n`; without it, the limit `h(δ)`.
pub fn pi_rate(family: NoiseFamily, alpha: f64, delta: f64, n: Option<usize>) -> Result<f64> {
    check_delta(delta)?;
    Ok(match (family, n) {
        (NoiseFamily::Bernoulli, _) => binary_renyi(alpha, delta),
        (NoiseFamily::Ball, None) => binary_entropy(delta),
        (NoiseFamily::Ball, Some(n)) => {
            let t = (delta * n as f64).floor() as usize;
            rational_to_f64(&Rational::from_integer(ball_volume(n, t)?)).log2() / n as f64
        }
    })
}

/// `n(1 - R) - H_α(r)`: no code of rate `R` has `D_α(T_r f_C ‖ U_n)` below
/// this.
pub fn lower_bound(n: usize, rate: f64, kernel: &Kernel, alpha: f64) -> Result<f64> {
    Ok(n as f64 * (1.0 - rate) - kernel.renyi_entropy(alpha)?)
}

/// Measured `D_α(T_r f_C‖U_n)` against [`lower_bound`]. Marginal cases at
/// `α ∈ {0, 2, 3, …, ∞}` are settled exactly:
/// `|supp T_r f_C| ≤ |C| |supp r|`, `|C|^{α-1} Σ (T_r f_C)^α ≥ Σ r^α`, and
/// `|C| max T_r f_C ≥ max r` respectively.
pub fn lower_bound_report(code: &Code, kernel: &Kernel, alpha: f64) -> Result<BoundReport> {
    let n = code.n();
    let f = smooth::<f64>(code, kernel)?;
    let measured = divergence_to_uniform(&f, alpha)?.d_alpha;
    let bound = lower_bound(n, code.rate(), kernel, alpha)?;
    let name = format!("lower bound n={n} |C|={} {kernel} a={alpha}", code.size());
    Ok(BoundReport::with_recheck(name, bound, measured, || {
        exact_lower_bound_holds(code, kernel, alpha).ok().flatten()
    }))
}

fn exact_lower_bound_holds(code: &Code, kernel: &Kernel, alpha: f64) -> Result<Option<bool>> {
    let integer = alpha.fract() == 0.0 && alpha >= 2.0 && alpha <= 64.0;
    if !(alpha == 0.0 || alpha.is_infinite() || integer) {
        return Ok(None);
    }
    let e = smooth_exact(code, kernel)?;
    let size = BigInt::from(code.size());
    if alpha == 0.0 {
        return Ok(Some(BigInt::from(e.support_size()) <= &size * kernel.support_size()?));
    }
    if alpha.is_infinite() {
        let max = Rational::new(BigInt::from(e.max_numerator()), e.denominator().clone());
        return Ok(Some(Rational::from_integer(size) * max >= kernel.max_exact()?));
    }
    let a = alpha as u32;
    let den = num_traits::pow(e.denominator().clone(), a as usize);
    let sum_f = Rational::new(e.power_sum_numerator(a), den);
    let lhs = Rational::from_integer(num_traits::pow(size, (a - 1) as usize)) * sum_f;
    Ok(Some(lhs >= kernel.power_sum_exact(a)?))
}

/// One row of the capacity curves at flip probability `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CapacityRow {
    pub delta: f64,
    /// `1 - h(δ)`: `S_1`, and the ball capacity at every order.
    pub shannon: f64,
    /// `(1 - 2δ)²`, the threshold for duals of BEC-capacity codes.
    pub bec_dual: f64,
    /// `1 - h_2(δ)`.
    pub s2: f64,
    /// `1 - h_∞(δ) = 1 + log(1 - δ)`.
    pub s_inf: f64,
}

/// Curves on the grid `δ_i = i / (2(points - 1))`, `i = 0..points`.
pub fn capacity_curve(points: usize) -> Result<Vec<CapacityRow>> {
    if points < 2 {
        return Err(invalid("a curve needs at least two grid points"));
    }
    (0..points)
        .map(|i| {
            let delta = i as f64 / (2 * (points - 1)) as f64;
            Ok(CapacityRow {
                delta,
                shannon: capacity(NoiseFamily::Bernoulli, 1.0, delta)?,
                bec_dual: (1.0 - 2.0 * delta).powi(2),
                s2: capacity(NoiseFamily::Bernoulli, 2.0, delta)?,
                s_inf: capacity(NoiseFamily::Bernoulli, f64::INFINITY, delta)?,
            })
        })
        .collect()
}
