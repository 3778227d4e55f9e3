use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::codes::Code;
use crate::error::{invalid, Result};
use crate::hypercube::RadialProfile;
use crate::kernels::Kernel;
use crate::scalar::Rational;

use super::noisy::smooth_exact;

/// A radial kernel that smooths a code to exactly uniform.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectKernel {
    pub kernel: Kernel,
    /// Coefficients `w_i` with `Σ_i w_i A_i(x) = 1` for every `x`.
    pub weights: Vec<Rational>,
    pub radius: usize,
    /// Covering radius of the code.
    pub covering_radius: usize,
    pub external_distance: usize,
}

/// Searches for nonnegative `w_0..w_ρ` with `Σ_{i≤ρ} w_i A_i(x) = 1` for
/// every `x`, where `A_i(x)` counts codewords at distance `i` from `x` and
/// `ρ` is the covering radius; the kernel is `r(i) = w_i |C| / 2^n`.
///
/// Supports are tried from the smallest radius up. A system with free
/// variables is resolved by setting them to zero. Any returned kernel has
/// been checked to give exactly uniform output.
pub fn perfect_kernel_search(code: &Code) -> Result<Option<PerfectKernel>> {
    let n = code.n();
    let rho = code.covering_radius()?;
    let dbar = code.external_distance()?;
    let rows = code.local_weight_distributions(rho)?;
    for s in 0..=rho {
        let Some(w) = solve(&rows, s + 1) else { continue };
        if w.iter().any(|v| *v < Rational::zero()) || w[s].is_zero() {
            continue;
        }
        let scale = Rational::new(BigInt::from(code.size()), BigInt::one() << n);
        let mut values: Vec<Rational> = w.iter().map(|v| v * &scale).collect();
        values.resize(n + 1, Rational::zero());
        let kernel = Kernel::radial(RadialProfile::new(n, values)?)?;
        if !smooth_exact(code, &kernel)?.is_uniform() {
            return Err(invalid("solved kernel failed the exact uniformity check"));
        }
        let mut weights = w;
        weights.resize(rho + 1, Rational::zero());
        return Ok(Some(PerfectKernel {
            kernel,
            weights,
            radius: s,
            covering_radius: rho,
            external_distance: dbar,
        }));
    }
    Ok(None)
}

/// Solves `Σ_{i<cols} w_i row[i] = 1` over all rows exactly; free variables
/// are set to zero. `None` when inconsistent.
fn solve(rows: &[Vec<u64>], cols: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<Rational> = r[..cols].iter().map(|&a| Rational::from_integer(BigInt::from(a))).collect();
            v.push(Rational::one());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut w = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        w[c] = m[i][cols].clone();
    }
    Some(w)
}

/// Kernels listed for uniformly packed families, as per-weight values before
/// normalization. `L` is fixed by requiring a pmf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackedFamily {
    /// 2-error-correcting BCH: `r(0)=r(1)=L`, `r(2)=r(3)=3L/n`.
    Bch2,
    /// Preparata: `r(0)=r(1)=L`, `r(2)=r(3)=6L/(n-1)`.
    Preparata,
    /// Goethals-like `(2^m-1, 2^{2^m-3m+2}, 7)`: `r(0)=r(1)=L`,
    /// `r(2)=r(3)=65L/(2n)`, `r(4)=r(5)=30L/(n(n-3))`.
    Goethals,
}

impl PackedFamily {
    pub fn kernel(self, n: usize) -> Result<Kernel> {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let ni = n as i64;
        let mut v = vec![Rational::zero(); n + 1];
        let (second, third) = match self {
            PackedFamily::Bch2 => (q(3, ni), None),
            PackedFamily::Preparata => (q(6, ni - 1), None),
            PackedFamily::Goethals => (q(65, 2 * ni), Some(q(30, ni * (ni - 3)))),
        };
        let need = if third.is_some() { 6 } else { 4 };
        if n < need || (self == PackedFamily::Goethals && n <= 3) {
            return Err(invalid(format!("length {n} too short for this kernel")));
        }
        v[0] = Rational::one();
        v[1] = Rational::one();
        v[2] = second.clone();
        v[3] = second;
        if let Some(t) = third {
            v[4] = t.clone();
            v[5] = t;
        }
        Kernel::radial(RadialProfile::new(n, v)?)
    }
}
