use serde::Serialize;

use crate::error::Result;
use crate::hypercube::DenseFunction;
use crate::kernels::{format_order, renyi_entropy};
use crate::scalar::Scalar;

/// How far a pmf on the cube is from uniform, at one order `α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothnessReport {
    pub n: usize,
    #[serde(serialize_with = "order_str")]
    pub alpha: f64,
    /// `D_α(f ‖ U_n) = n - H_α(f)` in bits.
    pub d_alpha: f64,
    /// `‖2^n f‖_α`; `None` at `α = 0`.
    pub l_alpha: Option<f64>,
    /// `‖f - U_n‖_α / ‖f‖_1 = ‖2^n f - 1‖_α`; `None` at `α = 0`.
    pub dimensionless: Option<f64>,
}

fn order_str<S: serde::Serializer>(a: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_order(*a))
}

impl SmoothnessReport {
    /// `D_α` recomputed from `l_alpha`, `(α/(α-1)) log ‖2^n f‖_α`.
    pub fn d_from_l(&self) -> Option<f64> {
        let l = self.l_alpha?;
        let a = self.alpha;
        if a.is_infinite() {
            Some(l.log2())
        } else if a == 1.0 || a == 0.0 {
            None
        } else {
            Some(a / (a - 1.0) * l.log2())
        }
    }
}

/// `D_α(f‖U_n)`, `‖2^n f‖_α` and `‖2^n f - 1‖_α` for a pmf `f`.
pub fn divergence_to_uniform<S: Scalar>(f: &DenseFunction<S>, alpha: f64) -> Result<SmoothnessReport> {
    let n = f.n();
    let d_alpha = n as f64 - renyi_entropy(f, alpha)?;
    let g: Vec<f64> = {
        let scale = (n as f64).exp2();
        f.values().iter().map(|v| v.to_f64() * scale).collect()
    };
    let (l_alpha, dimensionless) = if alpha == 0.0 {
        (None, None)
    } else {
        let g = DenseFunction::new(n, g)?;
        let l = scaled_norm(&g, alpha);
        let centered: Vec<f64> = g.values().iter().map(|v| v - 1.0).collect();
        let c = scaled_norm(&DenseFunction::new(n, centered)?, alpha);
        (Some(l), Some(c))
    };
    Ok(SmoothnessReport { n, alpha, d_alpha, l_alpha, dimensionless })
}

/// `‖g‖_α` under the normalized counting measure, summed relative to the
/// largest entry to avoid overflow.
fn scaled_norm(g: &DenseFunction<f64>, alpha: f64) -> f64 {
    let max = g.values().iter().fold(0f64, |m, v| m.max(v.abs()));
    if alpha.is_infinite() || max == 0.0 {
        return max;
    }
    let s: f64 = g.values().iter().map(|v| (v.abs() / max).powf(alpha)).sum();
    let log = max.log2() + (s.log2() - g.n() as f64) / alpha;
    log.exp2()
}
