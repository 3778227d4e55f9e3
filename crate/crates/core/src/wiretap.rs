//! Nested coset coding for the binary symmetric wiretap channel: exact
//! leakage, smoothing-based secrecy bounds and achievable-rate curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{Code, LinearCode};
use crate::error::{invalid, Error, Result};
use crate::hypercube::{convolve, weight, DenseFunction};
use crate::kernels::{binary_entropy, binary_renyi, format_order, renyi_entropy, Kernel};
use crate::smoothing::{divergence_to_uniform, smooth};

/// Largest length for dense leakage computation.
pub const MAX_LEAKAGE_N: usize = 24;

/// Largest length for the per-message mixture computation.
pub const MAX_MIXTURE_N: usize = 20;

/// Messages are the cosets of `inner` in `outer`.
#[derive(Clone, Debug)]
pub struct NestedScheme {
    inner: LinearCode,
    outer: LinearCode,
}

impl NestedScheme {
    pub fn new(inner: LinearCode, outer: LinearCode) -> Result<Self> {
        if inner.n() != outer.n() {
            return Err(Error::DimensionMismatch { expected: outer.n(), found: inner.n() });
        }
        if !inner.is_subcode_of(&outer) {
            return Err(Error::NotNested);
        }
        Ok(NestedScheme { inner, outer })
    }

    pub fn n(&self) -> usize {
        self.outer.n()
    }

    pub fn inner(&self) -> &LinearCode {
        &self.inner
    }

    pub fn outer(&self) -> &LinearCode {
        &self.outer
    }

    pub fn message_bits(&self) -> usize {
        self.outer.k() - self.inner.k()
    }

    /// Reduces `x` modulo the inner code to a canonical coset label.
    fn coset_label(&self, x: u32) -> u32 {
        self.inner
            .rows()
            .iter()
            .zip(self.inner.pivots())
            .fold(x, |v, (&r, &p)| if v >> p & 1 == 1 { v ^ r } else { v })
    }

    /// One minimum-weight representative per coset of `inner` in `outer`,
    /// ties broken by numeric order; sorted by coset label.
    pub fn coset_leaders(&self) -> Result<Vec<u32>> {
        let mut best: std::collections::BTreeMap<u32, u32> = Default::default();
        self.outer.for_each_codeword(|c| {
            let label = self.coset_label(c);
            let e = best.entry(label).or_insert(c);
            if (weight(c), c) < (weight(*e), *e) {
                *e = c;
            }
        })?;
        Ok(best.into_values().collect())
    }
}

fn noise(n: usize, delta: f64) -> Result<Kernel> {
    Kernel::bernoulli_f64(n, delta)
}

fn dense_budget(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        return Err(Error::BudgetExceeded { what, n, limit });
    }
    Ok(())
}

/// `I(M;Z) = H(T_δ f_{C_b}) - H(T_δ f_{C_e})` for a uniform message.
pub fn leakage_exact(scheme: &NestedScheme, delta_e: f64) -> Result<f64> {
    let n = scheme.n();
    dense_budget(n, MAX_LEAKAGE_N, "dense leakage")?;
    let k = noise(n, delta_e)?;
    let hb = renyi_entropy(&smooth::<f64>(&Code::from(scheme.outer.clone()), &k)?, 1.0)?;
    let he = renyi_entropy(&smooth::<f64>(&Code::from(scheme.inner.clone()), &k)?, 1.0)?;
    Ok((hb - he).max(0.0))
}

/// `P_{Z|M=m}` for every message, each convolved separately.
pub fn conditional_outputs(scheme: &NestedScheme, delta_e: f64) -> Result<Vec<DenseFunction<f64>>> {
    let n = scheme.n();
    dense_budget(n, MAX_MIXTURE_N, "per-message mixture")?;
    let r = noise(n, delta_e)?.lift::<f64>()?;
    let inner = scheme.inner.codewords()?;
    scheme
        .coset_leaders()?
        .into_par_iter()
        .map(|m| {
            let coset = DenseFunction::indicator(n, inner.iter().map(|c| c ^ m))?;
            let p = coset.scale(&(1.0 / inner.len() as f64));
            convolve(&p, &r)
        })
        .collect()
}

/// Mixture-side quantities of a nested scheme under a uniform message.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixtureLeakage {
    /// `H(Z) - H(Z|M)`.
    pub mutual_information: f64,
    /// `D(P_Z ‖ U_n)`.
    pub output_divergence: f64,
    /// `D(P_{Z|M} ‖ U_n | P_M)`.
    pub conditional_divergence: f64,
}

/// Leakage from the explicit mixture `P_Z = 2^{-k} Σ_m P_{Z|M=m}`.
pub fn leakage_direct(scheme: &NestedScheme, delta_e: f64) -> Result<MixtureLeakage> {
    let n = scheme.n();
    let outs = conditional_outputs(scheme, delta_e)?;
    let w = 1.0 / outs.len() as f64;
    let mut pz = vec![0.0; 1 << n];
    for p in &outs {
        for (a, b) in pz.iter_mut().zip(p.values()) {
            *a += w * b;
        }
    }
    let pz = DenseFunction::new(n, pz)?;
    let hz = renyi_entropy(&pz, 1.0)?;
    let hzm: f64 = outs.iter().map(|p| renyi_entropy(p, 1.0)).sum::<Result<f64>>()? * w;
    Ok(MixtureLeakage {
        mutual_information: hz - hzm,
        output_divergence: n as f64 - hz,
        conditional_divergence: n as f64 - hzm,
    })
}

/// `D_α(P_{Z|M=m} ‖ U_n)` for each message `m`.
pub fn per_message_divergence(scheme: &NestedScheme, delta_e: f64, alpha: f64) -> Result<Vec<f64>> {
    conditional_outputs(scheme, delta_e)?
        .iter()
        .map(|p| Ok(divergence_to_uniform(p, alpha)?.d_alpha))
        .collect()
}

/// `D_α(T_δ f_{C_e} ‖ U_n)`: bounds `I(M;Z)` at `α = 1` and equals the
/// per-message conditional divergence at every `α`.
pub fn secrecy_bound(scheme: &NestedScheme, delta_e: f64, alpha: f64) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::UnsupportedOrder(format_order(alpha)));
    }
    let n = scheme.n();
    dense_budget(n, MAX_LEAKAGE_N, "dense leakage")?;
    let f = smooth::<f64>(&Code::from(scheme.inner.clone()), &noise(n, delta_e)?)?;
    Ok(divergence_to_uniform(&f, alpha)?.d_alpha.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ShannonCapacity,
    BecDual,
    Rm,
    AlphaSecrecy(f64),
}

impl Regime {
    pub fn parse(s: &str) -> Result<Vec<Regime>> {
        let one = |t: &str| -> Result<Regime> {
            Ok(match t {
                "shannon" | "shannon_capacity" | "shannon-capacity" => Regime::ShannonCapacity,
                "bec" | "bec_dual" | "bec-dual" => Regime::BecDual,
                "rm" => Regime::Rm,
                other => match other.strip_prefix("alpha:") {
                    Some(a) => Regime::AlphaSecrecy(crate::kernels::parse_order(a)?),
                    None => return Err(invalid(format!("unknown regime {other:?}"))),
                },
            })
        };
        if s == "all" {
            return Ok(vec![Regime::ShannonCapacity, Regime::BecDual, Regime::Rm]);
        }
        s.split(',').map(|t| one(t.trim())).collect()
    }

    pub fn label(&self) -> String {
        match self {
            Regime::ShannonCapacity => "shannon_capacity".into(),
            Regime::BecDual => "bec_dual".into(),
            Regime::Rm => "rm".into(),
            Regime::AlphaSecrecy(a) => format!("alpha_secrecy({})", format_order(*a)),
        }
    }
}

/// Which expression bounds the eavesdropper code rate in the BEC-dual and RM
/// regimes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReConvention {
    /// `(1-2δ_e)²`.
    #[default]
    Numbers,
    /// `4δ_e(1-δ_e)`.
    FourDeltaProduct,
}

impl ReConvention {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "numbers" => Ok(ReConvention::Numbers),
            "paper-theorem" => Ok(ReConvention::FourDeltaProduct),
            other => Err(invalid(format!("unknown R_e convention {other:?}"))),
        }
    }

    fn smoothing_threshold(self, delta: f64) -> f64 {
        match self {
            ReConvention::Numbers => (1.0 - 2.0 * delta).powi(2),
            ReConvention::FourDeltaProduct => 4.0 * delta * (1.0 - delta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatePoint {
    pub delta_b: f64,
    pub delta_e: f64,
    pub regime: Regime,
    pub r_b: f64,
    pub r_e: f64,
    /// `max(R_b - R_e, 0)`.
    pub rate: f64,
    /// Set when `R_b - R_e` was negative.
    pub clamped: bool,
}

/// `1 - log(1 + 2√(δ(1-δ)))`, the decodability threshold for codes good on
/// the erasure channel.
pub fn bsc_decodability_threshold(delta: f64) -> f64 {
    1.0 - (1.0 + 2.0 * (delta * (1.0 - delta)).sqrt()).log2()
}

pub fn rate_point(delta_b: f64, delta_e: f64, regime: Regime, conv: ReConvention) -> Result<RatePoint> {
    if !(0.0 <= delta_b && delta_b < delta_e && delta_e <= 0.5) {
        return Err(invalid(format!("need 0 <= delta_b < delta_e <= 1/2, got {delta_b}, {delta_e}")));
    }
    let (r_b, r_e) = match regime {
        Regime::ShannonCapacity => (1.0 - binary_entropy(delta_b), 1.0 - binary_entropy(delta_e)),
        Regime::BecDual => (bsc_decodability_threshold(delta_b), conv.smoothing_threshold(delta_e)),
        Regime::Rm => (1.0 - binary_entropy(delta_b), conv.smoothing_threshold(delta_e)),
        Regime::AlphaSecrecy(a) => {
            if !(a.is_infinite() || (a >= 1.0 && a.fract() == 0.0)) {
                return Err(Error::UnsupportedOrder(format_order(a)));
            }
            (1.0 - binary_entropy(delta_b), 1.0 - binary_renyi(a, delta_e))
        }
    };
    let raw = r_b - r_e;
    Ok(RatePoint { delta_b, delta_e, regime, r_b, r_e, rate: raw.max(0.0), clamped: raw < 0.0 })
}

/// One row of the rate-threshold figure at noise level `δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub delta: f64,
    /// `1 - log(1 + 2√(δ(1-δ)))`.
    pub decodability: f64,
    /// `1 - h(δ)`.
    pub shannon: f64,
    /// The `D_1` smoothing threshold for Bernoulli noise.
    pub smoothing: f64,
}

/// Threshold curves on `points` equally spaced `δ ∈ [0, 1/2]`.
pub fn threshold_curve(points: usize, conv: ReConvention) -> Result<Vec<ThresholdRow>> {
    if points < 2 {
        return Err(invalid("need at least two grid points"));
    }
    Ok((0..points)
        .into_par_iter()
        .map(|i| {
            let delta = 0.5 * i as f64 / (points - 1) as f64;
            ThresholdRow {
                delta,
                decodability: bsc_decodability_threshold(delta),
                shannon: 1.0 - binary_entropy(delta),
                smoothing: conv.smoothing_threshold(delta),
            }
        })
        .collect())
}

/// Rate of every regime as `δ_e` sweeps `points` values in `(δ_b, 1/2]`.
pub fn rate_curve(delta_b: f64, regimes: &[Regime], points: usize, conv: ReConvention) -> Result<Vec<RatePoint>> {
    if points < 1 {
        return Err(invalid("need at least one grid point"));
    }
    let grid: Vec<f64> = (1..=points)
        .map(|i| delta_b + (0.5 - delta_b) * i as f64 / points as f64)
        .collect();
    grid.par_iter()
        .flat_map_iter(|&de| regimes.iter().map(move |&r| rate_point(delta_b, de, r, conv)))
        .collect()
}
