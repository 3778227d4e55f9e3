use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{check_n, MAX_EXACT_N};

/// Whether a dense function holds point values or Fourier coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Point,
    Spectral,
}

/// A function on all `2^n` points of the cube, indexed by the packed word.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseFunction<S> {
    n: usize,
    values: Vec<S>,
    domain: Domain,
}

impl<S: Scalar> DenseFunction<S> {
    pub fn new(n: usize, values: Vec<S>) -> Result<Self> {
        Self::with_domain(n, values, Domain::Point)
    }

    pub fn with_domain(n: usize, values: Vec<S>, domain: Domain) -> Result<Self> {
        check_n(n)?;
        if S::EXACT && n > MAX_EXACT_N {
            return Err(Error::BudgetExceeded {
                what: "rational dense function",
                n,
                limit: MAX_EXACT_N,
            });
        }
        if values.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(DenseFunction { n, values, domain })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::new(n, vec![S::zero(); 1 << n])
    }

    /// The uniform pmf `U_n`.
    pub fn uniform(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::new(n, vec![S::one().mul_pow2(-(n as i32)); 1 << n])
    }

    /// Point mass at `z`.
    pub fn delta(n: usize, z: u32) -> Result<Self> {
        let mut f = Self::zeros(n)?;
        let slot = f
            .values
            .get_mut(z as usize)
            .ok_or(Error::IndexOutOfRange {
                what: "point",
                value: z as usize,
                max: (1 << n) - 1,
            })?;
        *slot = S::one();
        Ok(f)
    }

    /// Unnormalized indicator of a set of points (repeats accumulate).
    pub fn indicator(n: usize, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut f = Self::zeros(n)?;
        for z in points {
            let slot = f
                .values
                .get_mut(z as usize)
                .ok_or(Error::IndexOutOfRange {
                    what: "point",
                    value: z as usize,
                    max: (1 << n) - 1,
                })?;
            *slot = slot.clone() + S::one();
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn get(&self, x: u32) -> Option<&S> {
        self.values.get(x as usize)
    }

    pub fn sum(&self) -> S {
        self.values.iter().fold(S::zero(), |acc, v| acc + v.clone())
    }

    /// Non-negative with total mass one: exactly in rational mode, within
    /// `1e-9` in float mode.
    pub fn is_pmf(&self) -> bool {
        if self.domain != Domain::Point || self.values.iter().any(|v| v.is_negative()) {
            return false;
        }
        let s = self.sum();
        if S::EXACT {
            s == S::one()
        } else {
            (s.to_f64() - 1.0).abs() <= 1e-9
        }
    }

    pub(crate) fn require_pmf(&self) -> Result<()> {
        if self.is_pmf() {
            Ok(())
        } else {
            Err(Error::NotAPmf {
                sum: format!("{:?}", self.sum().to_f64()),
            })
        }
    }

    /// `x ↦ f(x ⊕ z)`.
    pub fn shift(&self, z: u32) -> Self {
        let values = (0..self.values.len())
            .map(|x| self.values[x ^ z as usize].clone())
            .collect();
        DenseFunction {
            n: self.n,
            values,
            domain: self.domain,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        DenseFunction {
            n: self.n,
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
            domain: self.domain,
        }
    }

    pub fn to_f64(&self) -> DenseFunction<f64> {
        DenseFunction {
            n: self.n,
            values: self.values.iter().map(Scalar::to_f64).collect(),
            domain: self.domain,
        }
    }

    /// Pointwise product.
    pub fn mul_pointwise(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(DenseFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
            domain: self.domain,
        })
    }

    pub(crate) fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn from_parts(n: usize, values: Vec<S>, domain: Domain) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        DenseFunction { n, values, domain }
    }
}

impl DenseFunction<f64> {
    /// `‖f‖_α = (2^{-n} Σ |f|^α)^{1/α}` under the normalized counting measure;
    /// `α = ∞` gives the max norm.
    pub fn norm(&self, alpha: f64) -> f64 {
        if alpha.is_infinite() {
            return self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        }
        let scale = (self.n as f64).exp2();
        let s: f64 = self.values.iter().map(|v| v.abs().powf(alpha)).sum();
        (s / scale).powf(1.0 / alpha)
    }

    /// Largest absolute pointwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl<S: Scalar> DenseFunction<S> {
    /// True when every value equals `2^{-n}`.
    pub fn is_uniform_pmf(&self) -> bool {
        let u = S::one().mul_pow2(-(self.n as i32));
        if S::EXACT {
            self.values.iter().all(|v| *v == u)
        } else {
            let u = u.to_f64();
            self.values.iter().all(|v| (v.to_f64() - u).abs() <= 1e-12 * u.max(1e-300))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn constructors_validate_length() {
        assert!(DenseFunction::<f64>::new(3, vec![0.0; 7]).is_err());
        assert!(DenseFunction::<f64>::new(3, vec![0.0; 8]).is_ok());
        assert!(DenseFunction::<Rational>::zeros(21).is_err());
    }

    #[test]
    fn uniform_is_pmf() {
        let u = DenseFunction::<Rational>::uniform(5).unwrap();
        assert!(u.is_pmf());
        assert!(u.is_uniform_pmf());
        let d = DenseFunction::<f64>::delta(5, 3).unwrap();
        assert!(d.is_pmf());
        assert!(!d.is_uniform_pmf());
    }

    #[test]
    fn shift_translates() {
        let d = DenseFunction::<f64>::delta(4, 0b0011).unwrap();
        let s = d.shift(0b0101);
        assert_eq!(s.get(0b0110), Some(&1.0));
    }

    #[test]
    fn norms_use_normalized_measure() {
        let f = DenseFunction::new(4, vec![1.0f64; 16]).unwrap();
        assert!((f.norm(2.0) - 1.0).abs() < 1e-15);
        assert_eq!(f.norm(f64::INFINITY), 1.0);
    }
}
