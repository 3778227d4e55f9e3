use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::scalar::{Rational, Scalar};

use super::dense::DenseFunction;
use super::krawtchouk::{binomial, KrawtchoukTable};

/// A function of the Hamming weight, stored as its value `r(i)` at each
/// weight `0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> RadialProfile<S> {
    pub fn new(n: usize, values: Vec<S>) -> Result<Self> {
        if values.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: values.len(),
            });
        }
        Ok(RadialProfile { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &S {
        &self.values[i]
    }

    /// Places `r(|x|)` at every point of the cube.
    pub fn lift(&self) -> Result<DenseFunction<S>> {
        let len = 1usize << self.n;
        super::check_n(self.n)?;
        let v = (0..len as u32)
            .map(|x| self.values[x.count_ones() as usize].clone())
            .collect();
        DenseFunction::new(self.n, v)
    }

    /// Total mass of the lifted function, `Σ_i C(n,i) r(i)`.
    pub fn mass(&self) -> S {
        self.values
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (i, v)| acc + S::from_bigint(&binomial(self.n, i)) * v.clone())
    }

    /// Largest weight with a nonzero value, `None` for the zero profile.
    pub fn radius(&self) -> Option<usize> {
        self.values.iter().rposition(|v| !v.is_zero())
    }

    /// Radial Fourier transform `r̂(k) = 2^{-n} Σ_i r(i) K_i(k)`, computed in
    /// exact arithmetic and converted back.
    pub fn fourier(&self) -> Result<RadialProfile<S>> {
        let table = KrawtchoukTable::new(self.n);
        self.fourier_with(&table)
    }

    pub fn fourier_with(&self, table: &KrawtchoukTable) -> Result<RadialProfile<S>> {
        if table.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: table.n(),
            });
        }
        let exact = self.to_rational()?;
        let out = exact
            .fourier_rational(table)
            .iter()
            .map(S::from_rational)
            .collect();
        Ok(RadialProfile { n: self.n, values: out })
    }

    pub fn to_rational(&self) -> Result<RadialProfile<Rational>> {
        let values = self
            .values
            .iter()
            .map(|v| v.to_rational().ok_or_else(|| invalid("non-finite radial value")))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadialProfile { n: self.n, values })
    }

    pub fn to_f64(&self) -> RadialProfile<f64> {
        RadialProfile {
            n: self.n,
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> RadialProfile<T> {
        RadialProfile {
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl RadialProfile<Rational> {
    fn fourier_rational(&self, table: &KrawtchoukTable) -> Vec<Rational> {
        let n = self.n;
        (0..=n)
            .map(|k| {
                let s = (0..=n).fold(Rational::zero(), |acc, i| {
                    if self.values[i].is_zero() {
                        acc
                    } else {
                        acc + &self.values[i] * Rational::from_integer(table.get(i, k).clone())
                    }
                });
                s.mul_pow2(-(n as i32))
            })
            .collect()
    }
}
