use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypercube::KrawtchoukTable;
use crate::scalar::{rational_to_f64, Rational};

/// `A_i = |{(c, c') ∈ C² : d(c, c') = i}| / |C|`, held exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    n: usize,
    a: Vec<Rational>,
}

impl DistanceDistribution {
    pub fn new(n: usize, a: Vec<Rational>) -> Result<Self> {
        if a.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, found: a.len() });
        }
        if a.iter().any(|v| *v < Rational::zero()) {
            return Err(Error::InconsistentDistribution("negative entry".into()));
        }
        if a[0] < Rational::one() {
            return Err(Error::InconsistentDistribution("A_0 < 1".into()));
        }
        Ok(DistanceDistribution { n, a })
    }

    /// From ordered pair counts and the code size.
    pub fn from_pair_counts(counts: &[u64], size: u64) -> Result<Self> {
        let m = BigInt::from(size);
        let a = counts
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), m.clone()))
            .collect();
        Self::new(counts.len() - 1, a)
    }

    /// From weight counts of a linear code.
    pub fn from_weight_counts(counts: &[u64]) -> Result<Self> {
        let a = counts.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        Self::new(counts.len() - 1, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.a
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.a[i]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.a.iter().map(rational_to_f64).collect()
    }

    /// `|C| = Σ_i A_i`.
    pub fn size(&self) -> Rational {
        self.a.iter().fold(Rational::zero(), |s, v| s + v)
    }

    /// Smallest `i ≥ 1` with `A_i ≠ 0`, `None` for a single codeword.
    pub fn minimum_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.a[i].is_zero())
    }

    /// `A_j^⊥ = (1/|C|) Σ_i A_i K_j(i)`.
    pub fn dual(&self) -> Result<DistanceDistribution> {
        let table = KrawtchoukTable::new(self.n);
        self.dual_with(&table)
    }

    pub fn dual_with(&self, table: &KrawtchoukTable) -> Result<DistanceDistribution> {
        let size = self.size();
        let out: Vec<Rational> = (0..=self.n)
            .map(|j| {
                self.a
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .fold(Rational::zero(), |s, (i, v)| s + v * Rational::from_integer(table.get(j, i).clone()))
                    / &size
            })
            .collect();
        if let Some(j) = out.iter().position(|v| *v < Rational::zero()) {
            return Err(Error::InconsistentDistribution(format!(
                "dual entry {j} is negative ({})",
                out[j]
            )));
        }
        DistanceDistribution::new(self.n, out)
    }

    /// `d̄(C) = |{i ≥ 1 : A_i^⊥ ≠ 0}|`.
    pub fn external_distance(&self) -> Result<usize> {
        let dual = self.dual()?;
        Ok((1..=self.n).filter(|&i| !dual.a[i].is_zero()).count())
    }
}

/// `A^⊥` for a distribution of a code of the given size, checking that the
/// size agrees with `Σ A_i`.
pub fn dual_distance_distribution(dist: &DistanceDistribution, size: &Rational) -> Result<DistanceDistribution> {
    if dist.size() != *size {
        return Err(Error::InconsistentDistribution(format!(
            "Σ A_i = {} but |C| = {size}",
            dist.size()
        )));
    }
    dist.dual()
}
