//! Binary codes: linear codes in row-reduced form, explicit codeword lists,
//! standard families, distance and dual distance distributions, covering
//! radius, external distance, and a line-oriented file format.

mod distribution;
mod explicit;
mod families;
mod io;
mod linear;

use std::collections::BTreeSet;
use std::num::Wrapping;

pub use distribution::{dual_distance_distribution, DistanceDistribution};
pub use explicit::ExplicitCode;
pub use families::{family, golay23, hamming, parity, random_linear, reed_muller, repetition};
pub use io::{format_code, parse_code, read_code, write_code};
pub use linear::{LinearCode, ENUM_BUDGET};

use crate::error::{Error, Result};
use crate::hypercube::{walsh_hadamard, DenseFunction};
use crate::scalar::Scalar;

/// Either kind of code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    Linear(LinearCode),
    Explicit(ExplicitCode),
}

impl From<LinearCode> for Code {
    fn from(c: LinearCode) -> Self {
        Code::Linear(c)
    }
}

impl From<ExplicitCode> for Code {
    fn from(c: ExplicitCode) -> Self {
        Code::Explicit(c)
    }
}

impl Code {
    pub fn n(&self) -> usize {
        match self {
            Code::Linear(c) => c.n(),
            Code::Explicit(c) => c.n(),
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Code::Linear(c) => c.size(),
            Code::Explicit(c) => c.size(),
        }
    }

    pub fn log2_size(&self) -> f64 {
        match self {
            Code::Linear(c) => c.k() as f64,
            Code::Explicit(c) => (c.size() as f64).log2(),
        }
    }

    /// `R = log|C| / n`.
    pub fn rate(&self) -> f64 {
        self.log2_size() / self.n() as f64
    }

    pub fn as_linear(&self) -> Option<&LinearCode> {
        match self {
            Code::Linear(c) => Some(c),
            Code::Explicit(_) => None,
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        match self {
            Code::Linear(c) => c.contains(x),
            Code::Explicit(c) => c.contains(x),
        }
    }

    /// Sorted codewords.
    pub fn words(&self) -> Result<Vec<u32>> {
        match self {
            Code::Linear(c) => c.codewords(),
            Code::Explicit(c) => Ok(c.words().to_vec()),
        }
    }

    /// The uniform pmf `f_C` on the code.
    pub fn pmf<S: Scalar>(&self) -> Result<DenseFunction<S>> {
        let mut f = DenseFunction::<S>::indicator(self.n(), self.words()?)?;
        let inv = S::one() / S::from_u64(self.size());
        f = f.scale(&inv);
        Ok(f)
    }

    pub fn distance_distribution(&self) -> Result<DistanceDistribution> {
        match self {
            Code::Linear(c) => DistanceDistribution::from_weight_counts(&c.weight_counts()?),
            Code::Explicit(c) => DistanceDistribution::from_pair_counts(&c.pair_distance_counts()?, c.size()),
        }
    }

    pub fn covering_radius(&self) -> Result<usize> {
        match self {
            Code::Linear(c) => c.covering_radius(),
            Code::Explicit(c) => c.covering_radius(),
        }
    }

    /// `d̄(C) = |{i ≥ 1 : A_i^⊥ ≠ 0}|`.
    pub fn external_distance(&self) -> Result<usize> {
        self.distance_distribution()?.external_distance()
    }

    /// The distinct rows `(A_0(x), …, A_max(x))` over all `x`, where
    /// `A_i(x)` counts codewords at distance `i` from `x`.
    pub fn local_weight_distributions(&self, max: usize) -> Result<Vec<Vec<u64>>> {
        let n = self.n();
        if n > ENUM_BUDGET {
            return Err(Error::BudgetExceeded { what: "local weight distributions", n, limit: ENUM_BUDGET });
        }
        let max = max.min(n);
        let mut rows = BTreeSet::new();
        match self {
            Code::Linear(c) => {
                // Each coset has one profile; tally weights per syndrome while
                // walking the cube in Gray-code order.
                let cols = c.syndrome_columns();
                let r = n - c.k();
                let width = max + 1;
                let mut counts = vec![0u64; (1usize << r) * width];
                let mut x = 0u32;
                let mut s = 0u32;
                counts[0] += 1;
                for i in 1u64..1 << n {
                    let b = i.trailing_zeros() as usize;
                    x ^= 1 << b;
                    s ^= cols[b];
                    let w = x.count_ones() as usize;
                    if w <= max {
                        counts[s as usize * width + w] += 1;
                    }
                }
                for chunk in counts.chunks(width) {
                    rows.insert(chunk.to_vec());
                }
            }
            Code::Explicit(c) => {
                let mut code_hat = vec![Wrapping(0i64); 1 << n];
                for &w in c.words() {
                    code_hat[w as usize] = Wrapping(1);
                }
                walsh_hadamard(&mut code_hat);
                let mut per_point = vec![vec![0u64; max + 1]; 1 << n];
                for i in 0..=max {
                    let mut sphere: Vec<Wrapping<i64>> = (0u32..1 << n)
                        .map(|x| Wrapping((x.count_ones() as usize == i) as i64))
                        .collect();
                    walsh_hadamard(&mut sphere);
                    for (a, b) in sphere.iter_mut().zip(&code_hat) {
                        *a = *a * *b;
                    }
                    walsh_hadamard(&mut sphere);
                    for (x, v) in sphere.iter().enumerate() {
                        per_point[x][i] = (v.0 >> n) as u64;
                    }
                }
                rows.extend(per_point);
            }
        }
        Ok(rows.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::binomial;
    use crate::scalar::Rational;
    use num_traits::One;

    #[test]
    fn hamming_dual_is_simplex() {
        let d = Code::from(hamming(3).unwrap()).distance_distribution().unwrap();
        let dual = d.dual().unwrap();
        let expected = DistanceDistribution::from_weight_counts(&[1, 0, 0, 0, 7, 0, 0, 0]).unwrap();
        assert_eq!(dual, expected);
        let enumerated = Code::from(hamming(3).unwrap().dual()).distance_distribution().unwrap();
        assert_eq!(dual, enumerated);
    }

    #[test]
    fn full_space_distribution() {
        let d = Code::from(LinearCode::full(4).unwrap()).distance_distribution().unwrap();
        for i in 0..=4 {
            assert_eq!(*d.get(i), Rational::from_integer(binomial(4, i)));
        }
    }

    #[test]
    fn explicit_matches_linear() {
        let lin = hamming(3).unwrap();
        let exp = Code::from(ExplicitCode::new(7, lin.codewords().unwrap()).unwrap());
        let lin = Code::from(lin);
        assert_eq!(exp.distance_distribution().unwrap(), lin.distance_distribution().unwrap());
        assert_eq!(exp.covering_radius().unwrap(), lin.covering_radius().unwrap());
        assert_eq!(
            exp.local_weight_distributions(3).unwrap(),
            lin.local_weight_distributions(3).unwrap()
        );
    }

    #[test]
    fn external_distances() {
        assert_eq!(Code::from(hamming(3).unwrap()).external_distance().unwrap(), 1);
        let c = Code::from(hamming(3).unwrap());
        assert_eq!(c.covering_radius().unwrap(), 1);
    }

    #[test]
    fn pmf_sums_to_one() {
        let f = Code::from(reed_muller(1, 3).unwrap()).pmf::<Rational>().unwrap();
        assert_eq!(f.sum(), Rational::one());
    }

    #[test]
    fn perfect_code_local_profiles() {
        // Every point of the cube is within distance 1 of exactly one
        // Hamming codeword.
        let rows = Code::from(hamming(3).unwrap()).local_weight_distributions(1).unwrap();
        assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
    }
}
