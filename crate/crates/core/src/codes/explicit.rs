use std::num::Wrapping;

use crate::error::{invalid, Error, Result};
use crate::hypercube::{check_n, walsh_hadamard};

use super::linear::ENUM_BUDGET;

/// Largest length for which distance profiles go through a dense transform.
const DENSE_DISTANCE_N: usize = 24;

/// A code given by its list of codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCode {
    n: usize,
    words: Vec<u32>,
}

impl ExplicitCode {
    /// Sorts and deduplicates the words.
    pub fn new(n: usize, words: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_n(n)?;
        let mut words: Vec<u32> = words.into_iter().collect();
        if let Some(&w) = words.iter().find(|&&w| w >> n != 0) {
            return Err(invalid(format!("codeword {w:#b} does not fit length {n}")));
        }
        words.sort_unstable();
        words.dedup();
        if words.is_empty() {
            return Err(invalid("a code needs at least one codeword"));
        }
        Ok(ExplicitCode { n, words })
    }

    /// The Hamming ball `B(center, t)`.
    pub fn ball(n: usize, center: u32, t: usize) -> Result<Self> {
        check_n(n)?;
        if n > ENUM_BUDGET {
            return Err(Error::BudgetExceeded { what: "ball enumeration", n, limit: ENUM_BUDGET });
        }
        Self::new(
            n,
            (0u32..1 << n).filter(|x| (x ^ center).count_ones() as usize <= t),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn size(&self) -> u64 {
        self.words.len() as u64
    }

    pub fn contains(&self, x: u32) -> bool {
        self.words.binary_search(&x).is_ok()
    }

    /// Number of ordered pairs `(c, c')` at each distance.
    pub fn pair_distance_counts(&self) -> Result<Vec<u64>> {
        let n = self.n;
        let mut counts = vec![0u64; n + 1];
        if n <= DENSE_DISTANCE_N {
            // Autocorrelation of the indicator: transform, square, invert.
            // Intermediate sums may wrap; the final values fit in 64 bits, so
            // modular arithmetic gives them exactly.
            let mut a = vec![Wrapping(0i64); 1 << n];
            for &w in &self.words {
                a[w as usize] = Wrapping(1);
            }
            walsh_hadamard(&mut a);
            for v in a.iter_mut() {
                *v = *v * *v;
            }
            walsh_hadamard(&mut a);
            for (x, v) in a.iter().enumerate() {
                counts[(x as u32).count_ones() as usize] += (v.0 >> n) as u64;
            }
        } else {
            let m = self.words.len() as u64;
            if m * m > 1u64 << ENUM_BUDGET {
                return Err(Error::BudgetExceeded { what: "pairwise distances", n, limit: DENSE_DISTANCE_N });
            }
            for &a in &self.words {
                for &b in &self.words {
                    counts[(a ^ b).count_ones() as usize] += 1;
                }
            }
        }
        Ok(counts)
    }

    /// Distance from every point to the code, by multi-source breadth-first
    /// search over the cube.
    pub fn point_distances(&self) -> Result<Vec<u8>> {
        let n = self.n;
        if n > ENUM_BUDGET {
            return Err(Error::BudgetExceeded { what: "covering radius", n, limit: ENUM_BUDGET });
        }
        let mut dist = vec![u8::MAX; 1 << n];
        let mut frontier: Vec<u32> = self.words.clone();
        for &w in &frontier {
            dist[w as usize] = 0;
        }
        let mut d = 0u8;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for i in 0..n {
                    let y = x ^ (1 << i);
                    if dist[y as usize] == u8::MAX {
                        dist[y as usize] = d;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(dist)
    }

    pub fn covering_radius(&self) -> Result<usize> {
        Ok(self.point_distances()?.into_iter().max().unwrap_or(0) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_words() {
        assert!(ExplicitCode::new(3, [8]).is_err());
        assert!(ExplicitCode::new(3, []).is_err());
        let c = ExplicitCode::new(3, [5, 1, 5]).unwrap();
        assert_eq!(c.words(), &[1, 5]);
    }

    #[test]
    fn pair_counts_match_brute_force() {
        let c = ExplicitCode::new(6, [0, 3, 17, 42, 63, 21]).unwrap();
        let mut brute = vec![0u64; 7];
        for &a in c.words() {
            for &b in c.words() {
                brute[(a ^ b).count_ones() as usize] += 1;
            }
        }
        assert_eq!(c.pair_distance_counts().unwrap(), brute);
    }

    #[test]
    fn covering_radius_of_pair() {
        let c = ExplicitCode::new(5, [0, 31]).unwrap();
        assert_eq!(c.covering_radius().unwrap(), 2);
    }
}
