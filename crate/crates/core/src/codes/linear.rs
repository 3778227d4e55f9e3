use crate::error::{invalid, Error, Result};
use crate::hypercube::{check_n, Word};

/// Largest `log2` of a set the crate will enumerate.
pub const ENUM_BUDGET: usize = 26;

/// A binary linear code, stored as a generator matrix in reduced row echelon
/// form. Row `r` has its pivot at coordinate `pivots[r]` and no other row has
/// that coordinate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    rows: Vec<u32>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Row-reduces the given rows; dependent rows are dropped, so `k` is
    /// the rank.
    pub fn from_rows(n: usize, rows: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_n(n)?;
        let limit = (1u32 << n) - 1;
        let mut basis: Vec<u32> = Vec::new();
        for r in rows {
            if r > limit {
                return Err(invalid(format!("row {r:#b} does not fit length {n}")));
            }
            let mut v = r;
            for b in &basis {
                let p = b.trailing_zeros();
                if v >> p & 1 == 1 {
                    v ^= b;
                }
            }
            if v == 0 {
                continue;
            }
            let p = v.trailing_zeros();
            for b in basis.iter_mut() {
                if *b >> p & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
        basis.sort_unstable_by_key(|b| b.trailing_zeros());
        let pivots = basis.iter().map(|b| b.trailing_zeros() as usize).collect();
        Ok(LinearCode { n, rows: basis, pivots })
    }

    /// Like [`LinearCode::from_rows`] but fails when rows are dependent.
    pub fn from_independent_rows(n: usize, rows: Vec<u32>) -> Result<Self> {
        let k = rows.len();
        let code = Self::from_rows(n, rows)?;
        if code.k() != k {
            return Err(invalid(format!("generator rows have rank {} < {k}", code.k())));
        }
        Ok(code)
    }

    /// `{0,1}^n`.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_rows(n, (0..n).map(|i| 1u32 << i))
    }

    /// `{0}`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::from_rows(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn size(&self) -> u64 {
        1u64 << self.k()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n as f64
    }

    /// Membership by reduction against the pivots.
    pub fn contains(&self, x: u32) -> bool {
        let mut v = x;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v >> p & 1 == 1 {
                v ^= r;
            }
        }
        v == 0
    }

    /// Dual code, built from the non-pivot columns.
    pub fn dual(&self) -> LinearCode {
        let pivot_mask: u32 = self.pivots.iter().fold(0, |m, &p| m | 1 << p);
        let rows = (0..self.n).filter(|j| pivot_mask >> j & 1 == 0).map(|j| {
            let mut h = 1u32 << j;
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if r >> j & 1 == 1 {
                    h |= 1 << p;
                }
            }
            h
        });
        LinearCode::from_rows(self.n, rows).expect("dual rows fit")
    }

    /// True when every row of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.rows.iter().all(|&r| other.contains(r))
    }

    /// Calls `f` on every codeword in Gray-code order.
    pub fn for_each_codeword(&self, mut f: impl FnMut(u32)) -> Result<()> {
        if self.k() > ENUM_BUDGET {
            return Err(Error::BudgetExceeded { what: "codeword enumeration", n: self.k(), limit: ENUM_BUDGET });
        }
        let mut c = 0u32;
        f(c);
        for i in 1u64..self.size() {
            c ^= self.rows[i.trailing_zeros() as usize];
            f(c);
        }
        Ok(())
    }

    pub fn codewords(&self) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(self.size() as usize);
        self.for_each_codeword(|c| out.push(c))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Number of codewords of each weight.
    pub fn weight_counts(&self) -> Result<Vec<u64>> {
        let mut a = vec![0u64; self.n + 1];
        self.for_each_codeword(|c| a[c.count_ones() as usize] += 1)?;
        Ok(a)
    }

    /// Rank of the generator matrix restricted to the columns in `mask`.
    pub fn rank_on(&self, mask: u32) -> usize {
        let mut basis = [0u32; 32];
        let mut rank = 0;
        for &r in &self.rows {
            let mut v = r & mask;
            while v != 0 {
                let h = 31 - v.leading_zeros() as usize;
                if basis[h] == 0 {
                    basis[h] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[h];
            }
        }
        rank
    }

    /// Parity-check matrix columns: `col[i]` is the syndrome of `e_i`.
    pub fn syndrome_columns(&self) -> Vec<u32> {
        let h = self.dual();
        (0..self.n)
            .map(|i| {
                h.rows
                    .iter()
                    .enumerate()
                    .fold(0u32, |s, (j, &row)| s | ((row >> i & 1) << j))
            })
            .collect()
    }

    pub fn syndrome(&self, x: u32, columns: &[u32]) -> u32 {
        let mut s = 0;
        let mut v = x;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            s ^= columns[i];
            v &= v - 1;
        }
        s
    }

    /// Distance of every coset (indexed by syndrome) from the code, by
    /// breadth-first search over the syndrome space.
    pub fn coset_distances(&self) -> Result<Vec<u8>> {
        let r = self.n - self.k();
        if r > ENUM_BUDGET {
            return Err(Error::BudgetExceeded { what: "syndrome search", n: r, limit: ENUM_BUDGET });
        }
        let cols = self.syndrome_columns();
        let mut dist = vec![u8::MAX; 1 << r];
        dist[0] = 0;
        let mut frontier = vec![0u32];
        let mut d = 0u8;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &s in &frontier {
                for &c in &cols {
                    let t = (s ^ c) as usize;
                    if dist[t] == u8::MAX {
                        dist[t] = d;
                        next.push(t as u32);
                    }
                }
            }
            frontier = next;
        }
        Ok(dist)
    }

    /// `ρ(C) = max_x min_c d(x, c)`.
    pub fn covering_radius(&self) -> Result<usize> {
        Ok(self.coset_distances()?.into_iter().max().unwrap_or(0) as usize)
    }

    /// Generator rows as words.
    pub fn generator_words(&self) -> Vec<Word> {
        self.rows
            .iter()
            .map(|&r| Word::new(r, self.n).expect("row fits"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_membership() {
        let c = LinearCode::from_rows(5, [0b00011, 0b00110, 0b00101]).unwrap();
        assert_eq!(c.k(), 2);
        assert!(c.contains(0b00101));
        assert!(!c.contains(0b00001));
        assert!(LinearCode::from_independent_rows(5, vec![0b11, 0b110, 0b101]).is_err());
    }

    #[test]
    fn dual_is_orthogonal() {
        let c = LinearCode::from_rows(8, [0b1011_0001, 0b0110_1100, 0b1111_0000]).unwrap();
        let d = c.dual();
        assert_eq!(c.k() + d.k(), 8);
        for &g in c.rows() {
            for &h in d.rows() {
                assert_eq!((g & h).count_ones() % 2, 0);
            }
        }
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn rank_on_masks() {
        let c = LinearCode::full(6).unwrap();
        assert_eq!(c.rank_on(0b101101), 4);
        let rep = LinearCode::from_rows(6, [0b111111]).unwrap();
        assert_eq!(rep.rank_on(0), 0);
        assert_eq!(rep.rank_on(0b1), 1);
    }

    #[test]
    fn covering_radius_by_enumeration() {
        let rep = LinearCode::from_rows(4, [0b1111]).unwrap();
        assert_eq!(rep.covering_radius().unwrap(), 2);
        let c = LinearCode::from_rows(7, [0b1011_000, 0b0101_100, 0b0010_110, 0b0001_011]).unwrap();
        let words = c.codewords().unwrap();
        let brute = (0u32..128)
            .map(|x| words.iter().map(|&w| (w ^ x).count_ones()).min().unwrap())
            .max()
            .unwrap();
        assert_eq!(c.covering_radius().unwrap(), brute as usize);
    }
}
