use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn check_index(what: &'static str, value: usize, n: usize) -> Result<()> {
    if value > n {
        return Err(Error::IndexOutOfRange { what, value, max: n });
    }
    Ok(())
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `K_t(x) = Σ_j (-1)^j C(x, j) C(n-x, t-j)`.
pub fn krawtchouk(n: usize, t: usize, x: usize) -> Result<BigInt> {
    check_index("t", t, n)?;
    check_index("x", x, n)?;
    Ok(krawtchouk_unchecked(n, t, x))
}

fn krawtchouk_unchecked(n: usize, t: usize, x: usize) -> BigInt {
    (0..=t.min(x)).fold(BigInt::zero(), |acc, j| {
        let term = binomial(x, j) * binomial(n - x, t - j);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Lloyd polynomial `L_t(x) = Σ_{s ≤ t} K_s(x)`.
pub fn lloyd(n: usize, t: usize, x: usize) -> Result<BigInt> {
    check_index("t", t, n)?;
    check_index("x", x, n)?;
    Ok((0..=t).map(|s| krawtchouk_unchecked(n, s, x)).sum())
}

/// `V_t = |B(0, t)| = Σ_{s ≤ t} C(n, s)`.
pub fn ball_volume(n: usize, t: usize) -> Result<BigInt> {
    check_index("t", t, n)?;
    Ok((0..=t).map(|s| binomial(n, s)).sum())
}

/// `μ_t(i) = |B(0,t) ∩ B(x,t)|` for any `|x| = i`, by counting: a point `y`
/// that flips `a` of the `i` support coordinates of `x` and `b` of the others
/// has `|y| = a + b` and `d(x, y) = i - a + b`.
pub fn mu(n: usize, t: usize, i: usize) -> Result<BigInt> {
    check_index("t", t, n)?;
    check_index("i", i, n)?;
    let mut acc = BigInt::zero();
    for a in 0..=i.min(t) {
        for b in 0..=(n - i).min(t - a) {
            if i - a + b <= t {
                acc += binomial(i, a) * binomial(n - i, b);
            }
        }
    }
    Ok(acc)
}

/// `μ_t(i) = 2^{-n} Σ_k L_t(k)² K_k(i)`, evaluated exactly.
pub fn mu_spectral(n: usize, t: usize, i: usize) -> Result<BigInt> {
    check_index("t", t, n)?;
    check_index("i", i, n)?;
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let l = lloyd(n, t, k)?;
        acc += &l * &l * krawtchouk_unchecked(n, k, i);
    }
    let (q, r) = acc.div_rem(&(BigInt::one() << n));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// All `K_t(x)` for `0 ≤ t, x ≤ n`, row-major in `t`.
#[derive(Clone, Debug)]
pub struct KrawtchoukTable {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Self {
        // K_0 = 1, K_1 = n - 2x, (t+1) K_{t+1} = (n - 2x) K_t - (n - t + 1) K_{t-1}
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigInt::one(); n + 1]);
        if n >= 1 {
            rows.push((0..=n).map(|x| BigInt::from(n as i64 - 2 * x as i64)).collect());
        }
        for t in 1..n {
            let next = (0..=n)
                .map(|x| {
                    let a = BigInt::from(n as i64 - 2 * x as i64) * &rows[t][x];
                    let b = BigInt::from((n - t + 1) as i64) * &rows[t - 1][x];
                    (a - b) / BigInt::from(t as i64 + 1)
                })
                .collect();
            rows.push(next);
        }
        KrawtchoukTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K_t(x)`; panics when an index exceeds `n`.
    pub fn get(&self, t: usize, x: usize) -> &BigInt {
        &self.rows[t][x]
    }

    pub fn row(&self, t: usize) -> &[BigInt] {
        &self.rows[t]
    }

    /// Largest `|K_t(x)|` over the table.
    pub fn max_abs(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }
}
