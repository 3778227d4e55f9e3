use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::hypercube::MAX_N;

use super::linear::LinearCode;

/// Binary Hamming code of length `2^m - 1`.
pub fn hamming(m: usize) -> Result<LinearCode> {
    if !(2..=4).contains(&m) {
        return Err(invalid(format!("hamming(m) needs 2 ≤ m ≤ 4, got {m}")));
    }
    let n = (1 << m) - 1;
    // Parity checks: column j is the binary expansion of j + 1.
    let checks = (0..m).map(|b| (0..n).fold(0u32, |row, j| row | ((((j + 1) >> b) & 1) as u32) << j));
    Ok(LinearCode::from_rows(n, checks)?.dual())
}

/// Binary Golay code `[23, 12, 7]`, cyclic with generator polynomial
/// `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`.
pub fn golay23() -> LinearCode {
    let g: u32 = 0xC75;
    LinearCode::from_rows(23, (0..12).map(|i| g << i)).expect("golay generator")
}

pub fn repetition(n: usize) -> Result<LinearCode> {
    check_len(n)?;
    LinearCode::from_rows(n, [((1u64 << n) - 1) as u32])
}

/// Even-weight code.
pub fn parity(n: usize) -> Result<LinearCode> {
    check_len(n)?;
    LinearCode::from_rows(n, (1..n).map(|i| 1u32 | 1 << i))
}

/// Reed-Muller code `RM(r, m)`: evaluations of monomials of degree `≤ r` at
/// the points of `F_2^m`, point `p` sitting at coordinate `p`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    let n = 1usize << m;
    if m == 0 || n > MAX_N || r > m {
        return Err(invalid(format!("reed_muller({r},{m}) needs 1 ≤ m ≤ 4 and r ≤ m")));
    }
    let rows = (0u32..1 << m).filter(|s| s.count_ones() as usize <= r).map(|s| {
        (0..n).fold(0u32, |row, p| if p as u32 & s == s { row | 1 << p } else { row })
    });
    LinearCode::from_rows(n, rows)
}

/// Uniformly random `[n, k]` code; matrices are redrawn until they have full
/// rank.
pub fn random_linear(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    check_len(n)?;
    if k > n {
        return Err(invalid(format!("random_linear needs k ≤ n, got k = {k}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = ((1u64 << n) - 1) as u32;
    loop {
        let rows: Vec<u32> = (0..k).map(|_| rng.gen::<u32>() & mask).collect();
        let code = LinearCode::from_rows(n, rows)?;
        if code.k() == k {
            return Ok(code);
        }
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(invalid(format!("length {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

/// Builds a family member from a name and comma-separated integer
/// parameters: `hamming 3`, `golay23`, `repetition 5`, `parity 4`,
/// `rm 1,4`, `random 12,6,7` (n, k, seed), `full 5`, `zero 5`.
pub fn family(name: &str, params: &[u64]) -> Result<LinearCode> {
    let p = |i: usize| -> Result<usize> {
        params
            .get(i)
            .map(|&v| v as usize)
            .ok_or_else(|| invalid(format!("family {name} needs more parameters")))
    };
    let code = match name {
        "hamming" => hamming(p(0)?)?,
        "golay23" | "golay" => golay23(),
        "repetition" | "rep" => repetition(p(0)?)?,
        "parity" | "even" => parity(p(0)?)?,
        "rm" | "reed_muller" | "reed-muller" => reed_muller(p(0)?, p(1)?)?,
        "random" | "random_linear" => random_linear(p(0)?, p(1)?, params.get(2).copied().unwrap_or(0))?,
        "full" => LinearCode::full(p(0)?)?,
        "zero" => LinearCode::zero(p(0)?)?,
        other => return Err(invalid(format!("unknown code family {other:?}"))),
    };
    Ok(code)
}
