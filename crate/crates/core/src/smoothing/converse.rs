use crate::error::{invalid, Error, Result};

/// Binomials beyond this overflow `f64`.
const MAX_RADIAL_N: usize = 1000;

/// `C(m, j)` for `j = 0..=m` in floating point.
fn binomial_row(m: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = 1.0f64;
    for j in 0..=m {
        row.push(c);
        c = c * (m - j) as f64 / (j + 1) as f64;
    }
    row
}

/// `Pr(Bin(m, δ) = j)` for `j = 0..=m`.
fn binomial_pmf(m: usize, delta: f64) -> Vec<f64> {
    binomial_row(m)
        .into_iter()
        .enumerate()
        .map(|(j, c)| c * delta.powi(j as i32) * (1.0 - delta).powi((m - j) as i32))
        .collect()
}

/// `D(T_δ f_{B(0,t)} ‖ U_n)` in bits, computed on weights: the output is
/// radial, so `H(Z) = H(|Z|) + E log C(n, |Z|)`.
pub fn ball_code_divergence(n: usize, t: usize, delta: f64) -> Result<f64> {
    if n == 0 || n > MAX_RADIAL_N {
        return Err(Error::DimensionOutOfRange { n, max: MAX_RADIAL_N });
    }
    if t > n {
        return Err(invalid(format!("radius {t} exceeds length {n}")));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(invalid(format!("flip probability {delta} outside [0,1]")));
    }
    let row = binomial_row(n);
    let volume: f64 = row[..=t].iter().sum();
    let mut out = vec![0.0; n + 1];
    for i in 0..=t {
        let pi = row[i] / volume;
        let pa = binomial_pmf(i, delta);
        let pb = binomial_pmf(n - i, delta);
        for (a, x) in pa.iter().enumerate() {
            for (b, y) in pb.iter().enumerate() {
                out[i - a + b] += pi * x * y;
            }
        }
    }
    let h: f64 = out
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(w, p)| p * (row[w].log2() - p.log2()))
        .sum();
    Ok((n as f64 - h).max(0.0))
}
