use std::ops::{Add, Sub};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

use super::dense::{DenseFunction, Domain};

/// Below this many entries the butterflies run sequentially.
const PAR_THRESHOLD: usize = 1 << 14;

/// Unnormalized in-place Walsh-Hadamard transform,
/// `a[y] ← Σ_x a[x] (-1)^{x·y}`. The length must be a power of two.
///
/// Works for any ring-like element type, so the same routine serves floats,
/// machine integers and rationals.
pub fn walsh_hadamard<T>(a: &mut [T])
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Send + Sync,
{
    assert!(a.len().is_power_of_two(), "length must be a power of two");
    if a.len() <= PAR_THRESHOLD {
        sequential(a);
        return;
    }
    let half = a.len() / 2;
    let (lo, hi) = a.split_at_mut(half);
    rayon::join(|| walsh_hadamard(lo), || walsh_hadamard(hi));
    lo.par_iter_mut()
        .zip(hi.par_iter_mut())
        .with_min_len(1 << 12)
        .for_each(|(x, y)| butterfly(x, y));
}

fn sequential<T>(a: &mut [T])
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    let len = a.len();
    let mut h = 1;
    while h < len {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                butterfly(x, y);
            }
        }
        h *= 2;
    }
}

#[inline]
fn butterfly<T>(x: &mut T, y: &mut T)
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    let s = x.clone() + y.clone();
    let d = x.clone() - y.clone();
    *x = s;
    *y = d;
}

/// Forward transform `f̂(y) = 2^{-n} Σ_x f(x) (-1)^{x·y}`.
pub fn fwht<S: Scalar>(f: &DenseFunction<S>) -> Result<DenseFunction<S>> {
    if f.domain() != Domain::Point {
        return Err(invalid("forward transform expects a point-domain function"));
    }
    let n = f.n();
    let mut v = f.values().to_vec();
    walsh_hadamard(&mut v);
    let v = scale_pow2(v, -(n as i32));
    Ok(DenseFunction::from_parts(n, v, Domain::Spectral))
}

/// Inverse transform `f(x) = Σ_y f̂(y) (-1)^{x·y}` (no normalizing factor).
pub fn inverse_fwht<S: Scalar>(f: &DenseFunction<S>) -> Result<DenseFunction<S>> {
    if f.domain() != Domain::Spectral {
        return Err(invalid("inverse transform expects a spectral-domain function"));
    }
    let mut v = f.values().to_vec();
    walsh_hadamard(&mut v);
    Ok(DenseFunction::from_parts(f.n(), v, Domain::Point))
}

/// `(f ∗ g)(x) = Σ_z f(z) g(x ⊕ z)` through the convolution theorem
/// `(f∗g)^ = 2^n f̂ ĝ`. Exact in rational mode.
pub fn convolve<S: Scalar>(f: &DenseFunction<S>, g: &DenseFunction<S>) -> Result<DenseFunction<S>> {
    f.check_same_n(g)?;
    if f.domain() != Domain::Point || g.domain() != Domain::Point {
        return Err(invalid("convolution expects point-domain functions"));
    }
    let n = f.n();
    let mut a = f.values().to_vec();
    let mut b = g.values().to_vec();
    walsh_hadamard(&mut a);
    walsh_hadamard(&mut b);
    let mut c: Vec<S> = a.into_iter().zip(b).map(|(x, y)| x * y).collect();
    walsh_hadamard(&mut c);
    let c = scale_pow2(c, -(n as i32));
    Ok(DenseFunction::from_parts(n, c, Domain::Point))
}

/// Quadratic-time convolution by the defining sum; used as an oracle.
pub fn convolve_direct<S: Scalar>(
    f: &DenseFunction<S>,
    g: &DenseFunction<S>,
) -> Result<DenseFunction<S>> {
    f.check_same_n(g)?;
    let len = f.len();
    let fv = f.values();
    let gv = g.values();
    let out = (0..len)
        .map(|x| {
            (0..len).fold(S::zero(), |acc, z| {
                acc + fv[z].clone() * gv[x ^ z].clone()
            })
        })
        .collect();
    Ok(DenseFunction::from_parts(f.n(), out, Domain::Point))
}

fn scale_pow2<S: Scalar>(v: Vec<S>, e: i32) -> Vec<S> {
    if S::EXACT {
        v.into_par_iter().map(|x| x.mul_pow2(e)).collect()
    } else {
        let c = S::one().mul_pow2(e);
        v.into_iter().map(|x| x * c.clone()).collect()
    }
}
