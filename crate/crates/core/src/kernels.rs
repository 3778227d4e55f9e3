//! Noise kernels: Bernoulli, ball, sphere, subcube, arbitrary radial and
//! dense pmfs, together with Rényi entropies.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::hypercube::{ball_volume, binomial, check_n, DenseFunction, RadialProfile};
use crate::scalar::{parse_rational, rational_to_f64, Rational, Scalar};

/// Shape of a kernel.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelForm {
    /// i.i.d. bit flips with probability `δ`.
    Bernoulli(Rational),
    /// Uniform on the ball of radius `t`.
    Ball(usize),
    /// Uniform on the sphere of radius `t`.
    Sphere(usize),
    /// Uniform on `{x : x_i = 0 for i ∈ S}`; convolving with it is the
    /// conditional average `E(f | Γ = S)`.
    Subcube(Vec<usize>),
    /// Arbitrary radial pmf, by per-weight value `r(i)`.
    Radial(RadialProfile<Rational>),
    /// Arbitrary pmf on the cube.
    Dense(DenseFunction<f64>),
}

/// A noise pmf on `{0,1}^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    n: usize,
    form: KernelForm,
}

impl Kernel {
    pub fn bernoulli(n: usize, delta: Rational) -> Result<Self> {
        check_n(n)?;
        if delta.is_negative() || delta > Rational::one() {
            return Err(invalid(format!("flip probability {delta} outside [0,1]")));
        }
        Ok(Kernel { n, form: KernelForm::Bernoulli(delta) })
    }

    /// Bernoulli kernel from a float, read as its shortest decimal form so
    /// that `0.1` means `1/10`.
    pub fn bernoulli_f64(n: usize, delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(invalid("non-finite flip probability"));
        }
        Self::bernoulli(n, parse_rational(&format!("{delta}"))?)
    }

    pub fn ball(n: usize, t: usize) -> Result<Self> {
        check_n(n)?;
        if t > n {
            return Err(invalid(format!("ball radius {t} exceeds n = {n}")));
        }
        Ok(Kernel { n, form: KernelForm::Ball(t) })
    }

    pub fn sphere(n: usize, t: usize) -> Result<Self> {
        check_n(n)?;
        if t > n {
            return Err(invalid(format!("sphere radius {t} exceeds n = {n}")));
        }
        Ok(Kernel { n, form: KernelForm::Sphere(t) })
    }

    pub fn subcube(n: usize, coords: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_n(n)?;
        let mut s: Vec<usize> = coords.into_iter().collect();
        s.sort_unstable();
        s.dedup();
        if let Some(&c) = s.iter().find(|&&c| c >= n) {
            return Err(Error::IndexOutOfRange { what: "coordinate", value: c, max: n - 1 });
        }
        Ok(Kernel { n, form: KernelForm::Subcube(s) })
    }

    /// Radial kernel from nonnegative per-weight values. The values are
    /// rescaled so the lifted function sums to one.
    pub fn radial(profile: RadialProfile<Rational>) -> Result<Self> {
        check_n(profile.n())?;
        if profile.values().iter().any(|v| v.is_negative()) {
            return Err(invalid("radial kernel has a negative value"));
        }
        let mass = profile.mass();
        if mass.is_zero() {
            return Err(invalid("radial kernel is identically zero"));
        }
        let normalized = profile.map(|v| v / &mass);
        Ok(Kernel { n: normalized.n(), form: KernelForm::Radial(normalized) })
    }

    pub fn dense(f: DenseFunction<f64>) -> Result<Self> {
        f.require_pmf()?;
        Ok(Kernel { n: f.n(), form: KernelForm::Dense(f) })
    }

    /// Parses `bernoulli:0.1`, `ball:3`, `sphere:2`, `subcube:0,2,5` or
    /// `radial:@file.csv`.
    pub fn parse(n: usize, spec: &str) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| invalid(format!("kernel spec {spec:?} lacks ':'")))?;
        let arg = arg.trim();
        match kind.trim() {
            "bernoulli" | "bsc" => Self::bernoulli(n, parse_rational(arg)?),
            "ball" => Self::ball(n, parse_usize(arg)?),
            "sphere" => Self::sphere(n, parse_usize(arg)?),
            "subcube" => {
                let coords = if arg.is_empty() {
                    Vec::new()
                } else {
                    arg.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?
                };
                Self::subcube(n, coords)
            }
            "radial" => {
                let path = arg
                    .strip_prefix('@')
                    .ok_or_else(|| invalid("radial kernels are read from a file: radial:@path"))?;
                let profile = read_radial_file(Path::new(path))?;
                if profile.n() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: profile.n() });
                }
                Self::radial(profile)
            }
            other => Err(invalid(format!("unknown kernel kind {other:?}"))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &KernelForm {
        &self.form
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self.form, KernelForm::Subcube(_) | KernelForm::Dense(_))
    }

    /// Exact per-weight values `r(i)` for radial forms.
    pub fn profile(&self) -> Option<RadialProfile<Rational>> {
        let n = self.n;
        let zero = Rational::zero;
        let values = match &self.form {
            KernelForm::Bernoulli(d) => {
                let q = Rational::one() - d;
                (0..=n)
                    .map(|i| num_traits::pow(d.clone(), i) * num_traits::pow(q.clone(), n - i))
                    .collect()
            }
            KernelForm::Ball(t) => {
                let v = Rational::from_integer(ball_volume(n, *t).ok()?);
                (0..=n).map(|i| if i <= *t { v.recip() } else { zero() }).collect()
            }
            KernelForm::Sphere(t) => {
                let v = Rational::from_integer(binomial(n, *t));
                (0..=n).map(|i| if i == *t { v.recip() } else { zero() }).collect()
            }
            KernelForm::Radial(p) => return Some(p.clone()),
            KernelForm::Subcube(_) | KernelForm::Dense(_) => return None,
        };
        RadialProfile::new(n, values).ok()
    }

    pub fn profile_f64(&self) -> Option<RadialProfile<f64>> {
        self.profile().map(|p| p.to_f64())
    }

    /// Radial Fourier transform `r̂(k)`, exact.
    pub fn spectrum(&self) -> Result<RadialProfile<Rational>> {
        self.profile().ok_or(Error::NotRadial)?.fourier()
    }

    /// The kernel as a pmf on all `2^n` points.
    pub fn lift<S: Scalar>(&self) -> Result<DenseFunction<S>> {
        match &self.form {
            KernelForm::Subcube(s) => {
                let mask: u32 = s.iter().fold(0, |m, &c| m | 1 << c);
                let free = self.n - s.len();
                let p = S::one().mul_pow2(-(free as i32));
                let v = (0..1u32 << self.n)
                    .map(|x| if x & mask == 0 { p.clone() } else { S::zero() })
                    .collect();
                DenseFunction::new(self.n, v)
            }
            KernelForm::Dense(f) => {
                let v = f
                    .values()
                    .iter()
                    .map(|x| {
                        Rational::from_float(*x)
                            .map(|r| S::from_rational(&r))
                            .ok_or_else(|| invalid("non-finite kernel value"))
                    })
                    .collect::<Result<Vec<S>>>()?;
                DenseFunction::new(self.n, v)
            }
            _ => {
                let p = self.profile().ok_or(Error::NotRadial)?;
                let converted = p.map(S::from_rational);
                converted.lift()
            }
        }
    }

    /// `ρ(r) = max{|x| : r(x) ≠ 0}`.
    pub fn radius(&self) -> usize {
        match &self.form {
            KernelForm::Bernoulli(d) => {
                if d.is_zero() {
                    0
                } else {
                    self.n
                }
            }
            KernelForm::Ball(t) | KernelForm::Sphere(t) => *t,
            KernelForm::Subcube(s) => self.n - s.len(),
            KernelForm::Radial(p) => p.radius().unwrap_or(0),
            KernelForm::Dense(f) => f
                .values()
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(x, _)| (x as u32).count_ones() as usize)
                .max()
                .unwrap_or(0),
        }
    }

    /// `Σ_x r(x)^α`, exactly.
    pub fn power_sum_exact(&self, alpha: u32) -> Result<Rational> {
        if let Some(p) = self.profile() {
            let n = self.n;
            return Ok(p
                .values()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| Rational::from_integer(binomial(n, i)) * num_traits::pow(v.clone(), alpha as usize))
                .sum());
        }
        let f = self.lift::<Rational>()?;
        Ok(f.values().iter().map(|v| num_traits::pow(v.clone(), alpha as usize)).sum())
    }

    /// Largest value `max_x r(x)`, exactly.
    pub fn max_exact(&self) -> Result<Rational> {
        let values = match self.profile() {
            Some(p) => p.values().to_vec(),
            None => self.lift::<Rational>()?.into_values(),
        };
        Ok(values.into_iter().max().unwrap_or_default())
    }

    /// Number of points where `r` is nonzero.
    pub fn support_size(&self) -> Result<BigInt> {
        if let Some(p) = self.profile() {
            return Ok((0..=self.n)
                .filter(|&i| !p.values()[i].is_zero())
                .map(|i| binomial(self.n, i))
                .sum());
        }
        let f = self.lift::<f64>()?;
        Ok(BigInt::from(f.values().iter().filter(|v| **v != 0.0).count()))
    }

    /// `H_α(r)` in bits.
    pub fn renyi_entropy(&self, alpha: f64) -> Result<f64> {
        check_order(alpha)?;
        let n = self.n as f64;
        Ok(match &self.form {
            KernelForm::Bernoulli(d) => n * binary_renyi(alpha, rational_to_f64(d)),
            KernelForm::Ball(t) => log2_big(&ball_volume(self.n, *t)?),
            KernelForm::Sphere(t) => log2_big(&binomial(self.n, *t)),
            KernelForm::Subcube(s) => (self.n - s.len()) as f64,
            KernelForm::Radial(p) => radial_renyi(&p.to_f64(), alpha),
            KernelForm::Dense(f) => renyi_entropy(f, alpha)?,
        })
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            KernelForm::Bernoulli(d) => write!(f, "bernoulli:{d}"),
            KernelForm::Ball(t) => write!(f, "ball:{t}"),
            KernelForm::Sphere(t) => write!(f, "sphere:{t}"),
            KernelForm::Subcube(s) => {
                let parts: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                write!(f, "subcube:{}", parts.join(","))
            }
            KernelForm::Radial(p) => {
                let parts: Vec<String> = p.values().iter().map(|v| v.to_string()).collect();
                write!(f, "radial:[{}]", parts.join(","))
            }
            KernelForm::Dense(_) => write!(f, "dense"),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| invalid(format!("expected a nonnegative integer, got {s:?}")))
}

/// Reads per-weight values separated by commas, whitespace or newlines;
/// `#` starts a comment. `n` is one less than the number of values.
pub fn read_radial_file(path: &Path) -> Result<RadialProfile<Rational>> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v = parse_rational(tok).map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            values.push(v);
        }
    }
    if values.len() < 2 {
        return Err(invalid("radial file needs at least two values"));
    }
    let n = values.len() - 1;
    RadialProfile::new(n, values)
}

fn log2_big(v: &BigInt) -> f64 {
    rational_to_f64(&Rational::from_integer(v.clone())).log2()
}

/// Parses a Rényi order: a number, a fraction `p/q`, or `inf`.
pub fn parse_order(s: &str) -> Result<f64> {
    let t = s.trim();
    if matches!(t, "inf" | "Inf" | "infinity" | "∞") {
        return Ok(f64::INFINITY);
    }
    let a = rational_to_f64(&parse_rational(t)?);
    check_order(a)?;
    Ok(a)
}

/// Comma-separated list of orders.
pub fn parse_orders(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_order).collect()
}

/// Formats an order, printing `inf` for infinity.
pub fn format_order(alpha: f64) -> String {
    if alpha.is_infinite() {
        "inf".to_string()
    } else {
        format!("{alpha}")
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::UnsupportedOrder(format!("{alpha}")));
    }
    Ok(())
}

/// Binary Rényi entropy `h_α(δ)` in bits.
pub fn binary_renyi(alpha: f64, delta: f64) -> f64 {
    if delta == 0.0 || delta == 1.0 {
        return 0.0;
    }
    if delta == 0.5 {
        return 1.0;
    }
    let q = 1.0 - delta;
    if alpha == 0.0 {
        1.0
    } else if alpha == 1.0 {
        -delta * delta.log2() - q * q.log2()
    } else if alpha.is_infinite() {
        -delta.max(q).log2()
    } else {
        // log(δ^α + q^α) computed relative to the larger term.
        let m = delta.max(q);
        let s = (delta / m).powf(alpha) + (q / m).powf(alpha);
        (alpha * m.log2() + s.log2()) / (1.0 - alpha)
    }
}

/// Binary Shannon entropy `h(δ)`.
pub fn binary_entropy(delta: f64) -> f64 {
    binary_renyi(1.0, delta)
}

/// The `δ ∈ [0, 1/2]` with `h_α(δ) = h`, by bisection.
pub fn binary_renyi_inverse(alpha: f64, h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(invalid(format!("entropy {h} outside [0,1]")));
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    if alpha == 0.0 {
        return Err(invalid("h_0 is constant on (0,1); no inverse"));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_renyi(alpha, mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `H_α(p)` in bits for a pmf on the cube, evaluated in the log domain.
pub fn renyi_entropy<S: Scalar>(p: &DenseFunction<S>, alpha: f64) -> Result<f64> {
    check_order(alpha)?;
    p.require_pmf()?;
    let v: Vec<f64> = p.values().iter().map(Scalar::to_f64).collect();
    Ok(weighted_renyi(v.iter().map(|&x| (1.0, x)), alpha))
}

/// `H_α` of a radial pmf, `(1/(1-α)) log Σ_i C(n,i) r(i)^α`.
pub fn radial_renyi(p: &RadialProfile<f64>, alpha: f64) -> f64 {
    let n = p.n();
    let mult: Vec<f64> = (0..=n)
        .map(|i| rational_to_f64(&Rational::from_integer(binomial(n, i))))
        .collect();
    weighted_renyi(mult.into_iter().zip(p.values().iter().copied()), alpha)
}

/// Rényi entropy of a pmf given as `(multiplicity, value)` pairs.
fn weighted_renyi(items: impl Iterator<Item = (f64, f64)> + Clone, alpha: f64) -> f64 {
    let support = items.clone().filter(|&(c, v)| c > 0.0 && v > 0.0);
    if alpha == 0.0 {
        return support.map(|(c, _)| c).sum::<f64>().log2();
    }
    let max = support.clone().fold(0.0f64, |m, (_, v)| m.max(v));
    if alpha.is_infinite() {
        return -max.log2();
    }
    if alpha == 1.0 {
        return -support.map(|(c, v)| c * v * v.log2()).sum::<f64>();
    }
    let s: f64 = support.map(|(c, v)| c * (v / max).powf(alpha)).sum();
    (alpha * max.log2() + s.log2()) / (1.0 - alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::convolve;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn lifts_sum_to_one() {
        let n = 6;
        let kernels = [
            Kernel::bernoulli(n, q(1, 3)).unwrap(),
            Kernel::ball(n, 2).unwrap(),
            Kernel::sphere(n, 3).unwrap(),
            Kernel::subcube(n, [0, 4]).unwrap(),
            Kernel::radial(RadialProfile::new(n, (0..=n as i64).map(|i| q(i + 1, 1)).collect()).unwrap()).unwrap(),
        ];
        for k in &kernels {
            let f = k.lift::<Rational>().unwrap();
            assert_eq!(f.sum(), Rational::one(), "{k}");
        }
    }

    #[test]
    fn unbiased_coin_is_uniform() {
        let f = Kernel::bernoulli(4, q(1, 2)).unwrap().lift::<Rational>().unwrap();
        assert!(f.is_uniform_pmf());
    }

    #[test]
    fn ball_lift_values() {
        let f = Kernel::ball(7, 1).unwrap().lift::<Rational>().unwrap();
        let eighth = q(1, 8);
        assert_eq!(f.values().iter().filter(|v| **v == eighth).count(), 8);
        assert_eq!(f.values().iter().filter(|v| v.is_zero()).count(), 120);
    }

    #[test]
    fn radii() {
        assert_eq!(Kernel::ball(9, 4).unwrap().radius(), 4);
        assert_eq!(Kernel::bernoulli(9, q(1, 10)).unwrap().radius(), 9);
        assert_eq!(Kernel::bernoulli(9, q(0, 1)).unwrap().radius(), 0);
        assert_eq!(Kernel::subcube(9, [1, 2]).unwrap().radius(), 7);
    }

    #[test]
    fn parameters_validated() {
        assert!(Kernel::ball(5, 6).is_err());
        assert!(Kernel::bernoulli(5, q(3, 2)).is_err());
        assert!(Kernel::bernoulli(5, q(-1, 2)).is_err());
        assert!(Kernel::parse(5, "ball:x").is_err());
        assert!(Kernel::parse(5, "gauss:1").is_err());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(Kernel::parse(8, "bernoulli:0.1").unwrap(), Kernel::bernoulli(8, q(1, 10)).unwrap());
        assert_eq!(Kernel::parse(8, "ball:3").unwrap(), Kernel::ball(8, 3).unwrap());
        assert_eq!(Kernel::parse(8, "sphere:2").unwrap(), Kernel::sphere(8, 2).unwrap());
        assert_eq!(Kernel::parse(8, "subcube:5,0,2").unwrap(), Kernel::subcube(8, [0, 2, 5]).unwrap());
    }

    #[test]
    fn radial_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.csv");
        std::fs::write(&path, "# ball of radius 1 on n=3, unnormalized\n1,1\n0,0\n").unwrap();
        let k = Kernel::parse(3, &format!("radial:@{}", path.display())).unwrap();
        let ball = Kernel::ball(3, 1).unwrap();
        assert_eq!(k.lift::<Rational>().unwrap(), ball.lift::<Rational>().unwrap());
    }

    #[test]
    fn entropy_of_uniform_is_n() {
        let u = DenseFunction::<f64>::uniform(6).unwrap();
        for a in [0.0, 0.5, 1.0, 2.0, 7.5, f64::INFINITY] {
            assert!((renyi_entropy(&u, a).unwrap() - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_entropy_matches_direct_sum() {
        let k = Kernel::bernoulli(8, q(3, 10)).unwrap();
        let f = k.lift::<f64>().unwrap();
        let direct = -(f.values().iter().map(|p| p * p).sum::<f64>()).log2();
        assert!((k.renyi_entropy(2.0).unwrap() - direct).abs() < 1e-12);
        assert!((renyi_entropy(&f, 2.0).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn ball_support_entropy() {
        let k = Kernel::ball(7, 1).unwrap();
        assert_eq!(k.renyi_entropy(0.0).unwrap(), 3.0);
        let f = k.lift::<f64>().unwrap();
        assert!((renyi_entropy(&f, 0.0).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn radial_entropy_matches_dense() {
        let k = Kernel::radial(RadialProfile::new(6, (0..=6).map(|i| q(i * i + 1, 1)).collect()).unwrap()).unwrap();
        let f = k.lift::<f64>().unwrap();
        for a in [0.0, 0.5, 1.0, 2.0, 3.0, f64::INFINITY] {
            let x = k.renyi_entropy(a).unwrap();
            let y = renyi_entropy(&f, a).unwrap();
            assert!((x - y).abs() < 1e-12, "alpha {a}: {x} vs {y}");
        }
    }

    #[test]
    fn binary_renyi_values() {
        for a in [0.0, 0.3, 1.0, 2.0, 5.0, f64::INFINITY] {
            assert_eq!(binary_renyi(a, 0.5), 1.0);
        }
        assert!((binary_renyi(2.0, 0.25) + 0.625f64.log2()).abs() < 1e-15);
        for d in [0.01, 0.1, 0.3, 0.5] {
            assert!((1.0 - binary_renyi(f64::INFINITY, d) - (1.0 + (1.0 - d).log2())).abs() < 1e-15);
        }
    }

    #[test]
    fn binary_renyi_inverse_roundtrip() {
        for a in [0.5, 1.0, 2.0, f64::INFINITY] {
            for d in [0.01, 0.11, 0.3, 0.49] {
                let h = binary_renyi(a, d);
                let back = binary_renyi_inverse(a, h).unwrap();
                assert!((back - d).abs() < 1e-9, "alpha {a} delta {d} -> {back}");
            }
        }
    }

    #[test]
    fn subcube_is_conditional_average() {
        let n = 6;
        let s = [1usize, 3, 4];
        let mask: u32 = s.iter().fold(0, |m, &c| m | 1 << c);
        let vals: Vec<f64> = (0..64).map(|x| ((x * 37 + 11) % 17) as f64).collect();
        let f = DenseFunction::new(n, vals.clone()).unwrap();
        let k = Kernel::subcube(n, s).unwrap().lift::<f64>().unwrap();
        let conv = convolve(&f, &k).unwrap();
        let free = n - s.len();
        for x in 0..64u32 {
            let avg: f64 = (0..64u32)
                .filter(|y| y & mask == x & mask)
                .map(|y| vals[y as usize])
                .sum::<f64>()
                / (1 << free) as f64;
            assert!((conv.values()[x as usize] - avg).abs() < 1e-12);
        }
    }

    #[test]
    fn orders_parse() {
        assert_eq!(parse_orders("1,2,inf").unwrap(), vec![1.0, 2.0, f64::INFINITY]);
        assert_eq!(parse_order("3/2").unwrap(), 1.5);
        assert!(parse_order("-1").is_err());
    }
}
