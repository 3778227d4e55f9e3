use std::num::Wrapping;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::hypercube::{convolve, walsh_hadamard, DenseFunction, KrawtchoukTable, MAX_EXACT_N};
use crate::kernels::Kernel;
use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Largest dimension for float smoothing.
pub const MAX_FLOAT_N: usize = 26;

/// Above this dimension float smoothing skips the exact integer path to save
/// memory.
const EXACT_FOR_FLOAT_N: usize = 22;

/// `T_r f_C` in exact form: the value at `x` is
/// `numerators[x] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFunction {
    n: usize,
    numerators: Vec<i128>,
    denominator: BigInt,
}

impl ExactFunction {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numerators(&self) -> &[i128] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn value(&self, x: u32) -> Rational {
        Rational::new(BigInt::from(self.numerators[x as usize]), self.denominator.clone())
    }

    /// True when every value is exactly `2^{-n}`.
    pub fn is_uniform(&self) -> bool {
        let target = &self.denominator >> self.n;
        if (&target << self.n) != self.denominator {
            return false;
        }
        match target.to_i128() {
            Some(t) => self.numerators.par_iter().all(|&v| v == t),
            None => false,
        }
    }

    /// Largest `|2^n f(x) - 1|`, in floating point.
    pub fn max_deviation_from_uniform(&self) -> f64 {
        let den = rational_to_f64(&Rational::from_integer(self.denominator.clone()));
        let scale = (self.n as f64).exp2();
        self.numerators
            .par_iter()
            .map(|&v| (v as f64 * scale / den - 1.0).abs())
            .reduce(|| 0.0, f64::max)
    }

    pub fn to_dense(&self) -> Result<DenseFunction<Rational>> {
        if self.n > MAX_EXACT_N {
            return Err(Error::BudgetExceeded { what: "rational dense function", n: self.n, limit: MAX_EXACT_N });
        }
        let v = self
            .numerators
            .par_iter()
            .map(|&v| Rational::new(BigInt::from(v), self.denominator.clone()))
            .collect();
        DenseFunction::new(self.n, v)
    }

    pub fn to_f64(&self) -> DenseFunction<f64> {
        let den = &self.denominator;
        let bits = den.bits();
        // Scale the denominator into f64 range before dividing.
        let shift = bits.saturating_sub(1000);
        let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
        let corr = (-(shift as f64)).exp2();
        let v = self
            .numerators
            .par_iter()
            .map(|&v| v as f64 / d * corr)
            .collect();
        DenseFunction::new(self.n, v).expect("length matches")
    }

    /// `Σ_x f(x)^α · denominator^α`, i.e. the numerator of `Σ f^α`.
    pub fn power_sum_numerator(&self, alpha: u32) -> BigInt {
        self.numerators
            .par_iter()
            .filter(|v| **v != 0)
            .map(|&v| num_traits::pow(BigInt::from(v), alpha as usize))
            .reduce(BigInt::zero, |a, b| a + b)
    }

    pub fn max_numerator(&self) -> i128 {
        self.numerators.par_iter().copied().max().unwrap_or(0)
    }

    pub fn support_size(&self) -> u64 {
        self.numerators.par_iter().filter(|v| **v != 0).count() as u64
    }
}

fn wrap(b: &BigInt) -> Wrapping<i128> {
    // Two's-complement reduction modulo 2^128.
    let m = BigInt::one() << 128u32;
    let r = b.mod_floor(&m);
    Wrapping(r.to_u128().expect("reduced below 2^128") as i128)
}

/// The transform of `D · r` (integer valued) at every weight or point, and
/// the common denominator `D` of the kernel values.
enum IntegerSpectrum {
    Radial(Vec<Wrapping<i128>>),
    Dense(Vec<Wrapping<i128>>),
}

fn integer_spectrum(kernel: &Kernel) -> Result<(IntegerSpectrum, BigInt)> {
    let n = kernel.n();
    if let Some(p) = kernel.profile() {
        let den = p.values().iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let nums: Vec<BigInt> = p
            .values()
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        let table = KrawtchoukTable::new(n);
        let spec = (0..=n)
            .map(|k| {
                let s: BigInt = nums
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| v * table.get(i, k))
                    .sum();
                wrap(&s)
            })
            .collect();
        return Ok((IntegerSpectrum::Radial(spec), den));
    }
    if n > MAX_EXACT_N {
        return Err(Error::BudgetExceeded { what: "exact non-radial kernel", n, limit: MAX_EXACT_N });
    }
    let lifted = kernel.lift::<Rational>()?;
    let den = lifted.values().iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    if den.bits() > 120 {
        return Err(Error::ExactOverflow);
    }
    let mut v: Vec<Wrapping<i128>> = lifted
        .values()
        .iter()
        .map(|x| wrap(&(x.numer() * (&den / x.denom()))))
        .collect();
    walsh_hadamard(&mut v);
    Ok((IntegerSpectrum::Dense(v), den))
}

/// `T_r f_C` computed exactly with 128-bit integer transforms.
///
/// With `r = m / D` for integers `m(x)`, the value at `x` is
/// `(1_C ∗ m)(x) / (|C| D)`. The transforms run modulo `2^128`; the result is
/// exact as long as `2^n D < 2^127`, which is checked first.
pub fn smooth_exact(code: &Code, kernel: &Kernel) -> Result<ExactFunction> {
    let n = code.n();
    if kernel.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.n() });
    }
    if n > MAX_FLOAT_N {
        return Err(Error::BudgetExceeded { what: "exact smoothing", n, limit: MAX_FLOAT_N });
    }
    let (spectrum, den) = integer_spectrum(kernel)?;
    if n as u64 + den.bits() > 126 {
        return Err(Error::ExactOverflow);
    }
    let mut a = vec![Wrapping(0i128); 1 << n];
    for w in code.words()? {
        a[w as usize] = Wrapping(1);
    }
    walsh_hadamard(&mut a);
    match &spectrum {
        IntegerSpectrum::Radial(s) => a
            .par_iter_mut()
            .enumerate()
            .for_each(|(y, v)| *v *= s[(y as u32).count_ones() as usize]),
        IntegerSpectrum::Dense(s) => a.par_iter_mut().zip(s).for_each(|(v, w)| *v *= *w),
    }
    walsh_hadamard(&mut a);
    let numerators = a.into_par_iter().map(|v| v.0 >> n).collect();
    Ok(ExactFunction { n, numerators, denominator: den * BigInt::from(code.size()) })
}

/// `T_r f_C = r ∗ f_C`, the noisy code distribution.
pub fn smooth<S: Scalar>(code: &Code, kernel: &Kernel) -> Result<DenseFunction<S>> {
    let n = code.n();
    if kernel.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.n() });
    }
    if S::EXACT {
        if n > MAX_EXACT_N {
            return Err(Error::BudgetExceeded { what: "rational smoothing", n, limit: MAX_EXACT_N });
        }
        return match smooth_exact(code, kernel) {
            Ok(e) => Ok(e
                .to_dense()?
                .into_values()
                .iter()
                .map(S::from_rational)
                .collect::<Vec<S>>())
            .and_then(|v| DenseFunction::new(n, v)),
            Err(Error::ExactOverflow) => convolve(&code.pmf::<S>()?, &kernel.lift::<S>()?),
            Err(e) => Err(e),
        };
    }
    if n > MAX_FLOAT_N {
        return Err(Error::BudgetExceeded { what: "float smoothing", n, limit: MAX_FLOAT_N });
    }
    if n <= EXACT_FOR_FLOAT_N {
        match smooth_exact(code, kernel) {
            Ok(e) => return Ok(from_f64_dense(e.to_f64())),
            Err(Error::ExactOverflow) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(from_f64_dense(smooth_float(code, kernel)?))
}

/// Reinterprets a float function in a float scalar type.
fn from_f64_dense<S: Scalar>(f: DenseFunction<f64>) -> DenseFunction<S> {
    let n = f.n();
    let v = f
        .into_values()
        .into_iter()
        .map(|x| S::from_f64_lossy(x))
        .collect();
    DenseFunction::new(n, v).expect("length preserved")
}

/// `T_r f_C` by a floating-point transform, with the kernel spectrum taken
/// from exact arithmetic.
pub fn smooth_float(code: &Code, kernel: &Kernel) -> Result<DenseFunction<f64>> {
    let n = code.n();
    let mut a = vec![0f64; 1 << n];
    let w = 1.0 / code.size() as f64;
    for c in code.words()? {
        a[c as usize] = w;
    }
    walsh_hadamard(&mut a);
    apply_spectrum(&mut a, kernel)?;
    walsh_hadamard(&mut a);
    let scale = (-(n as f64)).exp2();
    a.par_iter_mut().for_each(|v| *v *= scale);
    DenseFunction::new(n, a)
}

/// Multiplies an unnormalized transform by the kernel's unnormalized
/// transform `Σ_x r(x) (-1)^{x·y}`.
pub(crate) fn apply_spectrum(a: &mut [f64], kernel: &Kernel) -> Result<()> {
    let n = kernel.n();
    match kernel.profile() {
        Some(p) => {
            let spec = p.fourier()?;
            let scale = (n as f64).exp2();
            let s: Vec<f64> = spec.values().iter().map(|v| rational_to_f64(v) * scale).collect();
            a.par_iter_mut()
                .enumerate()
                .for_each(|(y, v)| *v *= s[(y as u32).count_ones() as usize]);
        }
        None => {
            let mut k = kernel.lift::<f64>()?.into_values();
            walsh_hadamard(&mut k);
            a.par_iter_mut().zip(k).for_each(|(v, w)| *v *= w);
        }
    }
    Ok(())
}

/// Unnormalized transform values of a kernel at each weight (radial only).
pub fn kernel_spectrum_f64(kernel: &Kernel) -> Result<Vec<f64>> {
    let spec = kernel.spectrum()?;
    let scale = (kernel.n() as f64).exp2();
    Ok(spec.values().iter().map(|v| rational_to_f64(v) * scale).collect())
}
