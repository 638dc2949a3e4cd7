//! Principal-branch complex dilogarithm.

use rug::float::Constant;
use rug::Complex;

use super::special::bernoulli;
use super::INTERNAL_GUARD;
use crate::error::{Error, Result};
use crate::numeric::{BigReal, PrecisionContext};

/// Multiprecision complex value.
pub type BigComplex = Complex;

/// `Li₂(z)` on the principal branch (cut along `[1, ∞)`).
///
/// Inversion maps `|z| > 1` into the unit disc; inside it the direct series
/// handles `|z| ≤ ½`, reflection handles `|1 − z| ≤ ½`, and the remaining
/// lune uses the Bernoulli expansion in `−ln(1 − z)`.
pub fn li2_complex(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.working_bits() + INTERNAL_GUARD;
    let z = Complex::with_val(bits, z);
    let (re, im) = (z.real(), z.imag());
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if *re > 1 && BigReal::with_val(bits, im.abs_ref()) < ctx.tolerance() {
        return Err(Error::BranchCut(format!(
            "Li_2 at {} + {}i lies on the cut [1, inf)",
            re.to_f64(),
            im.to_f64()
        )));
    }
    let v = li2_c(&z, bits);
    Ok(Complex::with_val(ctx.working_bits(), v))
}

fn pi2_over(bits: u32, d: u32) -> BigReal {
    BigReal::with_val(bits, Constant::Pi).square() / d
}

fn li2_c(z: &Complex, bits: u32) -> Complex {
    if z.is_zero() {
        return Complex::new(bits);
    }
    let one_minus = Complex::with_val(bits, 1 - z);
    if one_minus.is_zero() {
        return Complex::with_val(bits, pi2_over(bits, 6));
    }
    let abs = BigReal::with_val(bits, z.abs_ref()).to_f64();
    if abs > 1.0 {
        // Li₂(z) = −π²/6 − ½ ln²(−z) − Li₂(1/z)
        let lnm = Complex::with_val(bits, -z).ln();
        let inv = Complex::with_val(bits, z.recip_ref());
        let tail = li2_c(&inv, bits);
        return -(lnm.square() / 2u32) - tail - pi2_over(bits, 6);
    }
    if abs <= 0.5 {
        return series(z, bits);
    }
    if BigReal::with_val(bits, one_minus.abs_ref()).to_f64() <= 0.5 {
        // Li₂(z) = π²/6 − ln z ln(1−z) − Li₂(1−z)
        let logs = Complex::with_val(bits, z.ln_ref()) * Complex::with_val(bits, one_minus.ln_ref());
        return -logs - series(&one_minus, bits) + pi2_over(bits, 6);
    }
    bernoulli_series(&one_minus, bits)
}

fn series(z: &Complex, bits: u32) -> Complex {
    let a = BigReal::with_val(bits, z.abs_ref()).to_f64();
    let n = super::series_terms(a, 2, bits);
    let mut sum = Complex::new(bits);
    let mut p = Complex::with_val(bits, z);
    for k in 1..=n as u64 {
        sum += Complex::with_val(bits, &p / (k * k));
        p *= z;
    }
    sum
}

// Li₂(z) = Σ_{n≥0} B_n uⁿ⁺¹/(n+1)!, u = −ln(1−z), |u| < 2π
fn bernoulli_series(one_minus: &Complex, bits: u32) -> Complex {
    let u = -Complex::with_val(bits, one_minus.ln_ref());
    let ua = BigReal::with_val(bits, u.abs_ref()).to_f64();
    // |B_n|/(n+1)! ~ 2/(2π)^n, so terms fall like (|u|/2π)^n
    let ratio = ua / (2.0 * std::f64::consts::PI);
    let n_max = ((bits as f64 + 8.0) / -ratio.log2()).ceil() as usize + 4;
    let mut sum = Complex::new(bits);
    // uⁿ⁺¹/(n+1)!
    let mut p = u.clone();
    for n in 0..=n_max {
        let b = bernoulli(n);
        if !b.is_zero() {
            sum += Complex::with_val(bits, &p * &b);
        }
        p *= &u;
        p /= (n + 2) as u64;
    }
    sum
}
