//! Precision contexts, exact rationals and polynomials, constant expressions,
//! real root isolation and rational recognition.

pub mod expr;
pub mod poly;
pub mod recognize;
pub mod roots;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Assign;

pub use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Multiprecision real. The value carries its own binary precision.
pub type BigReal = rug::Float;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Target accuracy in decimal digits plus the binary working precision used
/// to reach it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    working_bits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_DIGITS: u32 = 120;
    pub const GUARD_BITS: u32 = 64;

    /// Context with the minimal admissible working precision for `target_digits`.
    pub fn new(target_digits: u32) -> Self {
        assert!(target_digits > 0, "target_digits must be positive");
        PrecisionContext {
            target_digits,
            working_bits: Self::min_bits(target_digits),
        }
    }

    pub fn with_working_bits(target_digits: u32, working_bits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::Precision("target_digits must be positive".into()));
        }
        let min = Self::min_bits(target_digits);
        if working_bits < min {
            return Err(Error::Precision(format!(
                "{working_bits} working bits is below the {min} required for {target_digits} digits"
            )));
        }
        Ok(PrecisionContext {
            target_digits,
            working_bits,
        })
    }

    fn min_bits(digits: u32) -> u32 {
        (digits as f64 * LOG2_10).ceil() as u32 + Self::GUARD_BITS
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    /// Same computation at twice the target digits; used for two-stage confirmation.
    pub fn doubled(&self) -> Self {
        PrecisionContext::new(self.target_digits * 2)
    }

    pub fn float<T>(&self, value: T) -> BigReal
    where
        BigReal: Assign<T>,
    {
        BigReal::with_val(self.working_bits, value)
    }

    pub fn zero(&self) -> BigReal {
        BigReal::new(self.working_bits)
    }

    pub fn pi(&self) -> BigReal {
        BigReal::with_val(self.working_bits, Constant::Pi)
    }

    pub fn pi_squared(&self) -> BigReal {
        self.pi().square()
    }

    /// `10^(-digits)` at working precision.
    pub fn ten_pow_neg(&self, digits: i64) -> BigReal {
        let ten = self.float(10);
        ten.pow(-(digits as i32))
    }

    /// `10^(-target_digits)`.
    pub fn tolerance(&self) -> BigReal {
        self.ten_pow_neg(self.target_digits as i64)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(Self::DEFAULT_DIGITS)
    }
}

/// Decimal exponent of `|x|`, i.e. `log10|x|`; `None` for an exact zero.
pub fn log10_abs(x: &BigReal) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let (mantissa, exp) = x.to_f64_exp();
    Some(mantissa.abs().log10() + exp as f64 * std::f64::consts::LOG10_2)
}

/// True when `|a - b| < 10^(-digits)`.
pub fn agree_to(a: &BigReal, b: &BigReal, digits: i64) -> bool {
    let diff = BigReal::with_val(a.prec().max(b.prec()), a - b);
    match log10_abs(&diff) {
        None => true,
        Some(e) => e < -(digits as f64),
    }
}

/// Short decimal rendering with `digits` significant digits.
pub fn fmt_real(x: &BigReal, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

pub fn rational_to_float(q: &Rational, bits: u32) -> BigReal {
    BigReal::with_val(bits, q)
}
