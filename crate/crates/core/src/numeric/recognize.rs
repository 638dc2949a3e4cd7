//! Rational recognition of high-precision reals via continued fractions.

use rug::{Integer, Rational};

use super::{log10_abs, BigReal, PrecisionContext};
use crate::error::Result;

/// Default denominator bound for verification runs.
pub const DEFAULT_QMAX: u64 = 10_000;
/// Digits held back from the target precision when recognizing.
pub const TOLERANCE_MARGIN: u32 = 20;

/// Convergents `p/q` of the continued fraction of `v` with `q <= qmax`.
pub fn convergents(v: &BigReal, qmax: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !v.is_finite() {
        return out;
    }
    let (mut h1, mut h2) = (Integer::from(1), Integer::new());
    let (mut k1, mut k2) = (Integer::new(), Integer::from(1));
    let mut x = v.clone();
    for _ in 0..4096 {
        let a = match x.clone().floor().to_integer() {
            Some(a) => a,
            None => break,
        };
        let h = Integer::from(&a * &h1) + &h2;
        let k = Integer::from(&a * &k1) + &k2;
        if k > qmax {
            break;
        }
        out.push(Rational::from((h.clone(), k.clone())));
        let frac = x - &a;
        if frac.is_zero() {
            break;
        }
        x = frac.recip();
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
    out
}

/// The smallest-denominator convergent `p/q`, `q <= qmax`, with
/// `|v - p/q| < 10^(-tol_digits)`, or `None`.
pub fn recognize_rational(v: &BigReal, qmax: u64, tol_digits: u32) -> Option<Rational> {
    convergents(v, qmax.max(1)).into_iter().find(|c| {
        let diff = BigReal::with_val(v.prec(), v - c);
        match log10_abs(&diff) {
            None => true,
            Some(e) => e < -(tol_digits as f64),
        }
    })
}

/// Recognition tolerance used for a context: `target_digits - 20`.
pub fn tolerance_digits(ctx: &PrecisionContext) -> u32 {
    ctx.target_digits().saturating_sub(TOLERANCE_MARGIN).max(1)
}

/// Two-stage recognition: evaluate at `ctx`, recognize, then re-evaluate at
/// doubled precision and require the same rational at the tighter tolerance.
pub fn recognize_confirmed<F>(eval: F, ctx: &PrecisionContext, qmax: u64) -> Result<Option<Rational>>
where
    F: Fn(&PrecisionContext) -> Result<BigReal>,
{
    let v = eval(ctx)?;
    let Some(q) = recognize_rational(&v, qmax, tolerance_digits(ctx)) else {
        return Ok(None);
    };
    let fine = ctx.doubled();
    let v2 = eval(&fine)?;
    let diff = BigReal::with_val(fine.working_bits(), &v2 - &q);
    let ok = match log10_abs(&diff) {
        None => true,
        Some(e) => e < -(tolerance_digits(&fine) as f64),
    };
    Ok(ok.then_some(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_half() {
        let ctx = PrecisionContext::new(50);
        let half = ctx.float(1) / 2u32;
        assert_eq!(recognize_rational(&half, 100, 30), Some(Rational::from((1, 2))));
    }

    #[test]
    fn pi_over_four_is_not_rational() {
        let ctx = PrecisionContext::new(60);
        let v = ctx.pi() / 4u32;
        assert_eq!(recognize_rational(&v, 10_000, 40), None);
    }

    #[test]
    fn negative_and_integer_values() {
        let ctx = PrecisionContext::new(50);
        let v = ctx.float(-7) / 18u32;
        assert_eq!(recognize_rational(&v, 100, 30), Some(Rational::from((-7, 18))));
        assert_eq!(recognize_rational(&ctx.float(2), 1, 30), Some(Rational::from(2)));
        assert_eq!(recognize_rational(&ctx.zero(), 1, 30), Some(Rational::new()));
    }

    #[test]
    fn denominator_bound_respected() {
        let ctx = PrecisionContext::new(50);
        let v = ctx.float(13) / 342u32;
        assert_eq!(recognize_rational(&v, 341, 30), None);
        assert_eq!(recognize_rational(&v, 342, 30), Some(Rational::from((13, 342))));
    }

    #[test]
    fn convergents_of_golden_ratio() {
        let ctx = PrecisionContext::new(40);
        let phi = (ctx.float(5).sqrt() + 1u32) / 2u32;
        let c: Vec<String> = convergents(&phi, 10).iter().map(|r| r.to_string()).collect();
        assert_eq!(c, ["1", "2", "3/2", "5/3", "8/5", "13/8"]);
    }

    #[test]
    fn two_stage_rejects_precision_dependent_value() {
        let ctx = PrecisionContext::new(40);
        // agrees with 1/3 to 35 digits only: passes the coarse stage, fails the fine one
        let f = |c: &PrecisionContext| Ok(c.float(1) / 3u32 + c.ten_pow_neg(35));
        assert_eq!(recognize_rational(&f(&ctx).unwrap(), 100, 20), Some(Rational::from((1, 3))));
        assert_eq!(recognize_confirmed(f, &ctx, 100).unwrap(), None);
        let g = |c: &PrecisionContext| Ok(c.float(1) / 3u32);
        assert_eq!(recognize_confirmed(g, &ctx, 100).unwrap(), Some(Rational::from((1, 3))));
    }
}
