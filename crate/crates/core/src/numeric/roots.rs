//! Real root isolation for integer polynomials.
//!
//! Roots are isolated exactly: square-free decomposition, then Descartes
//! sign-variation bisection on `(0, B)` and `(-B, 0)` with a power-of-two
//! Cauchy bound `B`. Each isolating interval is narrowed by exact dyadic
//! bisection to width `2^-20` and polished by safeguarded Newton steps in
//! multiprecision.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::poly::IntPolynomial;
use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

const BISECTION_WIDTH_BITS: u32 = 20;
const NEWTON_MAX_ITER: usize = 200;

#[derive(Clone, Debug)]
pub struct RealRoot {
    pub value: BigReal,
    pub multiplicity: u32,
}

/// Exact isolation result for one root of a square-free factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolated {
    Exact(Rational),
    /// Exactly one root in the open interval.
    Interval(Rational, Rational),
}

impl Isolated {
    fn lower(&self) -> &Rational {
        match self {
            Isolated::Exact(r) => r,
            Isolated::Interval(lo, _) => lo,
        }
    }
}

/// All real roots of `p` in ascending order, each refined to the context's
/// working precision, with multiplicities.
pub fn real_roots(p: &IntPolynomial, ctx: &PrecisionContext) -> Result<Vec<RealRoot>> {
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_decomposition()? {
        for iso in isolate_square_free(&factor) {
            let value = refine(&factor, &iso, ctx.working_bits());
            out.push((iso, RealRoot { value, multiplicity: mult }));
        }
    }
    // factors are coprime, so isolating data never coincide; order by lower end first
    out.sort_by(|a, b| {
        a.1.value
            .partial_cmp(&b.1.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.lower().cmp(b.0.lower()))
    });
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

/// Isolating data for the real roots of a square-free polynomial, ascending.
pub fn isolate_square_free(f: &IntPolynomial) -> Vec<Isolated> {
    let mut f = f.clone();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    if f.coeff(0).is_zero() {
        out.push(Isolated::Exact(Rational::new()));
        f = f.shift_down();
    }
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let k = bound_exponent(&f);
    let scale = Rational::from(Integer::from(1) << k);
    for iso in isolate_unit(&f.scale_pow2(k)) {
        out.push(map_interval(iso, &scale, false));
    }
    for iso in isolate_unit(&f.negate_variable().scale_pow2(k)) {
        out.push(map_interval(iso, &scale, true));
    }
    out.sort_by(|a, b| a.lower().cmp(b.lower()));
    out
}

// smallest k with 2^k > 1 + max|a_i / a_n|
fn bound_exponent(f: &IntPolynomial) -> u32 {
    let lead = Integer::from(f.leading().unwrap().abs_ref());
    let n = f.degree().unwrap();
    let max = f.coeffs()[..n]
        .iter()
        .map(|c| Integer::from(c.abs_ref()))
        .max()
        .unwrap_or_default();
    let ratio = (max + &lead - 1u32) / &lead + 1u32;
    ratio.significant_bits() + 1
}

fn map_interval(iso: Isolated, scale: &Rational, negate: bool) -> Isolated {
    let m = |r: Rational| {
        let v = r * scale;
        if negate {
            -v
        } else {
            v
        }
    };
    match iso {
        Isolated::Exact(r) => Isolated::Exact(m(r)),
        Isolated::Interval(lo, hi) => {
            let (a, b) = (m(lo), m(hi));
            if negate {
                Isolated::Interval(b, a)
            } else {
                Isolated::Interval(a, b)
            }
        }
    }
}

// Descartes test on (0, 1): variations of (x+1)^n g(1/(x+1)).
fn descartes_unit(g: &IntPolynomial) -> usize {
    g.reversed().taylor_shift_one().sign_variations()
}

// Roots of g in the open interval (0, 1); g square-free with g(0) != 0.
fn isolate_unit(g: &IntPolynomial) -> Vec<Isolated> {
    let mut out = Vec::new();
    // (poly, c, k) represents the interval (c / 2^k, (c + 1) / 2^k)
    let mut stack = vec![(g.clone(), Integer::new(), 0u32)];
    while let Some((q, c, k)) = stack.pop() {
        match descartes_unit(&q) {
            0 => {}
            1 => {
                let den = Integer::from(1) << k;
                let lo = Rational::from((c.clone(), den.clone()));
                let hi = Rational::from((c + 1u32, den));
                out.push(Isolated::Interval(lo, hi));
            }
            _ => {
                let left = q.halve_variable();
                let mut right = left.taylor_shift_one();
                let c2 = Integer::from(&c * 2u32);
                if right.coeff(0).is_zero() {
                    let den = Integer::from(1) << (k + 1);
                    out.push(Isolated::Exact(Rational::from((Integer::from(&c2 + 1u32), den))));
                    right = right.shift_down();
                }
                stack.push((left, c2.clone(), k + 1));
                stack.push((right, c2 + 1u32, k + 1));
            }
        }
    }
    out
}

fn refine(f: &IntPolynomial, iso: &Isolated, bits: u32) -> BigReal {
    let (mut lo, mut hi) = match iso {
        Isolated::Exact(r) => return BigReal::with_val(bits, r),
        Isolated::Interval(lo, hi) => (lo.clone(), hi.clone()),
    };
    let sign_lo = f.eval_rational(&lo).cmp0();
    let width = Rational::from((1, Integer::from(1) << BISECTION_WIDTH_BITS));
    while Rational::from(&hi - &lo) > width {
        let mid = Rational::from(&lo + &hi) / 2u32;
        let s = f.eval_rational(&mid).cmp0();
        if s == std::cmp::Ordering::Equal {
            return BigReal::with_val(bits, &mid);
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish at extra precision, falling back to bisection whenever a
    // step leaves the bracket.
    let prec = bits + 32 + max_coeff_bits(f);
    let df = f.derivative();
    let mut a = BigReal::with_val(prec, &lo);
    let mut b = BigReal::with_val(prec, &hi);
    let mut x = BigReal::with_val(prec, &a + &b) / 2u32;
    let tol = BigReal::with_val(prec, 2).pow(-(bits as i32 + 8));
    for _ in 0..NEWTON_MAX_ITER {
        let fx = f.eval_float(&x);
        if fx.is_zero() {
            break;
        }
        if fx.cmp0() == Some(sign_lo) {
            a.clone_from(&x);
        } else {
            b.clone_from(&x);
        }
        let dfx = df.eval_float(&x);
        let next = if dfx.is_zero() {
            None
        } else {
            let n = BigReal::with_val(prec, &x - &(fx / dfx));
            (n > a && n < b).then_some(n)
        };
        let next = next.unwrap_or_else(|| BigReal::with_val(prec, &a + &b) / 2u32);
        let step = BigReal::with_val(prec, &next - &x).abs();
        x = next;
        if step <= tol {
            break;
        }
    }
    BigReal::with_val(bits, &x)
}

fn max_coeff_bits(f: &IntPolynomial) -> u32 {
    f.coeffs().iter().map(|c| c.significant_bits()).max().unwrap_or(0)
}

/// Number of distinct real roots, as reported by isolation.
pub fn count_distinct_real_roots(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.square_free_decomposition()?
        .iter()
        .map(|(f, _)| isolate_square_free(f).len())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::agree_to;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn x_squared_minus_one() {
        let ctx = PrecisionContext::new(40);
        let r = real_roots(&p(&[-1, 0, 1]), &ctx).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].value, -1);
        assert_eq!(r[1].value, 1);
        assert!(r.iter().all(|x| x.multiplicity == 1));
    }

    #[test]
    fn multiplicities_reported() {
        // (x - 1/2)^2 (x + 3)^3 x
        let f = &(&p(&[-1, 2]).pow(2) * &p(&[3, 1]).pow(3)) * &p(&[0, 1]);
        let ctx = PrecisionContext::new(30);
        let r = real_roots(&f, &ctx).unwrap();
        let got: Vec<(f64, u32)> = r.iter().map(|x| (x.value.to_f64(), x.multiplicity)).collect();
        assert_eq!(got, vec![(-3.0, 3), (0.0, 1), (0.5, 2)]);
    }

    #[test]
    fn cubic_for_w() {
        let ctx = PrecisionContext::new(60);
        let r = real_roots(&p(&[-1, 3, 6, 1]), &ctx).unwrap();
        assert_eq!(r.len(), 3);
        let w = &r[2].value;
        // 2√3 cos(5π/18) − 2
        let three = ctx.float(3);
        let closed = ctx.float(2) * three.sqrt() * (ctx.pi() * 5u32 / 18u32).cos() - 2u32;
        assert!(agree_to(w, &closed, 60));
        assert!((w.to_f64() - 0.2266815969056775).abs() < 1e-15);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(real_roots(&IntPolynomial::zero(), &PrecisionContext::new(10)).is_err());
        assert!(real_roots(&IntPolynomial::one(), &PrecisionContext::new(10)).unwrap().is_empty());
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(count_distinct_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_distinct_real_roots(&p(&[1, -1, 1]).pow(2)).unwrap(), 0);
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000x - 1)(1001x - 1)
        let f = &p(&[-1, 1000]) * &p(&[-1, 1001]);
        let ctx = PrecisionContext::new(30);
        let r = real_roots(&f, &ctx).unwrap();
        assert_eq!(r.len(), 2);
        assert!(agree_to(&r[0].value, &(ctx.float(1) / 1001u32), 30));
        assert!(agree_to(&r[1].value, &(ctx.float(1) / 1000u32), 30));
    }
}
