//! Dense univariate polynomials with arbitrary-size integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::BigReal;
use crate::error::{Error, Result};

/// Coefficients in ascending degree order. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::from(1))
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`
    pub fn monomial(c: impl Into<Integer>, k: usize) -> Self {
        let mut coeffs = vec![Integer::new(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Integer::from(c * k as u64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Long division over the integers. Every step must divide the leading
    /// coefficient exactly, which always holds for divisors monic up to sign.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::new(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if !c.is_zero() {
                if !c.is_divisible(lead) {
                    return Err(Error::InexactDivision(top));
                }
                let q = c.div_exact(lead);
                let shift = top - dd;
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= Integer::from(&q * dc);
                }
                quot[shift] = q;
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; fails unless `divisor` divides `self` with zero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(d) => Err(Error::InexactDivision(d)),
        }
    }

    /// Pseudo-remainder `prem(self, d)`: remainder of `lc(d)^k · self` by `d`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            for r in rem.iter_mut() {
                *r *= &lead;
            }
            let shift = top - dd;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= Integer::from(&c * dc);
            }
            rem.pop();
            while rem.len() > dd && rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok(Self::new(rem))
    }

    pub fn content(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::new(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| Integer::from(c.div_exact_ref(&g))).collect())
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Square-free decomposition through the gcd chain `g_{i+1} = gcd(g_i, g_i')`:
    /// pairs `(f_k, k)` with `self = c · Π f_k^k`, each `f_k` square-free,
    /// primitive and pairwise coprime. Constant factors are dropped.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Self, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![self.primitive_part()];
        while chain.last().unwrap().degree().unwrap_or(0) > 0 {
            let g = chain.last().unwrap();
            chain.push(g.gcd(&g.derivative()));
        }
        // h_i = g_{i-1} / g_i collects the factors of multiplicity >= i
        let mut h = Vec::with_capacity(chain.len());
        for w in chain.windows(2) {
            h.push(w[0].div_exact(&w[1])?);
        }
        h.push(Self::one());
        let mut out = Vec::new();
        for (i, w) in h.windows(2).enumerate() {
            let f = w[0].div_exact(&w[1])?;
            if f.degree().unwrap_or(0) > 0 {
                out.push((f.primitive_part(), i as u32 + 1));
            }
        }
        Ok(out)
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation at the precision of `x`.
    pub fn eval_float(&self, x: &BigReal) -> BigReal {
        let mut acc = BigReal::new(x.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Sign variations in the coefficient sequence (Descartes' rule).
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut count = 0;
        for c in &self.coeffs {
            let s = c.cmp0() as i32;
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// `p(x + 1)`.
    pub fn taylor_shift_one(&self) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone();
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `x^n · p(1/x)` with `n = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { Integer::from(-c) } else { c.clone() })
                .collect(),
        )
    }

    /// `p(2^s · x)`.
    pub fn scale_pow2(&self, s: u32) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| Integer::from(c << (s * k as u32)))
                .collect(),
        )
    }

    /// `2^n · p(x / 2)` with `n = deg p`.
    pub fn halve_variable(&self) -> Self {
        let n = self.coeffs.len().saturating_sub(1);
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| Integer::from(c << (n - k) as u32))
                .collect(),
        )
    }

    /// Drops a factor `x`; requires a zero constant term.
    pub fn shift_down(&self) -> Self {
        debug_assert!(self.coeffs.first().is_none_or(|c| c.is_zero()));
        Self::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = Integer::from(c.abs_ref());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| Integer::from(-c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn poly_mul(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    p * q
}

pub fn poly_sub(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    p - q
}

pub fn poly_divmod(p: &IntPolynomial, d: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
    p.divmod(d)
}
