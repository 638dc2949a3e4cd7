//! Polylogarithms, the complex dilogarithm and the Rogers `L`-function.
//!
//! `L(z) = Li₂(z) + ½ ln|z| ln(1 − z)` on `[-1, 1]`, normalized so that
//! `L(0) = 0`, `L(1) = π²/6` and `L(-1) = -π²/12`.

mod complex;
mod special;

pub use complex::{li2_complex, BigComplex};
pub use special::{bernoulli, zeta};

use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::numeric::{BigReal, PrecisionContext};

/// Extra bits carried internally by every evaluation.
const INTERNAL_GUARD: u32 = 32;

/// How real arguments are mapped into the direct-series disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolylogDomainPolicy {
    series_cutoff: f64,
    reflection_enabled: bool,
}

impl PolylogDomainPolicy {
    pub fn new(series_cutoff: f64, reflection_enabled: bool) -> Result<Self> {
        if !(0.25..=0.75).contains(&series_cutoff) {
            return Err(Error::Invalid(format!(
                "series cutoff {series_cutoff} outside [0.25, 0.75]"
            )));
        }
        Ok(PolylogDomainPolicy {
            series_cutoff,
            reflection_enabled,
        })
    }

    pub fn series_cutoff(&self) -> f64 {
        self.series_cutoff
    }

    pub fn reflection_enabled(&self) -> bool {
        self.reflection_enabled
    }
}

impl Default for PolylogDomainPolicy {
    fn default() -> Self {
        PolylogDomainPolicy {
            series_cutoff: 0.5,
            reflection_enabled: true,
        }
    }
}

fn internal_bits(ctx: &PrecisionContext) -> u32 {
    ctx.working_bits() + INTERNAL_GUARD
}

fn pi_squared(bits: u32) -> BigReal {
    BigReal::with_val(bits, rug::float::Constant::Pi).square()
}

/// Number of series terms `N` such that the tail of `Σ zⁿ/nᵐ` after `N`
/// is below `2^-bits`, using `|z|^(N+1) / ((N+1)^m (1 − |z|))`.
pub fn series_terms(z_abs: f64, m: u32, bits: u32) -> usize {
    if z_abs == 0.0 {
        return 1;
    }
    assert!(z_abs < 1.0, "series_terms needs |z| < 1");
    let lz = z_abs.log2();
    let l1 = (1.0 - z_abs).log2();
    let mut n: usize = 1;
    loop {
        let k = (n + 1) as f64;
        if k * lz - m as f64 * k.log2() - l1 < -(bits as f64) {
            return n;
        }
        n += 1;
    }
}

/// Tail estimate `|z|^(N+1) / ((N+1)^m (1 − |z|))` for truncation after `N` terms.
pub fn tail_estimate(z_abs: f64, m: u32, n: usize) -> f64 {
    let k = (n + 1) as f64;
    (k * z_abs.log2() - m as f64 * k.log2() - (1.0 - z_abs).log2()).exp2()
}

/// Partial sum `Σ_{n=1}^{N} zⁿ/nᵐ` at the given precision.
pub fn li_series_partial(z: &BigReal, m: u32, terms: usize, bits: u32) -> BigReal {
    let mut sum = BigReal::new(bits);
    let mut p = BigReal::with_val(bits, z);
    for n in 1..=terms {
        let den = rug::Integer::from(n).pow(m);
        sum += BigReal::with_val(bits, &p / &den);
        p *= z;
    }
    sum
}

fn li_series(z: &BigReal, m: u32, bits: u32) -> BigReal {
    let n = series_terms(z.to_f64().abs(), m, bits);
    li_series_partial(z, m, n, bits)
}

/// `Li_m(z)` for real `|z| ≤ 1`, `m ≥ 2`.
///
/// Direct series inside the cutoff; the logarithmic expansion around `z = 1`
/// on `(cutoff, 1)`; duplication `Li_m(z) = 2^(1−m) Li_m(z²) − Li_m(−z)` for
/// negative arguments beyond the cutoff.
pub fn li_m(z: &BigReal, m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    li_m_with_policy(z, m, ctx, &PolylogDomainPolicy::default())
}

pub fn li_m_with_policy(
    z: &BigReal,
    m: u32,
    ctx: &PrecisionContext,
    policy: &PolylogDomainPolicy,
) -> Result<BigReal> {
    if m < 2 {
        return Err(Error::Invalid(format!("polylogarithm order {m} < 2")));
    }
    if !z.is_finite() || z.clone().abs() > 1 {
        return Err(Error::Domain(format!("Li_{m} needs |z| <= 1, got {}", z.to_f64())));
    }
    let bits = internal_bits(ctx);
    let z = BigReal::with_val(bits, z);
    let v = li_m_inner(&z, m, bits, policy.series_cutoff);
    Ok(BigReal::with_val(ctx.working_bits(), v))
}

fn li_m_inner(z: &BigReal, m: u32, bits: u32, cutoff: f64) -> BigReal {
    if z.is_zero() {
        return BigReal::new(bits);
    }
    if *z == 1 {
        return zeta(m, bits);
    }
    if *z == -1 {
        // −(1 − 2^(1−m)) ζ(m)
        let f = BigReal::with_val(bits, 1) - BigReal::with_val(bits, 2).pow(1 - m as i32);
        return -(f * zeta(m, bits));
    }
    let zf = z.to_f64();
    if zf.abs() <= cutoff {
        return li_series(z, m, bits);
    }
    if zf > 0.0 {
        return li_near_one(z, m, bits);
    }
    let z2 = BigReal::with_val(bits, z.square_ref());
    let neg = BigReal::with_val(bits, -z);
    let scale = BigReal::with_val(bits, 2).pow(1 - m as i32);
    scale * li_m_inner(&z2, m, bits, cutoff) - li_m_inner(&neg, m, bits, cutoff)
}

// Li_m(e^μ) = Σ_{k≠m−1} ζ(m−k) μᵏ/k! + μ^(m−1)/(m−1)! (H_{m−1} − ln(−μ)), |μ| < 2π.
fn li_near_one(z: &BigReal, m: u32, bits: u32) -> BigReal {
    let mu = BigReal::with_val(bits, z.ln_ref());
    let eps = BigReal::with_val(bits, 2).pow(-(bits as i32) - 8);
    let mut sum = BigReal::new(bits);
    // μᵏ/k!
    let mut pk = BigReal::with_val(bits, 1);
    let mut k: u32 = 0;
    let mut small_run = 0;
    loop {
        if k == m - 1 {
            let mut h = BigReal::new(bits);
            for j in 1..m {
                h += BigReal::with_val(bits, 1) / j;
            }
            let lnm = BigReal::with_val(bits, -&mu).ln();
            sum += BigReal::with_val(bits, &pk * (h - lnm));
        } else {
            let zk = zeta_any(m as i64 - k as i64, bits);
            let term = BigReal::with_val(bits, &pk * &zk);
            if k > m && !zk.is_zero() {
                if BigReal::with_val(bits, term.abs_ref()) < eps {
                    small_run += 1;
                    if small_run > 2 {
                        break;
                    }
                } else {
                    small_run = 0;
                }
            }
            sum += term;
        }
        k += 1;
        pk *= &mu;
        pk /= k;
        if k > 100_000 {
            break;
        }
    }
    sum
}

// ζ(n) for any integer n ≠ 1.
fn zeta_any(n: i64, bits: u32) -> BigReal {
    if n >= 2 {
        return zeta(n as u32, bits);
    }
    if n == 0 {
        return BigReal::with_val(bits, -0.5);
    }
    let k = (-n) as usize;
    if k % 2 == 0 {
        return BigReal::new(bits);
    }
    // ζ(−k) = −B_{k+1}/(k+1)
    let b = bernoulli(k + 1);
    BigReal::with_val(bits, -b / (k as u32 + 1))
}

/// Real dilogarithm `Li₂(z)` for `z ≤ 1` under the default policy.
pub fn li2_real(z: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    li2_real_with_policy(z, ctx, &PolylogDomainPolicy::default())
}

pub fn li2_real_with_policy(
    z: &BigReal,
    ctx: &PrecisionContext,
    policy: &PolylogDomainPolicy,
) -> Result<BigReal> {
    if !z.is_finite() || *z > 1 {
        return Err(Error::Domain(format!("Li_2 on the real branch needs z <= 1, got {}", z.to_f64())));
    }
    let bits = internal_bits(ctx);
    let z = BigReal::with_val(bits, z);
    let v = li2_inner(&z, bits, policy);
    Ok(BigReal::with_val(ctx.working_bits(), v))
}

fn li2_inner(z: &BigReal, bits: u32, policy: &PolylogDomainPolicy) -> BigReal {
    if z.is_zero() {
        return BigReal::new(bits);
    }
    if *z == 1 {
        return pi_squared(bits) / 6u32;
    }
    if z.is_sign_negative() {
        // Landen: Li₂(z) = −Li₂(z/(z−1)) − ½ ln²(1−z)
        let w = BigReal::with_val(bits, z / BigReal::with_val(bits, z - 1u32));
        let l = BigReal::with_val(bits, 1u32 - z).ln();
        return -li2_inner(&w, bits, policy) - l.square() / 2u32;
    }
    if z.to_f64() <= policy.series_cutoff || !policy.reflection_enabled {
        return li_series(z, 2, bits);
    }
    // Euler: Li₂(z) = π²/6 − ln z ln(1−z) − Li₂(1−z)
    let w = BigReal::with_val(bits, 1u32 - z);
    let logs = BigReal::with_val(bits, z.ln_ref()) * BigReal::with_val(bits, w.ln_ref());
    pi_squared(bits) / 6u32 - logs - li_series(&w, 2, bits)
}

/// Rogers `L(z)` on `[-1, 1]`.
pub fn rogers_l(z: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !z.is_finite() || z.clone().abs() > 1 {
        return Err(Error::Domain(format!("L(z) needs |z| <= 1, got {}", z.to_f64())));
    }
    let bits = internal_bits(ctx);
    let z = BigReal::with_val(bits, z);
    let v = rogers_inner(&z, bits);
    Ok(BigReal::with_val(ctx.working_bits(), v))
}

fn rogers_inner(z: &BigReal, bits: u32) -> BigReal {
    let policy = PolylogDomainPolicy::default();
    if z.is_zero() {
        return BigReal::new(bits);
    }
    if *z == 1 {
        return pi_squared(bits) / 6u32;
    }
    if *z == -1 {
        return -(pi_squared(bits) / 12u32);
    }
    if *z > 0.5 {
        let w = BigReal::with_val(bits, 1u32 - z);
        return pi_squared(bits) / 6u32 - rogers_inner(&w, bits);
    }
    let li = li2_inner(z, bits, &policy);
    let la = BigReal::with_val(bits, z.abs_ref()).ln();
    let lb = BigReal::with_val(bits, 1u32 - z).ln();
    li + la * lb / 2u32
}

/// `L(x) + L(y) − L(xy) − L(x(1−y)/(1−xy)) − L(y(1−x)/(1−xy))`.
pub fn five_term_residual(x: &BigReal, y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let inside = |v: &BigReal| v.is_finite() && !v.is_sign_negative() && *v < 1;
    if !inside(x) || !inside(y) {
        return Err(Error::Domain(format!(
            "five-term residual needs x, y in (0,1), got ({}, {})",
            x.to_f64(),
            y.to_f64()
        )));
    }
    let bits = internal_bits(ctx);
    if x.is_zero() || y.is_zero() {
        return Ok(BigReal::new(ctx.working_bits()));
    }
    let x = BigReal::with_val(bits, x);
    let y = BigReal::with_val(bits, y);
    let xy = BigReal::with_val(bits, &x * &y);
    let den = BigReal::with_val(bits, 1u32 - &xy);
    let u = BigReal::with_val(bits, 1u32 - &y) * &x / &den;
    let v = BigReal::with_val(bits, 1u32 - &x) * &y / &den;
    let r = rogers_inner(&x, bits) + rogers_inner(&y, bits)
        - rogers_inner(&xy, bits)
        - rogers_inner(&u, bits)
        - rogers_inner(&v, bits);
    Ok(BigReal::with_val(ctx.working_bits(), r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::agree_to;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(120)
    }

    fn f(c: &PrecisionContext, p: i32, q: u32) -> BigReal {
        c.float(p) / q
    }

    #[test]
    fn special_values() {
        let c = ctx();
        let pi2 = c.pi_squared();
        assert_eq!(li_m(&c.zero(), 2, &c).unwrap(), 0);
        assert!(agree_to(&li_m(&c.float(1), 2, &c).unwrap(), &(pi2.clone() / 6u32), 120));
        assert!(agree_to(&li_m(&c.float(-1), 2, &c).unwrap(), &(-pi2.clone() / 12u32), 120));
        assert!(agree_to(&li2_real(&c.float(-1), &c).unwrap(), &(-pi2.clone() / 12u32), 120));
        let ln2 = c.float(2).ln();
        let want = pi2.clone() / 12u32 - ln2.square() / 2u32;
        assert!(agree_to(&li2_real(&f(&c, 1, 2), &c).unwrap(), &want, 120));
        assert!(agree_to(&rogers_l(&f(&c, 1, 2), &c).unwrap(), &(pi2.clone() / 12u32), 120));
        let g = (c.float(5).sqrt() - 1u32) / 2u32;
        assert!(agree_to(&rogers_l(&g, &c).unwrap(), &(pi2 / 10u32), 120));
    }

    #[test]
    fn domain_errors() {
        let c = PrecisionContext::new(30);
        assert!(li_m(&c.float(1.5), 2, &c).is_err());
        assert!(li_m(&c.float(0.5), 1, &c).is_err());
        assert!(li2_real(&c.float(1.0001), &c).is_err());
        assert!(rogers_l(&c.float(-1.1), &c).is_err());
        assert!(PolylogDomainPolicy::new(0.9, true).is_err());
        assert!(PolylogDomainPolicy::new(0.3, true).is_ok());
    }

    #[test]
    fn li2_routes_agree() {
        let c = ctx();
        for v in [-1.0, -0.9, -0.6, -0.3, 0.1, 0.49, 0.5, 0.51, 0.8, 0.97, 0.999] {
            let z = c.float(v);
            let a = li_m(&z, 2, &c).unwrap();
            let b = li2_real(&z, &c).unwrap();
            assert!(agree_to(&a, &b, 118), "z = {v}");
        }
    }

    #[test]
    fn policy_does_not_change_value() {
        let c = PrecisionContext::new(60);
        let z = c.float(0.7);
        let a = li2_real(&z, &c).unwrap();
        let b = li2_real_with_policy(&z, &c, &PolylogDomainPolicy::new(0.75, true).unwrap()).unwrap();
        let d = li2_real_with_policy(&z, &c, &PolylogDomainPolicy::new(0.25, false).unwrap()).unwrap();
        assert!(agree_to(&a, &b, 60));
        assert!(agree_to(&a, &d, 60));
    }

    #[test]
    fn trilog_values() {
        let c = ctx();
        // Li₃(1/2) = 7ζ(3)/8 − π² ln2/12 + ln³2/6
        let ln2 = c.float(2).ln();
        let want = zeta(3, c.working_bits()) * 7u32 / 8u32 - c.pi_squared() * &ln2 / 12u32
            + ln2.clone().pow(3u32) / 6u32;
        let got = li_m(&f(&c, 1, 2), 3, &c).unwrap();
        assert!(agree_to(&got, &want, 118));
        let via_near = li_m_with_policy(&f(&c, 1, 2), 3, &c, &PolylogDomainPolicy::new(0.25, true).unwrap()).unwrap();
        assert!(agree_to(&via_near, &want, 118));
        // Li₃(−1) = −3ζ(3)/4
        let m1 = li_m(&c.float(-1), 3, &c).unwrap();
        assert!(agree_to(&m1, &(-zeta(3, c.working_bits()) * 3u32 / 4u32), 118));
        let m09 = li_m(&c.float(-0.9), 4, &c).unwrap();
        let direct = li_series_partial(&c.float(-0.9), 4, 6000, c.working_bits());
        assert!(agree_to(&m09, &direct, 110));
    }

    #[test]
    fn five_term_at_half() {
        let c = ctx();
        let h = f(&c, 1, 2);
        let r = five_term_residual(&h, &h, &c).unwrap();
        assert!(agree_to(&r, &c.zero(), 110));
        // π²/6 = L(1/4) + 2 L(1/3)
        let s = rogers_l(&f(&c, 1, 4), &c).unwrap() + rogers_l(&f(&c, 1, 3), &c).unwrap() * 2u32;
        assert!(agree_to(&s, &(c.pi_squared() / 6u32), 118));
        assert_eq!(five_term_residual(&h, &c.zero(), &c).unwrap(), 0);
        assert!(five_term_residual(&h, &c.float(1), &c).is_err());
    }

    #[test]
    fn truncation_tracks_tail_bound() {
        let c = PrecisionContext::new(60);
        let bits = c.working_bits();
        let z = c.float(0.45);
        let n = series_terms(0.45, 2, bits);
        let full = li_series_partial(&z, 2, 2 * n, bits);
        let half = li_series_partial(&z, 2, n / 2, bits);
        let at_n = li_series_partial(&z, 2, n, bits);
        let d_n = (full.clone() - &at_n).abs().to_f64();
        assert!(d_n <= tail_estimate(0.45, 2, n));
        let d_half = (full - &half).abs().to_f64();
        assert!(d_half <= tail_estimate(0.45, 2, n / 2));
        assert!(d_half > tail_estimate(0.45, 2, n));
    }
}
