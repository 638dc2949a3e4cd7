//! Exact truncated q-series: inverse q-Pochhammer symbols, rank-2 Nahm-type
//! sums and partition products over residue classes.

use std::fmt;

use rayon::prelude::*;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 100;
/// Largest lattice radius `nahm_sum_series` will scan.
pub const LATTICE_CAP: u64 = 1 << 20;

/// Power series in `q`, exact through `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Integer>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Integer::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Integer::from(1);
        s
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        PowerSeries {
            coeffs: coeffs.iter().map(|&c| Integer::from(c)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Integer {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += Integer::from(a * b);
                }
            }
        }
        out
    }

    /// Adds `q^shift · other` in place, dropping terms past the order.
    pub fn add_shifted(&mut self, other: &Self, shift: usize) {
        let n = self.order();
        if shift > n {
            return;
        }
        for (k, c) in other.coeffs.iter().enumerate().take(n - shift + 1) {
            self.coeffs[k + shift] += c;
        }
    }

    /// Multiplies in place by `1/(1 − q^part)`.
    pub fn divide_by_one_minus(&mut self, part: usize) {
        assert!(part > 0);
        for k in part..self.coeffs.len() {
            let prev = self.coeffs[k - part].clone();
            self.coeffs[k] += prev;
        }
    }

    /// First index where the two series differ, over their common order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0() != std::cmp::Ordering::Less)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

/// `1/(q^step; q^step)_m` through `q^order`; `parts = None` gives `m = ∞`.
pub fn inv_pochhammer_series(step: usize, parts: Option<usize>, order: usize) -> PowerSeries {
    assert!(step >= 1, "step must be positive");
    let mut s = PowerSeries::one(order);
    let mut k = 1;
    while parts.is_none_or(|m| k <= m) && k * step <= order {
        s.divide_by_one_minus(k * step);
        k += 1;
    }
    s
}

/// `Σ_n q^{½nᵀAn + nᵀB + C} / ((q^J1;q^J1)_{n1} (q^J2;q^J2)_{n2})` over `n ∈ ℕ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NahmSumSpec {
    #[serde(rename = "A")]
    pub a: [[i64; 2]; 2],
    #[serde(rename = "B")]
    pub b: [i64; 2],
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "J")]
    pub j: [u64; 2],
}

impl NahmSumSpec {
    pub fn validate(&self) -> Result<()> {
        let [[a, b1], [b2, d]] = self.a;
        if b1 != b2 {
            return Err(Error::Invalid("A must be symmetric".into()));
        }
        if a <= 0 || a * d - b1 * b1 <= 0 {
            return Err(Error::Invalid("A must be positive definite".into()));
        }
        if a % 2 != 0 || d % 2 != 0 {
            return Err(Error::Invalid("½nᵀAn must be integral: diagonal of A must be even".into()));
        }
        if self.j.contains(&0) {
            return Err(Error::Invalid("J entries must be positive".into()));
        }
        Ok(())
    }

    pub fn exponent(&self, n1: i64, n2: i64) -> i64 {
        let [[a, b], [_, d]] = self.a;
        (a * n1 * n1 + d * n2 * n2) / 2 + b * n1 * n2 + self.b[0] * n1 + self.b[1] * n2 + self.c
    }

    // radius R with e(n) > order whenever |n| > R
    fn radius(&self, order: usize) -> f64 {
        let [[a, b], [_, d]] = self.a;
        let (a, b, d) = (a as f64, b as f64, d as f64);
        let lambda = 0.5 * (a + d - ((a - d).powi(2) + 4.0 * b * b).sqrt());
        // e(n) ≥ ½λ|n|² − |B||n| + C, with λ halved again to absorb rounding
        let k = lambda / 4.0;
        let bn = ((self.b[0] * self.b[0] + self.b[1] * self.b[1]) as f64).sqrt();
        let c = self.c as f64 - order as f64;
        (bn + (bn * bn - 4.0 * k * c).sqrt()) / (2.0 * k) + 1.0
    }
}

/// Partitions into parts congruent to a listed residue mod `modulus`
/// (a residue equal to the modulus stands for 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    #[serde(rename = "mod")]
    pub modulus: usize,
    pub residues: Vec<usize>,
}

impl ProductSpec {
    pub fn new(modulus: usize, residues: &[usize]) -> Self {
        ProductSpec {
            modulus,
            residues: residues.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        let mut seen = self.residues.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.residues.len() || seen.iter().any(|&r| r == 0 || r > self.modulus) {
            return Err(Error::Invalid(format!(
                "residues must be distinct and in 1..={}",
                self.modulus
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residues.iter().map(|r| format!("q^{r}")).collect();
        write!(f, "1/({}; q^{})∞", r.join(", "), self.modulus)
    }
}

pub fn nahm_sum_series(spec: &NahmSumSpec, order: usize) -> Result<PowerSeries> {
    spec.validate()?;
    let r = spec.radius(order);
    if !r.is_finite() || r > LATTICE_CAP as f64 {
        return Err(Error::Invalid(format!("lattice radius {r:.1} exceeds the cap {LATTICE_CAP}")));
    }
    let r = r.ceil().max(0.0) as i64;
    let pochs = |step: u64| -> Vec<PowerSeries> {
        let mut v = vec![PowerSeries::one(order)];
        for k in 1..=r as usize {
            let mut next = v[k - 1].clone();
            let part = k * step as usize;
            if part <= order {
                next.divide_by_one_minus(part);
            }
            v.push(next);
        }
        v
    };
    let (p1, p2) = (pochs(spec.j[0]), pochs(spec.j[1]));
    let rows: Vec<Result<PowerSeries>> = (0..=r)
        .into_par_iter()
        .map(|n1| {
            let mut acc = PowerSeries::zero(order);
            for n2 in 0..=r {
                let e = spec.exponent(n1, n2);
                if e < 0 {
                    return Err(Error::Invalid(format!("negative exponent {e} at n = ({n1}, {n2})")));
                }
                if e as usize > order {
                    continue;
                }
                let room = order - e as usize;
                let term = p1[n1 as usize].truncate(room).mul(&p2[n2 as usize].truncate(room));
                acc.add_shifted(&term, e as usize);
            }
            Ok(acc)
        })
        .collect();
    let mut total = PowerSeries::zero(order);
    for row in rows {
        total.add_shifted(&row?, 0);
    }
    Ok(total)
}

pub fn product_side_series(spec: &ProductSpec, order: usize) -> Result<PowerSeries> {
    spec.validate()?;
    let mut s = PowerSeries::one(order);
    for part in 1..=order {
        let r = part % spec.modulus;
        if spec.residues.iter().any(|&res| res % spec.modulus == r) {
            s.divide_by_one_minus(part);
        }
    }
    Ok(s)
}

/// Sum side of identity `which` (1, 2 or 3).
pub fn kursungoz_sum(which: u8) -> Result<NahmSumSpec> {
    let b = match which {
        1 => [0, 0],
        2 => [1, 3],
        3 => [2, 3],
        _ => return Err(Error::Invalid(format!("identity must be 1, 2 or 3, got {which}"))),
    };
    Ok(NahmSumSpec {
        a: [[2, 3], [3, 6]],
        b,
        c: 0,
        j: [1, 3],
    })
}

/// Product side of identity `which`. With `printed`, identity 1 uses the
/// residue set `{1, 3, 6, 9}` exactly as displayed instead of `{1, 3, 6, 8}`.
pub fn kursungoz_product(which: u8, printed: bool) -> Result<ProductSpec> {
    let r: &[usize] = match (which, printed) {
        (1, false) => &[1, 3, 6, 8],
        (1, true) => &[1, 3, 6, 9],
        (2, _) => &[2, 3, 6, 7],
        (3, _) => &[3, 4, 5, 6],
        _ => return Err(Error::Invalid(format!("identity must be 1, 2 or 3, got {which}"))),
    };
    Ok(ProductSpec::new(9, r))
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub exponent: usize,
    pub sum: String,
    pub product: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QSeriesReport {
    pub identity: u8,
    pub order: usize,
    pub product: String,
    pub matched: bool,
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip)]
    pub sum_series: PowerSeries,
    #[serde(skip)]
    pub product_series: PowerSeries,
}

pub fn kursungoz_check(which: u8, order: usize) -> Result<QSeriesReport> {
    kursungoz_check_with(which, order, false)
}

pub fn kursungoz_check_with(which: u8, order: usize, printed: bool) -> Result<QSeriesReport> {
    let sum_spec = kursungoz_sum(which)?;
    let prod_spec = kursungoz_product(which, printed)?;
    let sum = nahm_sum_series(&sum_spec, order)?;
    let prod = product_side_series(&prod_spec, order)?;
    let first_mismatch = sum.first_mismatch(&prod).map(|k| Mismatch {
        exponent: k,
        sum: sum.coeff(k).to_string(),
        product: prod.coeff(k).to_string(),
    });
    Ok(QSeriesReport {
        identity: which,
        order,
        product: prod_spec.to_string(),
        matched: first_mismatch.is_none(),
        first_mismatch,
        sum_series: sum,
        product_series: prod,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(inv_pochhammer_series(1, None, 5), PowerSeries::from_i64s(&[1, 1, 2, 3, 5, 7]));
        assert_eq!(inv_pochhammer_series(3, Some(1), 6), PowerSeries::from_i64s(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(inv_pochhammer_series(1, Some(0), 3), PowerSeries::from_i64s(&[1, 0, 0, 0]));
    }

    #[test]
    fn nahm_examples() {
        let s1 = kursungoz_sum(1).unwrap();
        assert_eq!(nahm_sum_series(&s1, 6).unwrap(), PowerSeries::from_i64s(&[1, 1, 1, 2, 2, 2, 4]));
        assert_eq!(nahm_sum_series(&s1, 0).unwrap(), PowerSeries::from_i64s(&[1]));
        let s2 = kursungoz_sum(2).unwrap();
        assert_eq!(nahm_sum_series(&s2, 3).unwrap(), PowerSeries::from_i64s(&[1, 0, 1, 1]));
    }

    #[test]
    fn product_examples() {
        let p = product_side_series(&ProductSpec::new(9, &[1, 3, 6, 9]), 6).unwrap();
        assert_eq!(p, PowerSeries::from_i64s(&[1, 1, 1, 2, 2, 2, 4]));
        let p = product_side_series(&ProductSpec::new(9, &[3, 4, 5, 6]), 2).unwrap();
        assert_eq!(p, PowerSeries::from_i64s(&[1, 0, 0]));
        assert_eq!(product_side_series(&ProductSpec::new(9, &[]), 3).unwrap(), PowerSeries::one(3));
    }

    #[test]
    fn identities_hold() {
        for which in 1..=3 {
            let r = kursungoz_check(which, 100).unwrap();
            assert!(r.matched, "identity {which}: {:?}", r.first_mismatch);
        }
        let r3 = kursungoz_check(3, 6).unwrap();
        assert_eq!(r3.sum_series, PowerSeries::from_i64s(&[1, 0, 0, 1, 1, 1, 2]));
    }

    #[test]
    fn printed_first_identity_breaks_at_eight() {
        let r = kursungoz_check_with(1, 20, true).unwrap();
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.exponent, m.sum.as_str(), m.product.as_str()), (8, "5", "4"));
    }

    #[test]
    fn invalid_specs() {
        assert!(kursungoz_sum(4).is_err());
        assert!(ProductSpec::new(9, &[1, 1]).validate().is_err());
        assert!(ProductSpec::new(9, &[10]).validate().is_err());
        let mut s = kursungoz_sum(1).unwrap();
        s.a = [[2, 3], [3, 2]];
        assert!(nahm_sum_series(&s, 5).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let s: NahmSumSpec = serde_json::from_str(r#"{"A": [[2,3],[3,6]], "B": [0,0], "C": 0, "J": [1,3]}"#).unwrap();
        assert_eq!(s, kursungoz_sum(1).unwrap());
        let p: ProductSpec = serde_json::from_str(r#"{"mod": 9, "residues": [1,3,6,9]}"#).unwrap();
        assert_eq!(p, kursungoz_product(1, true).unwrap());
    }
}
