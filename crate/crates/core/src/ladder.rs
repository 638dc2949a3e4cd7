//! Pairwise scan for two-term identities `(L(f1) + a1·L(f2))/π² ∈ ℚ` over a
//! family of rational functions of one base value `s`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::Result;
use crate::numeric::expr::ConstExpr;
use crate::numeric::recognize::{recognize_rational, tolerance_digits, DEFAULT_QMAX};
use crate::numeric::{agree_to, BigReal, PrecisionContext};
use crate::polylog::rogers_l;
use crate::relations::DilogRelation;

/// Rational functions of `s` composed from powers of `s`, `1/(1+s)` and `s/(1+s)`.
pub const DEFAULT_FORMULAS: [&str; 21] = [
    "s",
    "s^2",
    "s^3",
    "1/(1+s)",
    "1/(1+s)^2",
    "s/(1+s)",
    "(s/(1+s))^2",
    "s^2/(1+s)",
    "(s+1-s^2)/(s+1)",
    "s/(1+2*s)",
    "1/(s+2)",
    "1/(s*(s+2))",
    "1/(s^2*(s+2)^2)",
    "s^3*(s+2)/(2*s+1)",
    "(1-s^2)/(2*s+1)",
    "s^2/(s^2+s+1)",
    "s*(s+1)/(s^2+s+1)",
    "1/(s^2+3*s+1)",
    "s/(s^2+3*s+1)",
    "(s+1)/(s^2+3*s+1)",
    "1/(s^2+3*s+2)",
];

pub const DEFAULT_CMAX: u32 = 99;
pub const DETECT_DIGITS: u32 = 60;
pub const CONFIRM_DIGITS: u32 = 120;
/// Number of random bases a hit must survive to count as generic.
pub const GENERIC_BASES: usize = 3;
// f64 distance to the nearest small-denominator rational below which a
// candidate is re-evaluated at detect precision
const PREFILTER: f64 = 1e-11;

#[derive(Clone, Debug)]
pub struct ElementFamily {
    pub name: String,
    pub base: ConstExpr,
    pub formulas: Vec<String>,
}

impl ElementFamily {
    pub fn new(name: &str, base: ConstExpr, formulas: &[&str]) -> Self {
        ElementFamily {
            name: name.to_string(),
            base,
            formulas: formulas.iter().map(|f| f.to_string()).collect(),
        }
    }

    /// The 21-element family at `base`.
    pub fn default_at(base: ConstExpr) -> Self {
        Self::new("default", base, &DEFAULT_FORMULAS)
    }

    fn element(&self, k: usize, base: &ConstExpr) -> Result<ConstExpr> {
        Ok(ConstExpr::parse_with_vars(&self.formulas[k], &["s"])?.substitute("s", base))
    }
}

#[derive(Clone, Debug)]
pub struct FamilyValues {
    /// `(formula index, value)` for elements inside `(0, 1)`.
    pub values: Vec<(usize, BigReal)>,
    /// `(formula, reason)` for excluded elements.
    pub excluded: Vec<(String, String)>,
}

pub fn family_values(fam: &ElementFamily, ctx: &PrecisionContext) -> Result<FamilyValues> {
    family_values_at(fam, &fam.base, ctx)
}

fn family_values_at(fam: &ElementFamily, base: &ConstExpr, ctx: &PrecisionContext) -> Result<FamilyValues> {
    base.eval(ctx)?;
    let mut out = FamilyValues {
        values: Vec::new(),
        excluded: Vec::new(),
    };
    for k in 0..fam.formulas.len() {
        match fam.element(k, base).and_then(|e| e.eval(ctx)) {
            Ok(v) if v > 0 && v < 1 => out.values.push((k, v)),
            Ok(v) => out
                .excluded
                .push((fam.formulas[k].clone(), format!("value {:.6} outside (0, 1)", v.to_f64()))),
            Err(e) => out.excluded.push((fam.formulas[k].clone(), e.to_string())),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub cmax: u32,
    pub qmax: u64,
    pub detect_digits: u32,
    pub confirm_digits: u32,
    /// Random bases for the generic check; 0 disables it.
    pub generic_bases: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            cmax: DEFAULT_CMAX,
            qmax: DEFAULT_QMAX,
            detect_digits: DETECT_DIGITS,
            confirm_digits: CONFIRM_DIGITS,
            generic_bases: GENERIC_BASES,
            seed: 0,
        }
    }
}

/// `L(f1) + a1·L(f2) = q·π²`, stored with `a1 ≤ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchHit {
    pub f1: String,
    pub f2: String,
    #[serde(skip)]
    pub i1: usize,
    #[serde(skip)]
    pub i2: usize,
    #[serde(serialize_with = "ser_q")]
    pub a1: Rational,
    #[serde(serialize_with = "ser_q")]
    pub q: Rational,
    pub detect_digits: u32,
    pub confirm_digits: u32,
    /// Name of the matching registry record.
    pub known: Option<String>,
    /// The same hit holds at every random base tried.
    pub generic: bool,
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl SearchHit {
    /// The hit scaled to integer coefficients, e.g. `19L(f1) + L(f2) = 2·π²`.
    pub fn integral_form(&self) -> String {
        let d = self.a1.denom().clone();
        let c1 = d.clone();
        let c2 = self.a1.numer().clone();
        let rhs = Rational::from(&self.q * &d);
        let term = |c: &Integer, f: &str| if *c == 1 { format!("L({f})") } else { format!("{c}L({f})") };
        format!("{} + {} = {}·π²", term(&c1, &self.f1), term(&c2, &self.f2), rhs)
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub hits: Vec<SearchHit>,
    pub excluded: Vec<(String, String)>,
    pub candidates: usize,
    pub pairs: usize,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `a1 = c1/c2 ≤ 1` in lowest terms with `1 ≤ c1 ≤ c2 ≤ cmax`.
pub fn coefficient_grid(cmax: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for c2 in 1..=cmax {
        for c1 in 1..=c2 {
            if gcd(c1, c2) == 1 {
                v.push((c1, c2));
            }
        }
    }
    v
}

// distance from v to the nearest rational with denominator ≤ qmax, through convergents
fn near_rational_f64(v: f64, qmax: u64) -> bool {
    let (mut h0, mut h1) = (0f64, 1f64);
    let (mut k0, mut k1) = (1f64, 0f64);
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > qmax as f64 {
            break;
        }
        if (v - h2 / k2).abs() < PREFILTER {
            return true;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let f = x - a;
        if f < 1e-300 {
            break;
        }
        x = 1.0 / f;
    }
    false
}

fn l_values(fv: &FamilyValues, n: usize, ctx: &PrecisionContext) -> Result<Vec<Option<BigReal>>> {
    let mut out = vec![None; n];
    let pi2 = ctx.pi_squared();
    for (k, v) in &fv.values {
        out[*k] = Some(rogers_l(v, ctx)? / &pi2);
    }
    Ok(out)
}

fn combine(l: &[Option<BigReal>], i: usize, j: usize, a1: &Rational, ctx: &PrecisionContext) -> Option<BigReal> {
    let (a, b) = (l[i].as_ref()?, l[j].as_ref()?);
    Some(BigReal::with_val(ctx.working_bits(), a) + BigReal::with_val(ctx.working_bits(), b) * a1)
}

/// Scans every ordered pair of in-range elements and every `a1 = c1/c2 ≤ 1`
/// (pairs with `a1 = 1` once, in index order). Candidates passing an f64
/// prefilter are recognized at `detect_digits` and confirmed at
/// `confirm_digits`. Hits are sorted by `(f1, f2, a1)` in family order.
pub fn scan_two_term(fam: &ElementFamily, cfg: &ScanConfig, registry: &[DilogRelation]) -> Result<ScanReport> {
    let detect = PrecisionContext::new(cfg.detect_digits);
    let confirm = PrecisionContext::new(cfg.confirm_digits);
    let n = fam.formulas.len();
    let fv = family_values(fam, &detect)?;
    let l_detect = l_values(&fv, n, &detect)?;
    let l_f64: Vec<f64> = l_detect.iter().map(|v| v.as_ref().map_or(f64::NAN, |v| v.to_f64())).collect();
    let grid = coefficient_grid(cfg.cmax);
    let idx: Vec<usize> = fv.values.iter().map(|(k, _)| *k).collect();
    let pairs: Vec<(usize, usize)> = idx
        .iter()
        .flat_map(|&i| idx.iter().filter(move |&&j| j != i).map(move |&j| (i, j)))
        .collect();

    let candidates: Vec<(usize, usize, u32, u32)> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (li, lj) = (l_f64[i], l_f64[j]);
            grid.iter()
                .filter(move |&&(c1, c2)| !(c1 == c2 && i > j))
                .filter(move |&&(c1, c2)| near_rational_f64(li + lj * c1 as f64 / c2 as f64, cfg.qmax))
                .map(move |&(c1, c2)| (i, j, c1, c2))
                .collect::<Vec<_>>()
        })
        .collect();

    let tol_detect = tolerance_digits(&detect);
    let detected: Vec<(usize, usize, Rational, Rational)> = candidates
        .par_iter()
        .filter_map(|&(i, j, c1, c2)| {
            let a1 = Rational::from((c1, c2));
            let v = combine(&l_detect, i, j, &a1, &detect)?;
            recognize_rational(&v, cfg.qmax, tol_detect).map(|q| (i, j, a1, q))
        })
        .collect();

    let mut hits = Vec::new();
    if !detected.is_empty() {
        let fv_c = family_values(fam, &confirm)?;
        let l_confirm = l_values(&fv_c, n, &confirm)?;
        let tol_confirm = tolerance_digits(&confirm);
        let known = KnownIndex::new(registry, &detect);
        for (i, j, a1, q) in detected {
            let Some(v) = combine(&l_confirm, i, j, &a1, &confirm) else { continue };
            if recognize_rational(&v, cfg.qmax, tol_confirm).as_ref() != Some(&q) {
                continue;
            }
            let x1 = value_of(&fv, i);
            let x2 = value_of(&fv, j);
            hits.push(SearchHit {
                f1: fam.formulas[i].clone(),
                f2: fam.formulas[j].clone(),
                i1: i,
                i2: j,
                known: known.lookup(x1, x2, &a1),
                a1,
                q,
                detect_digits: cfg.detect_digits,
                confirm_digits: cfg.confirm_digits,
                generic: false,
            });
        }
    }
    if cfg.generic_bases > 0 && !hits.is_empty() {
        mark_generic(fam, &mut hits, cfg)?;
    }
    hits.sort_by(|a, b| (a.i1, a.i2).cmp(&(b.i1, b.i2)).then(a.a1.cmp(&b.a1)));
    Ok(ScanReport {
        hits,
        excluded: fv.excluded,
        candidates: candidates.len(),
        pairs: pairs.len(),
    })
}

fn value_of(fv: &FamilyValues, k: usize) -> &BigReal {
    &fv.values.iter().find(|(i, _)| *i == k).expect("element in range").1
}

/// Random bases in `(1/20, 19/20)` drawn from `seed`.
pub fn random_bases(count: usize, seed: u64) -> Vec<ConstExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den: u64 = 1 << 52;
    (0..count)
        .map(|_| {
            let t: u64 = rng.gen_range(den / 20..den * 19 / 20);
            ConstExpr::num(Rational::from((t, den)))
        })
        .collect()
}

fn mark_generic(fam: &ElementFamily, hits: &mut [SearchHit], cfg: &ScanConfig) -> Result<()> {
    let ctx = PrecisionContext::new(cfg.detect_digits);
    let n = fam.formulas.len();
    let tol = tolerance_digits(&ctx);
    let mut per_base = Vec::new();
    for b in random_bases(cfg.generic_bases, cfg.seed) {
        let fv = family_values_at(fam, &b, &ctx)?;
        per_base.push(l_values(&fv, n, &ctx)?);
    }
    for h in hits.iter_mut() {
        h.generic = per_base.iter().all(|l| {
            combine(l, h.i1, h.i2, &h.a1, &ctx)
                .and_then(|v| recognize_rational(&v, cfg.qmax, tol))
                .is_some_and(|q| q == h.q)
        });
    }
    Ok(())
}

// two-term registry records with their argument values
struct KnownIndex {
    records: Vec<(String, [(Rational, BigReal); 2])>,
    digits: i64,
}

impl KnownIndex {
    fn new(registry: &[DilogRelation], ctx: &PrecisionContext) -> Self {
        let records = registry
            .iter()
            .filter_map(|r| {
                let t = r.terms()?;
                if t.len() != 2 {
                    return None;
                }
                let u = t[0].arg.eval(ctx).ok()?;
                let v = t[1].arg.eval(ctx).ok()?;
                Some((r.name.clone(), [(t[0].coeff.clone(), u), (t[1].coeff.clone(), v)]))
            })
            .collect();
        KnownIndex {
            records,
            digits: ctx.target_digits() as i64 - 20,
        }
    }

    // sign +1 if x = u, −1 if x = 1 − u (reflection), None otherwise
    fn orient(&self, x: &BigReal, u: &BigReal) -> Option<i32> {
        if agree_to(x, u, self.digits) {
            return Some(1);
        }
        let c = BigReal::with_val(u.prec(), 1u32 - u);
        agree_to(x, &c, self.digits).then_some(-1)
    }

    fn lookup(&self, x1: &BigReal, x2: &BigReal, a1: &Rational) -> Option<String> {
        for (name, terms) in &self.records {
            for (p, q) in [(0, 1), (1, 0)] {
                let (Some(s1), Some(s2)) = (self.orient(x1, &terms[p].1), self.orient(x2, &terms[q].1)) else {
                    continue;
                };
                let k1 = Rational::from(&terms[p].0 * s1);
                let k2 = Rational::from(&terms[q].0 * s2);
                if k1.cmp0() != Ordering::Equal && Rational::from(&k2 / &k1) == *a1 {
                    return Some(name.clone());
                }
            }
        }
        None
    }
}
