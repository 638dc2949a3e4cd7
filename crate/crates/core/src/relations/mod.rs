//! Dilogarithm relations: registry, numeric verification with rational
//! completion, and exact row elimination over relation vectors.

pub mod elimination;
pub mod generic;
pub mod kirillov;
pub mod registry;

pub use elimination::{eliminate, Certificate, RelationVector, SymbolBasis};
pub use generic::{generic_s_relations, verify_generic_s_relations};
pub use kirillov::{complement_relations, kirillov_system, resolve_constants, KirillovSystem};
pub use registry::{builtin_registry, registry_from_json, registry_to_json};

use rug::{Complex, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::expr::ConstExpr;
use crate::numeric::recognize::{recognize_confirmed, tolerance_digits};
use crate::numeric::{log10_abs, BigReal, PrecisionContext};
use crate::polylog::{li2_complex, rogers_l};

#[derive(Clone, Debug, PartialEq)]
pub struct DilogTerm {
    pub coeff: Rational,
    pub arg: ConstExpr,
}

impl DilogTerm {
    pub fn new(coeff: impl Into<Rational>, arg: ConstExpr) -> Self {
        DilogTerm {
            coeff: coeff.into(),
            arg,
        }
    }
}

/// `coeff · Li₂(z^power)` for a complex base `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerTerm {
    pub coeff: Rational,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RelationBody {
    /// `Σ coeff · L(arg)` over real arguments in `[-1, 1]`.
    Rogers(Vec<DilogTerm>),
    /// `Re Σ coeff · Li₂(z^power)` with `z = re + i·im`.
    ComplexLi2 {
        re: ConstExpr,
        im: ConstExpr,
        terms: Vec<PowerTerm>,
    },
}

/// A claimed identity `value = rhs · π²`; `rhs = None` means unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct DilogRelation {
    pub name: String,
    pub body: RelationBody,
    pub rhs: Option<Rational>,
    pub source: String,
}

impl DilogRelation {
    pub fn rogers(name: &str, terms: Vec<DilogTerm>, rhs: Option<Rational>, source: &str) -> Self {
        DilogRelation {
            name: name.to_string(),
            body: RelationBody::Rogers(terms),
            rhs,
            source: source.to_string(),
        }
    }

    /// Builds a real relation from `(coefficient, argument)` strings.
    pub fn parse_rogers(name: &str, terms: &[(&str, &str)], rhs: Option<&str>, source: &str) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, a)| Ok(DilogTerm::new(parse_rational(c)?, ConstExpr::parse(a)?)))
            .collect::<Result<Vec<_>>>()?;
        let rhs = rhs.map(parse_rational).transpose()?;
        Ok(Self::rogers(name, terms, rhs, source))
    }

    pub fn terms(&self) -> Option<&[DilogTerm]> {
        match &self.body {
            RelationBody::Rogers(t) => Some(t),
            RelationBody::ComplexLi2 { .. } => None,
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("expected a rational p/q, found `{t}`"),
        })
}

/// `Σ coeff · L(arg)` (or the real part of the complex sum).
pub fn evaluate_relation(r: &DilogRelation, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    match &r.body {
        RelationBody::Rogers(terms) => {
            if terms.is_empty() {
                return Err(Error::Invalid(format!("relation `{}` has no terms", r.name)));
            }
            let mut sum = ctx.zero();
            for t in terms {
                let v = t.arg.eval(ctx)?;
                if v.clone().abs() > 1 {
                    return Err(Error::Domain(format!(
                        "argument `{}` of `{}` evaluates to {} outside [-1, 1]",
                        t.arg,
                        r.name,
                        v.to_f64()
                    )));
                }
                sum += rogers_l(&v, ctx)? * BigReal::with_val(bits, &t.coeff);
            }
            Ok(sum)
        }
        RelationBody::ComplexLi2 { re, im, terms } => {
            let z = Complex::with_val(bits, (re.eval(ctx)?, im.eval(ctx)?));
            let mut sum = ctx.zero();
            for t in terms {
                let zp = Complex::with_val(bits, rug::ops::Pow::pow(&z, t.power));
                let li = li2_complex(&zp, ctx)?;
                sum += BigReal::with_val(bits, li.real()) * BigReal::with_val(bits, &t.coeff);
            }
            Ok(sum)
        }
    }
}

/// The relation's value divided by `π²`.
pub fn relation_over_pi2(r: &DilogRelation, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(evaluate_relation(r, ctx)? / ctx.pi_squared())
}

/// Recognizes `value/π²` as a rational (two-stage). When the relation states
/// an `rhs`, a different recognized rational is an error.
pub fn complete_relation(r: &DilogRelation, ctx: &PrecisionContext, qmax: u64) -> Result<Option<Rational>> {
    let q = recognize_confirmed(|c| relation_over_pi2(r, c), ctx, qmax)?;
    if let (Some(found), Some(want)) = (&q, &r.rhs) {
        if found != want {
            return Err(Error::Inconsistent(format!(
                "`{}` recognized as {found}·π² but states {want}·π²",
                r.name
            )));
        }
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Per-relation verification outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub recognized: Option<String>,
    pub expected: Option<String>,
    /// `log10 |value/π² − expected|` (or against the recognized value).
    pub residual_exponent: Option<f64>,
    pub digits: u32,
    pub status: Status,
    pub note: Option<String>,
}

/// Verifies one relation: recognition at `ctx`, confirmation at doubled
/// precision, and comparison with the stated `rhs`.
pub fn verify_relation(r: &DilogRelation, ctx: &PrecisionContext, qmax: u64) -> VerifyReport {
    let mut rep = VerifyReport {
        name: r.name.clone(),
        recognized: None,
        expected: r.rhs.as_ref().map(|q| q.to_string()),
        residual_exponent: None,
        digits: ctx.target_digits(),
        status: Status::Fail,
        note: None,
    };
    let value = match relation_over_pi2(r, ctx) {
        Ok(v) => v,
        Err(e) => {
            rep.note = Some(e.to_string());
            return rep;
        }
    };
    let recognized = match recognize_confirmed(|c| relation_over_pi2(r, c), ctx, qmax) {
        Ok(q) => q,
        Err(e) => {
            rep.note = Some(e.to_string());
            return rep;
        }
    };
    rep.recognized = recognized.as_ref().map(|q| q.to_string());
    let reference = r.rhs.as_ref().or(recognized.as_ref());
    if let Some(q) = reference {
        let diff = BigReal::with_val(value.prec(), &value - q);
        rep.residual_exponent = Some(log10_abs(&diff).unwrap_or(-(ctx.working_bits() as f64) * 0.30103));
    }
    rep.status = match (&r.rhs, &recognized) {
        (Some(want), Some(got)) if want == got => Status::Pass,
        (None, Some(_)) => Status::Pass,
        _ => Status::Fail,
    };
    if rep.status == Status::Fail && rep.note.is_none() {
        rep.note = Some(match &recognized {
            None => format!(
                "no rational with denominator <= {qmax} within 1e-{}",
                tolerance_digits(ctx)
            ),
            Some(got) => format!("recognized {got}"),
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(terms: &[(&str, &str)], rhs: Option<&str>) -> DilogRelation {
        DilogRelation::parse_rogers("t", terms, rhs, "test").unwrap()
    }

    #[test]
    fn lima_value() {
        let ctx = PrecisionContext::new(60);
        let r = rel(&[("1", "sqrt(2)-1"), ("1", "1-sqrt(2)/2")], Some("1/8"));
        let v = evaluate_relation(&r, &ctx).unwrap();
        assert!((v.to_f64() - 1.2337005501361697).abs() < 1e-14);
        assert_eq!(complete_relation(&r, &ctx, 10_000).unwrap(), Some(Rational::from((1, 8))));
    }

    #[test]
    fn trivial_values() {
        let ctx = PrecisionContext::new(40);
        let one = rel(&[("1", "1")], None);
        assert_eq!(complete_relation(&one, &ctx, 100).unwrap(), Some(Rational::from((1, 6))));
        let zero = rel(&[("1", "0")], None);
        assert_eq!(evaluate_relation(&zero, &ctx).unwrap(), 0);
    }

    #[test]
    fn out_of_range_argument() {
        let ctx = PrecisionContext::new(30);
        let r = rel(&[("1", "3/2")], None);
        assert!(matches!(evaluate_relation(&r, &ctx), Err(Error::Domain(_))));
        let rep = verify_relation(&r, &ctx, 100);
        assert_eq!(rep.status, Status::Fail);
        assert!(rep.note.is_some());
    }

    #[test]
    fn wrong_rhs_is_reported() {
        let ctx = PrecisionContext::new(40);
        let r = rel(&[("1", "1/2")], Some("1/6"));
        assert!(matches!(complete_relation(&r, &ctx, 100), Err(Error::Inconsistent(_))));
        let rep = verify_relation(&r, &ctx, 100);
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.recognized.as_deref(), Some("1/12"));
    }
}
