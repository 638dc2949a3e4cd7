//! Duplication and five-term instances in a single element `s`.
//!
//! `L(f)²` in the displayed list is read as `L(f²)`.

use super::{verify_relation, DilogRelation, DilogTerm, Status, VerifyReport};
use crate::error::Result;
use crate::numeric::expr::ConstExpr;
use crate::numeric::PrecisionContext;

/// `(name, [(coeff, argument in s)], rhs)`; rhs `None` means unknown.
const RELATIONS: [(&str, &[(i64, &str)], Option<i64>); 8] = [
    ("dup-s", &[(1, "s^2"), (-2, "s"), (2, "s/(s+1)")], Some(0)),
    ("dup-1/(s+1)", &[(1, "(1/(s+1))^2"), (-2, "1/(s+1)"), (2, "1/(s+2)")], Some(0)),
    ("dup-s/(s+1)", &[(1, "(s/(s+1))^2"), (-2, "s/(s+1)"), (2, "s/(1+2*s)")], Some(0)),
    (
        "dup-1/(s(s+2))",
        &[(1, "1/(s^2*(s+2)^2)"), (-2, "1/(s*(s+2))"), (2, "(1/(s+1))^2")],
        Some(0),
    ),
    (
        "five-term-1",
        &[
            (1, "s^2"),
            (1, "(1/(s+1))^2"),
            (-1, "(s/(s+1))^2"),
            (-1, "s^3*(s+2)/(2*s+1)"),
            (-1, "(1-s^2)/(2*s+1)"),
        ],
        Some(0),
    ),
    (
        "five-term-2",
        &[
            (1, "s"),
            (1, "s^2"),
            (-1, "s^3"),
            (-1, "s^2/(s^2+s+1)"),
            (-1, "s*(s+1)/(s^2+s+1)"),
        ],
        Some(0),
    ),
    (
        "five-term-3-printed",
        &[
            (1, "1/(s+1)"),
            (1, "1/(s+2)"),
            (-1, "1/(s^2+3*s+1)"),
            (-1, "s/(s^2+3*s+1)"),
            (-1, "(s+1)/(s^2+3*s+1)"),
        ],
        None,
    ),
    (
        "five-term-3-rogers",
        &[
            (1, "1/(s+1)"),
            (1, "1/(s+2)"),
            (-1, "1/(s^2+3*s+2)"),
            (-1, "s/(s^2+3*s+1)"),
            (-1, "(s+1)/(s^2+3*s+1)"),
        ],
        Some(0),
    ),
];

/// The relations instantiated at `s`. The last five-term relation appears
/// twice: as displayed (with `1/(s²+3s+1)`, rhs unknown) and as the Rogers
/// instance at `(1/(s+1), 1/(s+2))` (with `1/(s²+3s+2)`, rhs 0).
pub fn generic_s_relations(s: &ConstExpr) -> Vec<DilogRelation> {
    RELATIONS
        .iter()
        .map(|(name, terms, rhs)| {
            let terms = terms
                .iter()
                .map(|(c, a)| {
                    let e = ConstExpr::parse_with_vars(a, &["s"]).expect("relation argument parses");
                    DilogTerm::new(*c, e.substitute("s", s))
                })
                .collect();
            DilogRelation::rogers(name, terms, rhs.map(rug::Rational::from), "generic relation in s")
        })
        .collect()
}

/// Verifies each relation at `s`. Relations with an argument outside
/// `(0, 1)` are skipped and reported as such.
pub fn verify_generic_s_relations(s: &ConstExpr, ctx: &PrecisionContext, qmax: u64) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for r in generic_s_relations(s) {
        let mut outside = None;
        for t in r.terms().unwrap_or(&[]) {
            let v = t.arg.eval(ctx)?;
            if v.is_sign_negative() || v.is_zero() || v >= 1 {
                outside = Some(format!("argument {} = {:.6} outside (0, 1)", t.arg, v.to_f64()));
                break;
            }
        }
        if let Some(note) = outside {
            out.push(VerifyReport {
                name: r.name.clone(),
                recognized: None,
                expected: r.rhs.as_ref().map(|q| q.to_string()),
                residual_exponent: None,
                digits: ctx.target_digits(),
                status: Status::Skipped,
                note: Some(note),
            });
            continue;
        }
        let mut rep = verify_relation(&r, ctx, qmax);
        if r.rhs.is_none() && rep.recognized.as_deref() != Some("0") {
            rep.status = Status::Fail;
            rep.note = Some(match &rep.recognized {
                Some(q) => format!("value is {q}·π², not 0"),
                None => "value is not a rational multiple of π² (rhs 0 fails)".into(),
            });
        }
        out.push(rep);
    }
    Ok(out)
}
