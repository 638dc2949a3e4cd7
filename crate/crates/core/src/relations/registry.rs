//! Built-in identity registry and its JSON file format.
//!
//! ```json
//! [
//!   {
//!     "name": "lima",
//!     "terms": [{"coeff": "1", "arg": "sqrt(2) - 1"}, ...],
//!     "rhs": "1/8",
//!     "source": "..."
//!   },
//!   {
//!     "name": "complex-quartic",
//!     "complex_base": {"re": "(-1/2)", "im": "..."},
//!     "terms": [{"coeff": "2", "power": 3}, ...],
//!     "rhs": "41/75",
//!     "source": "..."
//!   }
//! ]
//! ```

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::{parse_rational, DilogRelation, DilogTerm, PowerTerm, RelationBody};
use crate::error::{Error, Result};
use crate::numeric::expr::ConstExpr;

/// Q1 = 1 − 2 sin(π/18)
pub const Q1: &str = "1 - 2*sin(pi/18)";
/// Q2³ = 4 sin²(π/18) + 4 sin(π/18)
pub const Q2_CUBED: &str = "4*sin(pi/18)^2 + 4*sin(pi/18)";
/// x = ½ sec(π/9)
pub const X_KANADE: &str = "sec(pi/9)/2";
/// j = ½ sec(2π/9) = 1/(1 + x)
pub const J: &str = "sec(2*pi/9)/2";
/// w, the positive root of w³ + 6w² + 3w − 1
pub const W: &str = "root([-1, 3, 6, 1], positive)";
/// α, the smallest positive root of α³ + 54α² − 57α + 1
pub const ALPHA: &str = "root([1, -57, 54, 1], smallest-positive)";
/// ρ with 1 − ρ² = ρ³
pub const RHO: &str = "root([-1, 0, 1, 1], positive)";
/// Positive root of x⁶ + x⁵ − 2x³ + 2x − 1
pub const SEXTIC_X0: &str = "sqrt(1 - 3*sin(pi/14)^2) - sin(pi/14)";
/// 1/(1 − x₁) with x₁ the negative root of the same sextic
pub const SEXTIC_Y0: &str = "1/(1 + sqrt(1 - 3*sin(pi/14)^2) + sin(pi/14))";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex_base: Option<BaseFile>,
    terms: Vec<TermFile>,
    rhs: String,
    source: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFile {
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arg: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power: Option<u32>,
}

fn to_file(r: &DilogRelation) -> RecordFile {
    let rhs = r.rhs.as_ref().map_or_else(|| "unknown".to_string(), |q| q.to_string());
    match &r.body {
        RelationBody::Rogers(terms) => RecordFile {
            name: r.name.clone(),
            complex_base: None,
            terms: terms
                .iter()
                .map(|t| TermFile {
                    coeff: t.coeff.to_string(),
                    arg: Some(t.arg.to_string()),
                    power: None,
                })
                .collect(),
            rhs,
            source: r.source.clone(),
        },
        RelationBody::ComplexLi2 { re, im, terms } => RecordFile {
            name: r.name.clone(),
            complex_base: Some(BaseFile {
                re: re.to_string(),
                im: im.to_string(),
            }),
            terms: terms
                .iter()
                .map(|t| TermFile {
                    coeff: t.coeff.to_string(),
                    arg: None,
                    power: Some(t.power),
                })
                .collect(),
            rhs,
            source: r.source.clone(),
        },
    }
}

fn from_file(f: RecordFile) -> Result<DilogRelation> {
    let bad = |msg: String| Error::Registry(format!("record `{}`: {msg}", f.name));
    let rhs = if f.rhs.trim() == "unknown" {
        None
    } else {
        Some(parse_rational(&f.rhs).map_err(|e| bad(e.to_string()))?)
    };
    if f.terms.is_empty() {
        return Err(bad("no terms".into()));
    }
    let body = match &f.complex_base {
        None => {
            let mut terms = Vec::new();
            for t in &f.terms {
                let arg = t.arg.as_deref().ok_or_else(|| bad("term without `arg`".into()))?;
                if t.power.is_some() {
                    return Err(bad("`power` is only valid with `complex_base`".into()));
                }
                let coeff = parse_rational(&t.coeff).map_err(|e| bad(e.to_string()))?;
                let arg = ConstExpr::parse(arg).map_err(|e| bad(e.to_string()))?;
                terms.push(DilogTerm { coeff, arg });
            }
            RelationBody::Rogers(terms)
        }
        Some(b) => {
            let mut terms = Vec::new();
            for t in &f.terms {
                let power = t.power.ok_or_else(|| bad("complex term without `power`".into()))?;
                let coeff = parse_rational(&t.coeff).map_err(|e| bad(e.to_string()))?;
                terms.push(PowerTerm { coeff, power });
            }
            RelationBody::ComplexLi2 {
                re: ConstExpr::parse(&b.re).map_err(|e| bad(e.to_string()))?,
                im: ConstExpr::parse(&b.im).map_err(|e| bad(e.to_string()))?,
                terms,
            }
        }
    };
    Ok(DilogRelation {
        name: f.name,
        body,
        rhs,
        source: f.source,
    })
}

pub fn registry_to_json(records: &[DilogRelation]) -> String {
    let files: Vec<RecordFile> = records.iter().map(to_file).collect();
    let mut s = serde_json::to_string_pretty(&files).expect("registry serializes");
    s.push('\n');
    s
}

pub fn registry_from_json(text: &str) -> Result<Vec<DilogRelation>> {
    let files: Vec<RecordFile> =
        serde_json::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
    let mut out = Vec::with_capacity(files.len());
    for f in files {
        if out.iter().any(|r: &DilogRelation| r.name == f.name) {
            return Err(Error::Registry(format!("duplicate record `{}`", f.name)));
        }
        out.push(from_file(f)?);
    }
    Ok(out)
}

pub fn load_registry(path: &std::path::Path) -> Result<Vec<DilogRelation>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Registry(format!("{}: {e}", path.display())))?;
    registry_from_json(&text)
}

fn rec(name: &str, terms: &[(&str, &str)], rhs: &str, source: &str) -> DilogRelation {
    DilogRelation::parse_rogers(name, terms, Some(rhs), source).expect("built-in record parses")
}

/// Every identity displayed in the source material, plus the reformulated
/// form of Kanade's relation.
pub fn builtin_registry() -> Vec<DilogRelation> {
    let q2 = format!("({Q2_CUBED})");
    let one_over_1px = format!("1/(1 + {X_KANADE})");
    let mut v = vec![
        rec("euler-1", &[("1", "1")], "1/6", "Euler: L(1) = pi^2/6"),
        rec("euler-minus-1", &[("1", "-1")], "-1/12", "Euler: L(-1) = -pi^2/12"),
        rec("euler-half", &[("1", "1/2")], "1/12", "Euler: L(1/2) = pi^2/12"),
        rec("landen-golden", &[("1", "(sqrt(5)-1)/2")], "1/10", "Landen: L((sqrt5-1)/2) = pi^2/10"),
        rec("landen-golden-squared", &[("1", "(3-sqrt(5))/2")], "1/15", "Landen: L((3-sqrt5)/2) = pi^2/15"),
        rec("lima", &[("1", "sqrt(2)-1"), ("1", "1-sqrt(2)/2")], "1/8", "Lima two-term identity"),
        rec("quadratic-sqrt3", &[("1", "(sqrt(3)+2)/4"), ("8", "sqrt(3)-1")], "13/12", "quadratic, a1 = 8"),
        rec("quadratic-sqrt2", &[("1", "(2-sqrt(2))/4"), ("6", "sqrt(2)-1")], "11/24", "quadratic, a1 = 6"),
        rec("quadratic-sqrt5-scaled", &[("1", "4*sqrt(5)-8"), ("4", "sqrt(5)-2")], "1/3", "quadratic, a1 = 4"),
        rec("quadratic-sqrt5", &[("1", "7/2 - 3*sqrt(5)/2"), ("2", "1/2 - sqrt(5)/10")], "2/15", "quadratic, a1 = 2"),
        rec("plastic", &[("1", &format!("{RHO}^2")), ("2", RHO)], "1/3", "Lewin ladder, 1 - rho^2 = rho^3"),
        rec("kanade-main", &[("1", Q1), ("1/3", &q2)], "4/27", "Kanade's conjecture"),
        rec(
            "kanade-reformulated",
            &[("3", &one_over_1px), ("-1", &format!("({X_KANADE})^2/(1 + {X_KANADE})"))],
            "5/18",
            "3L(y) - L(b) with y = 1/(1+x), b = x^2/(1+x)",
        ),
        rec(
            "gordon-mcintosh",
            &[("-2", &format!("{W}^3")), ("2", &format!("{W}^2")), ("11", W)],
            "1/2",
            "Gordon-McIntosh pi/18 ladder",
        ),
        rec("thm1-first", &[("19", J), ("1", &format!("(1-{J})^3*({J})^2"))], "2", "two-term identity in j, a1 = 1/19"),
        rec(
            "thm1-second",
            &[("19", &format!("(1-{J})^2/({J})")), ("3", &format!("(1-{J})^3*({J})^2"))],
            "13/18",
            "two-term identity in j, a1 = 3/19",
        ),
        rec(
            "linear-kanade",
            &[("19", &format!("{W}/({W}+1)")), ("3", ALPHA)],
            "13/18",
            "19L(w/(w+1)) + 3L(alpha) = 13pi^2/18",
        ),
        rec("two-pi-squared", &[("19", &one_over_1px), ("1", ALPHA)], "2", "19L(1/(x+1)) + L(alpha) = 2pi^2"),
        rec("bytsko-sextic", &[("1", SEXTIC_X0), ("1", SEXTIC_Y0)], "4/21", "Bytsko, sextic x^6+x^5-2x^3+2x-1"),
    ];
    v.push(DilogRelation {
        name: "complex-quartic".into(),
        body: RelationBody::ComplexLi2 {
            re: ConstExpr::parse("-1/2").unwrap(),
            im: ConstExpr::parse("sqrt(5 + 2*sqrt(5))/2").unwrap(),
            terms: vec![
                PowerTerm {
                    coeff: Rational::from(2),
                    power: 3,
                },
                PowerTerm {
                    coeff: Rational::from(-3),
                    power: 2,
                },
            ],
        },
        rhs: Some(Rational::from((41, 75))),
        source: "Re[2Li2(z^3) - 3Li2(z^2)], z = e^(i pi/5)/(1 - e^(i pi/5))".into(),
    });
    v
}

/// Looks up a record by name.
pub fn find<'a>(records: &'a [DilogRelation], name: &str) -> Option<&'a DilogRelation> {
    records.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let reg = builtin_registry();
        assert!(reg.len() >= 18);
        let e = find(&reg, "euler-1").unwrap();
        assert_eq!(e.rhs, Some(Rational::from((1, 6))));
        let s = find(&reg, "quadratic-sqrt5-scaled").unwrap();
        assert_eq!(s.rhs, Some(Rational::from((1, 3))));
        assert_eq!(s.terms().unwrap()[1].coeff, 4);
        let mut names: Vec<_> = reg.iter().map(|r| r.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), reg.len());
    }

    #[test]
    fn every_record_verifies() {
        let ctx = crate::numeric::PrecisionContext::new(60);
        for r in builtin_registry() {
            let rep = super::super::verify_relation(&r, &ctx, 10_000);
            assert_eq!(rep.status, super::super::Status::Pass, "{rep:?}");
        }
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = registry_to_json(&builtin_registry());
        let back = registry_from_json(&text).unwrap();
        assert_eq!(back, builtin_registry());
        assert_eq!(registry_to_json(&back), text);
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(registry_from_json("{").is_err());
        let no_terms = r#"[{"name":"a","terms":[],"rhs":"1","source":""}]"#;
        assert!(matches!(registry_from_json(no_terms), Err(Error::Registry(_))));
        let bad_arg = r#"[{"name":"a","terms":[{"coeff":"1","arg":"foo"}],"rhs":"1","source":""}]"#;
        assert!(registry_from_json(bad_arg).is_err());
        let dup = r#"[{"name":"a","terms":[{"coeff":"1","arg":"1"}],"rhs":"unknown","source":""},
                      {"name":"a","terms":[{"coeff":"1","arg":"1"}],"rhs":"unknown","source":""}]"#;
        assert!(registry_from_json(dup).is_err());
        let unknown = r#"[{"name":"a","terms":[{"coeff":"1","arg":"1/2"}],"rhs":"unknown","source":""}]"#;
        assert_eq!(registry_from_json(unknown).unwrap()[0].rhs, None);
    }
}
