//! Exact row elimination over rational relation vectors.

use std::fmt;

use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::expr::ConstExpr;

/// Named elements over which relation vectors are written.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolBasis {
    pub names: Vec<String>,
    pub elements: Vec<ConstExpr>,
}

impl SymbolBasis {
    pub fn new(entries: Vec<(String, ConstExpr)>) -> Self {
        let (names, elements) = entries.into_iter().unzip();
        SymbolBasis { names, elements }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Vector from `(coefficient, element name)` pairs; panics on an unknown name.
    pub fn vector(&self, label: &str, entries: &[(i64, &str)]) -> RelationVector {
        let mut coeffs = vec![Rational::new(); self.len()];
        for (c, n) in entries {
            let i = self.index(n).unwrap_or_else(|| panic!("unknown basis element `{n}`"));
            coeffs[i] += *c;
        }
        RelationVector {
            label: label.to_string(),
            coeffs,
            pi2: None,
        }
    }
}

/// `Σ coeffs[i] · L(basis[i]) = pi2 · π²`, with `pi2 = None` while unmeasured.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationVector {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub pi2: Option<Rational>,
}

impl RelationVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Human-readable form such as `3L(y) - L(b)`.
    pub fn display(&self, basis: &SymbolBasis) -> String {
        let mut s = String::new();
        for (c, n) in self.coeffs.iter().zip(&basis.names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = Rational::from(c.abs_ref());
            let sign = match (s.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if a == 1 { String::new() } else { format!("{a}") };
            s.push_str(&format!("{sign}{coef}L({n})"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// One multiplier per input relation.
    #[serde(serialize_with = "ser_rationals")]
    pub multipliers: Vec<Rational>,
    #[serde(skip)]
    pub target: RelationVector,
    /// `Σ multiplier_i · pi2_i`, the π² coefficient of the target.
    #[serde(serialize_with = "ser_rational")]
    pub residual_constant: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl Certificate {
    /// Exact check that `Σ multipliers_i · inputs_i` reproduces the target.
    pub fn validate(&self, inputs: &[RelationVector]) -> bool {
        if inputs.len() != self.multipliers.len() {
            return false;
        }
        let n = self.target.coeffs.len();
        let mut acc = vec![Rational::new(); n];
        let mut pi2 = Rational::new();
        for (m, v) in self.multipliers.iter().zip(inputs) {
            if v.coeffs.len() != n {
                return false;
            }
            for (a, c) in acc.iter_mut().zip(&v.coeffs) {
                *a += Rational::from(m * c);
            }
            if !m.is_zero() {
                match &v.pi2 {
                    Some(p) => pi2 += Rational::from(m * p),
                    None => return false,
                }
            }
        }
        acc == self.target.coeffs && pi2 == self.residual_constant
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.multipliers.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}] -> {}·π²", m.join(", "), self.residual_constant)
    }
}

/// Finds rational multipliers with `Σ m_i · inputs_i = target` on every basis
/// coordinate. Returns `Ok(None)` when the target lies outside the row span.
///
/// Every input must carry a measured π² column. Combinations of inputs that
/// vanish on the basis must also vanish in the π² column; otherwise the inputs
/// are inconsistent and no constant can be assigned.
pub fn eliminate(inputs: &[RelationVector], target: &RelationVector) -> Result<Option<Certificate>> {
    let n = target.coeffs.len();
    if let Some(bad) = inputs.iter().find(|v| v.coeffs.len() != n) {
        return Err(Error::Invalid(format!(
            "relation `{}` has {} coordinates, expected {n}",
            bad.label,
            bad.coeffs.len()
        )));
    }
    if let Some(u) = inputs.iter().find(|v| v.pi2.is_none()) {
        return Err(Error::Inconsistent(format!(
            "π² column of `{}` is unknown; resolve constants before elimination",
            u.label
        )));
    }
    let k = inputs.len();
    // augmented n × (k + 1) system: columns are inputs, last column the target
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = inputs.iter().map(|v| v.coeffs[r].clone()).collect();
            row.push(target.coeffs[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, k);
    if m.iter().any(|row| row[..k].iter().all(|c| c.is_zero()) && !row[k].is_zero()) {
        return Ok(None);
    }
    let mut mult = vec![Rational::new(); k];
    for (r, &c) in pivots.iter().enumerate() {
        mult[c] = m[r][k].clone();
    }
    // nullspace directions: each free column gives a basis-level zero combination
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::new(); k];
        v[free] = Rational::from(1);
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        let constant: Rational = v
            .iter()
            .zip(inputs)
            .map(|(a, inp)| Rational::from(a * inp.pi2.as_ref().unwrap()))
            .sum();
        if !constant.is_zero() {
            let used: Vec<&str> = v
                .iter()
                .zip(inputs)
                .filter(|(a, _)| !a.is_zero())
                .map(|(_, i)| i.label.as_str())
                .collect();
            return Err(Error::Inconsistent(format!(
                "relations {} combine to 0 = {constant}·π²",
                used.join(", ")
            )));
        }
    }
    let residual: Rational = mult
        .iter()
        .zip(inputs)
        .map(|(a, inp)| Rational::from(a * inp.pi2.as_ref().unwrap()))
        .sum();
    let mut target = target.clone();
    if let Some(p) = &target.pi2 {
        if *p != residual {
            return Err(Error::Inconsistent(format!(
                "target states {p}·π² but the certificate gives {residual}·π²"
            )));
        }
    }
    target.pi2 = Some(residual.clone());
    Ok(Some(Certificate {
        multipliers: mult,
        target,
        residual_constant: residual,
    }))
}

// Reduced row echelon form on the first `cols` columns; returns pivot columns by row.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::from(m[r][c].recip_ref());
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= Rational::from(&f * p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a set of vectors over the rationals.
pub fn rank(vectors: &[RelationVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let n = first.coeffs.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| vectors.iter().map(|v| v.coeffs[r].clone()).collect())
        .collect();
    rref(&mut m, vectors.len()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> SymbolBasis {
        SymbolBasis::new(
            ["p", "q", "r"]
                .iter()
                .map(|n| (n.to_string(), ConstExpr::num(0)))
                .collect(),
        )
    }

    fn with_pi2(mut v: RelationVector, p: i64) -> RelationVector {
        v.pi2 = Some(Rational::from(p));
        v
    }

    #[test]
    fn trivial_certificate() {
        let b = basis();
        let inputs = vec![with_pi2(b.vector("a", &[(1, "p"), (-1, "q")]), 1)];
        let cert = eliminate(&inputs, &b.vector("t", &[(1, "p"), (-1, "q")])).unwrap().unwrap();
        assert_eq!(cert.multipliers, vec![Rational::from(1)]);
        assert_eq!(cert.residual_constant, 1);
        assert!(cert.validate(&inputs));
    }

    #[test]
    fn combination_and_span() {
        let b = basis();
        let inputs = vec![
            with_pi2(b.vector("a", &[(1, "p"), (1, "q")]), 2),
            with_pi2(b.vector("b", &[(1, "q"), (-1, "r")]), 3),
        ];
        let t = b.vector("t", &[(2, "p"), (1, "q"), (1, "r")]);
        let cert = eliminate(&inputs, &t).unwrap().unwrap();
        assert_eq!(cert.multipliers, vec![Rational::from(2), Rational::from(-1)]);
        assert_eq!(cert.residual_constant, 1);
        assert!(cert.validate(&inputs));
        assert!(eliminate(&inputs, &b.vector("p", &[(1, "p")])).unwrap().is_none());
        assert_eq!(rank(&inputs), 2);
    }

    #[test]
    fn unknown_and_inconsistent_constants() {
        let b = basis();
        let v = b.vector("a", &[(1, "p")]);
        assert!(matches!(eliminate(&[v.clone()], &v), Err(Error::Inconsistent(_))));
        let inputs = vec![with_pi2(v.clone(), 1), with_pi2(v.clone(), 2)];
        assert!(matches!(eliminate(&inputs, &v), Err(Error::Inconsistent(_))));
        let consistent = vec![with_pi2(v.clone(), 1), with_pi2(v.clone(), 1)];
        let c = eliminate(&consistent, &v).unwrap().unwrap();
        assert_eq!(c.residual_constant, 1);
    }

    #[test]
    fn display_form() {
        let b = basis();
        assert_eq!(b.vector("t", &[(3, "p"), (-1, "r")]).display(&b), "3L(p) - L(r)");
    }
}
