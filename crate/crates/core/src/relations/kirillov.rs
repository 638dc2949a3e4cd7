//! The relation system behind the proof of Kanade's identity: seven
//! relations among `L`-values of rational functions of
//! `x = ½ sec(π/9)`, closed under row elimination to `3L(y) − L(b)`.

use rug::Rational;

use super::elimination::{eliminate, rank, Certificate, RelationVector, SymbolBasis};
use super::{complete_relation, DilogRelation, DilogTerm};
use crate::error::{Error, Result};
use crate::numeric::expr::ConstExpr;
use crate::numeric::{agree_to, log10_abs, BigReal, PrecisionContext};
use crate::polylog::rogers_l;

/// Element names and their definitions in terms of `x`.
pub const ELEMENTS: [(&str, &str); 13] = [
    ("x", "x"),
    ("x2", "x^2"),
    ("x3", "x^3"),
    ("y", "1/(1+x)"),
    ("y2", "(1/(1+x))^2"),
    ("z", "x/(1+x)"),
    ("z2", "(x/(1+x))^2"),
    ("a", "1/(x+2)"),
    ("a2", "(1/(x+2))^2"),
    ("b", "x^2/(x+1)"),
    ("c", "1/(x*(x+2))"),
    ("c2", "(1/(x*(x+2)))^2"),
    ("h", "x/(1+2*x)"),
];

#[derive(Clone, Debug)]
pub struct KirillovSystem {
    pub basis: SymbolBasis,
    pub relations: Vec<RelationVector>,
}

pub fn symbol_basis(x: &ConstExpr) -> SymbolBasis {
    SymbolBasis::new(
        ELEMENTS
            .iter()
            .map(|(n, def)| {
                let e = ConstExpr::parse_with_vars(def, &["x"]).expect("element definition parses");
                (n.to_string(), e.substitute("x", x))
            })
            .collect(),
    )
}

/// The seven relations, each written as `lhs − rhs` with an unmeasured π² column.
pub fn kirillov_system(x: &ConstExpr) -> KirillovSystem {
    let basis = symbol_basis(x);
    let relations = vec![
        basis.vector("i", &[(1, "a2"), (1, "y2"), (-2, "y"), (2, "x2")]),
        basis.vector("ii", &[(1, "c2"), (-2, "y"), (-1, "z2"), (2, "y2")]),
        basis.vector("iii", &[(-1, "x3"), (3, "x2"), (1, "x"), (1, "z2"), (-1, "y2")]),
        basis.vector("iv", &[(2, "a"), (1, "y2"), (-2, "y")]),
        basis.vector("v", &[(-1, "z2"), (2, "z"), (-2, "h")]),
        basis.vector("vi", &[(1, "y"), (1, "a"), (-1, "h"), (-1, "x"), (-1, "b")]),
        basis.vector("vii", &[(1, "x3"), (-3, "x"), (-3, "x2")]),
    ];
    KirillovSystem { basis, relations }
}

/// `3L(y) − L(b)`.
pub fn kanade_target(basis: &SymbolBasis) -> RelationVector {
    basis.vector("3L(y) - L(b)", &[(3, "y"), (-1, "b")])
}

/// The vector as a relation over concrete arguments.
pub fn as_relation(v: &RelationVector, basis: &SymbolBasis) -> DilogRelation {
    let terms = v
        .coeffs
        .iter()
        .zip(&basis.elements)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, e)| DilogTerm::new(c.clone(), e.clone()))
        .collect();
    DilogRelation::rogers(&v.label, terms, v.pi2.clone(), "relation vector")
}

/// Measures every unknown π² column by rational recognition.
pub fn resolve_constants(
    vectors: &mut [RelationVector],
    basis: &SymbolBasis,
    ctx: &PrecisionContext,
    qmax: u64,
) -> Result<()> {
    for v in vectors.iter_mut().filter(|v| v.pi2.is_none()) {
        let r = as_relation(v, basis);
        match complete_relation(&r, ctx, qmax)? {
            Some(q) => v.pi2 = Some(q),
            None => {
                return Err(Error::NoSolution(format!(
                    "π² column of `{}` is not a rational with denominator <= {qmax}",
                    v.label
                )))
            }
        }
    }
    Ok(())
}

/// Euler reflections `L(u) + L(v) = π²/6` for basis pairs with `u + v = 1`.
pub fn complement_relations(basis: &SymbolBasis, ctx: &PrecisionContext) -> Result<Vec<RelationVector>> {
    let values = basis
        .elements
        .iter()
        .map(|e| e.eval(ctx))
        .collect::<Result<Vec<BigReal>>>()?;
    let one = ctx.float(1);
    let digits = ctx.target_digits() as i64 - 10;
    let mut out = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let s = BigReal::with_val(ctx.working_bits(), &values[i] + &values[j]);
            if agree_to(&s, &one, digits) {
                let (ni, nj) = (&basis.names[i], &basis.names[j]);
                let mut v = basis.vector(&format!("reflect({ni},{nj})"), &[(1, ni), (1, nj)]);
                v.pi2 = Some(Rational::from((1, 6)));
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Replay of the elimination proof.
#[derive(Clone, Debug)]
pub struct KanadeProof {
    pub system: KirillovSystem,
    pub complement: Vec<RelationVector>,
    pub certificate: Option<Certificate>,
    pub rank: usize,
    /// `log10 |3L(y) − L(b) − c·π²|` for the certified constant `c`.
    pub residual_exponent: Option<f64>,
}

impl KanadeProof {
    pub fn inputs(&self) -> Vec<RelationVector> {
        let mut v = self.system.relations.clone();
        v.extend(self.complement.iter().cloned());
        v
    }
}

/// Builds the system at `x = ½ sec(π/9)`, drops the relations listed in
/// `omit` (by label), measures constants, adds reflections and eliminates.
pub fn prove_kanade(ctx: &PrecisionContext, qmax: u64, omit: &[&str]) -> Result<KanadeProof> {
    let x = ConstExpr::parse(super::registry::X_KANADE)?;
    let mut system = kirillov_system(&x);
    system.relations.retain(|v| !omit.contains(&v.label.as_str()));
    resolve_constants(&mut system.relations, &system.basis, ctx, qmax)?;
    let complement: Vec<RelationVector> = complement_relations(&system.basis, ctx)?
        .into_iter()
        .filter(|v| !omit.contains(&v.label.as_str()))
        .collect();
    let mut proof = KanadeProof {
        system,
        complement,
        certificate: None,
        rank: 0,
        residual_exponent: None,
    };
    let inputs = proof.inputs();
    proof.rank = rank(&inputs);
    let target = kanade_target(&proof.system.basis);
    proof.certificate = eliminate(&inputs, &target)?;
    if let Some(cert) = &proof.certificate {
        let mut value = ctx.zero();
        for (c, e) in target.coeffs.iter().zip(&proof.system.basis.elements) {
            if !c.is_zero() {
                value += rogers_l(&e.eval(ctx)?, ctx)? * BigReal::with_val(ctx.working_bits(), c);
            }
        }
        value -= ctx.pi_squared() * BigReal::with_val(ctx.working_bits(), &cert.residual_constant);
        proof.residual_exponent = Some(log10_abs(&value).unwrap_or(f64::NEG_INFINITY));
    }
    Ok(proof)
}
