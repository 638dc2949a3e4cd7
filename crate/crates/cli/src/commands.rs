use dilog_cli::report::{Item, ItemStatus, Report};
use dilog_core::ladder::{scan_two_term, ElementFamily, ScanConfig};
use dilog_core::nahm::{self, NahmMatrix};
use dilog_core::numeric::fmt_real;
use dilog_core::qseries::kursungoz_check_with;
use dilog_core::relations::kirillov::prove_kanade as replay;
use dilog_core::relations::registry::{builtin_registry, find, load_registry, registry_to_json};
use dilog_core::relations::{parse_rational, verify_relation, DilogRelation, Status};
use dilog_core::{ConstExpr, PrecisionContext, Rational};

use crate::{Global, UsageError};

type CmdResult = Result<Report, UsageError>;

fn registry(g: &Global) -> Result<Vec<DilogRelation>, UsageError> {
    match &g.registry {
        Some(p) => load_registry(p).map_err(|e| UsageError(format!("cannot load registry {}: {e}", p.display()))),
        None => Ok(builtin_registry()),
    }
}

fn ctx(g: &Global) -> PrecisionContext {
    PrecisionContext::new(g.digits)
}

pub fn registry_json(g: &Global) -> Result<String, UsageError> {
    Ok(registry_to_json(&registry(g)?))
}

pub fn verify(g: &Global, ids: &[String], all: bool) -> CmdResult {
    let records = registry(g)?;
    let selected: Vec<&DilogRelation> = if all {
        records.iter().collect()
    } else {
        ids.iter()
            .map(|id| find(&records, id).ok_or_else(|| UsageError(format!("unknown identity `{id}`"))))
            .collect::<Result<_, _>>()?
    };
    let c = ctx(g);
    let mut rep = Report::new("verify", g.echo());
    for r in selected {
        let v = verify_relation(r, &c, g.qmax);
        let status = match v.status {
            Status::Pass => ItemStatus::Pass,
            Status::Fail => ItemStatus::Fail,
            Status::Skipped => ItemStatus::Skipped,
        };
        let mut item = Item::new(&v.name, status).observed_opt(v.recognized).digits(v.digits);
        item.expected = v.expected;
        if let Some(e) = v.residual_exponent {
            item = item.detail(format!("residual 1e{e:.1}"));
        }
        if let Some(n) = v.note {
            item = item.detail(n);
        }
        rep.items.push(item);
    }
    Ok(rep)
}

pub fn prove_kanade(g: &Global, omit: &[String]) -> CmdResult {
    let c = ctx(g);
    let records = registry(g)?;
    let expected = find(&records, "kanade-reformulated")
        .and_then(|r| r.rhs.clone())
        .unwrap_or_else(|| Rational::from((5, 18)));
    let omit: Vec<&str> = omit.iter().map(String::as_str).collect();
    let proof = replay(&c, g.qmax, &omit).map_err(|e| UsageError(e.to_string()))?;
    let mut rep = Report::new("prove-kanade", g.echo());
    let basis = &proof.system.basis;
    for v in proof.inputs() {
        let pi2 = v.pi2.as_ref().map(|q| q.to_string());
        rep.items.push(
            Item::new(format!("({}) {}", v.label, v.display(basis)), ItemStatus::Pass)
                .observed_opt(pi2.map(|p| format!("{p}·π²")))
                .digits(g.digits),
        );
    }
    let name = "3L(y) - L(b)";
    match &proof.certificate {
        Some(cert) => {
            let residual_ok = proof
                .residual_exponent
                .is_some_and(|e| e < -(g.digits as f64 - 20.0));
            let ok = cert.residual_constant == expected && residual_ok;
            let mut item = Item::pass_if(name, ok)
                .expected(format!("{expected}·π²"))
                .observed(format!("{}·π²", cert.residual_constant))
                .digits(g.digits)
                .detail(format!("multipliers {cert}"));
            if let Some(e) = proof.residual_exponent {
                item = item.detail(format!("residual 1e{e:.1}"));
            }
            rep.items.push(item);
        }
        None => rep.items.push(
            Item::new(name, ItemStatus::Fail)
                .expected(format!("{expected}·π²"))
                .observed("target outside row span")
                .detail(format!("rank {} of {} input relations", proof.rank, proof.inputs().len())),
        ),
    }
    Ok(rep)
}

pub fn search(
    g: &Global,
    base: &str,
    cmax: u32,
    detect_digits: u32,
    confirm_digits: Option<u32>,
    generic_bases: usize,
) -> CmdResult {
    let base_expr = ConstExpr::parse(base).map_err(|e| UsageError(format!("bad base `{base}`: {e}")))?;
    base_expr
        .eval(&PrecisionContext::new(detect_digits))
        .map_err(|e| UsageError(format!("cannot evaluate base `{base}`: {e}")))?;
    let cfg = ScanConfig {
        cmax,
        qmax: g.qmax,
        detect_digits,
        confirm_digits: confirm_digits.unwrap_or(2 * detect_digits),
        generic_bases,
        seed: g.seed,
    };
    let fam = ElementFamily::default_at(base_expr);
    let scan = scan_two_term(&fam, &cfg, &registry(g)?).map_err(|e| UsageError(e.to_string()))?;
    let mut rep = Report::new("search", g.echo());
    for h in &scan.hits {
        let mut name = format!("L({}) + {}·L({})", h.f1, h.a1, h.f2);
        if let Some(k) = &h.known {
            name.push_str(&format!(" [known: {k}]"));
        }
        if h.generic {
            name.push_str(" [generic]");
        }
        rep.items.push(
            Item::new(name, ItemStatus::Pass)
                .observed(format!("{}·π²", h.q))
                .digits(h.confirm_digits)
                .detail(h.integral_form()),
        );
    }
    for (f, why) in &scan.excluded {
        rep.notes.push(format!("excluded {f}: {why}"));
    }
    rep.notes.push(format!(
        "{} ordered pairs, {} prefilter candidates, {} hits",
        scan.pairs,
        scan.candidates,
        scan.hits.len()
    ));
    Ok(rep)
}

pub fn nahm_solve(g: &Global, matrix: &str, a1: &str) -> CmdResult {
    let a1 = parse_rational(a1).map_err(|e| UsageError(format!("bad a1 `{a1}`: {e}")))?;
    let m = NahmMatrix::parse(matrix)
        .map_err(|e| UsageError(e.to_string()))?
        .with_a1(a1);
    if m.a1 <= 0 {
        return Err(UsageError("a1 must be positive".into()));
    }
    let c = ctx(g);
    let mut rep = Report::new("nahm solve", g.echo());
    match nahm::solve_system(&m, &c, g.seed_grid as usize) {
        Ok(sols) => {
            for s in sols {
                let r = s
                    .residuals
                    .0
                    .clone()
                    .abs()
                    .max(&s.residuals.1.clone().abs())
                    .to_f64();
                rep.items.push(
                    Item::new(format!("{m}: x = {}, y = {}", fmt_real(&s.x, 30), fmt_real(&s.y, 30)), ItemStatus::Pass)
                        .observed_opt(s.ratio.map(|q| format!("{q}·L(1)")))
                        .digits(g.digits)
                        .detail(format!("xi = {}", fmt_real(&s.xi, 30)))
                        .detail(format!("max residual {r:.1e}")),
                );
            }
        }
        Err(e) => rep
            .items
            .push(Item::new(m.to_string(), ItemStatus::Fail).observed(e.to_string())),
    }
    Ok(rep)
}

pub fn nahm_table(g: &Global) -> CmdResult {
    let c = ctx(g);
    let mut rep = Report::new("nahm table", g.echo());
    for row in nahm::reproduce_table(&c, g.seed_grid as usize) {
        let mut item = Item::pass_if(&row.matrix, row.pass)
            .expected(&row.expected)
            .observed_opt(row.ratio.clone())
            .digits(g.digits);
        if let (Some(x), Some(y)) = (&row.x, &row.y) {
            item = item.detail(format!("x = {x}, y = {y}"));
        }
        if row.ambiguous {
            item = item.detail(format!("{} solutions, more than one with a small-denominator ratio", row.solutions));
        }
        if let Some(n) = &row.note {
            item = item.detail(n.clone());
        }
        rep.items.push(item);
    }
    Ok(rep)
}

pub fn qseries(g: &Global, identity: Option<u8>, printed: bool) -> CmdResult {
    let which: Vec<u8> = identity.map_or(vec![1, 2, 3], |w| vec![w]);
    let order = g.order as usize;
    let mut rep = Report::new("qseries", g.echo());
    for w in which {
        let r = kursungoz_check_with(w, order, printed).map_err(|e| UsageError(e.to_string()))?;
        let observed = match &r.first_mismatch {
            None => format!("match through q^{order}"),
            Some(m) => format!("first mismatch at q^{}: sum {}, product {}", m.exponent, m.sum, m.product),
        };
        let prefix = r.sum_series.truncate(order.min(12));
        rep.items.push(
            Item::pass_if(format!("identity {w}: {}", r.product), r.matched)
                .expected(format!("match through q^{order}"))
                .observed(observed)
                .detail(format!("sum side starts {prefix}")),
        );
    }
    Ok(rep)
}

pub fn polyid(g: &Global) -> CmdResult {
    let c = ctx(g);
    let checks = nahm::check_poly_identities(&c).map_err(|e| UsageError(e.to_string()))?;
    let mut rep = Report::new("polyid", g.echo());
    for ch in checks {
        rep.items.push(Item::pass_if(ch.name, ch.pass).observed(ch.detail));
    }
    Ok(rep)
}
