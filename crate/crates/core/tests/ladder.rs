use dilog_core::ladder::{family_values, scan_two_term, ElementFamily, ScanConfig};
use dilog_core::relations::registry::{builtin_registry, W, X_KANADE};
use dilog_core::{ConstExpr, PrecisionContext, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn family_at_w_values() {
    let ctx = PrecisionContext::new(60);
    let fam = ElementFamily::default_at(ConstExpr::parse(W).unwrap());
    let fv = family_values(&fam, &ctx).unwrap();
    let get = |f: &str| {
        let k = fam.formulas.iter().position(|g| g == f).unwrap();
        fv.values.iter().find(|(i, _)| *i == k).unwrap().1.to_f64()
    };
    assert!((get("s") - 0.2266815).abs() < 1e-7);
    assert!((get("(1-s^2)/(2*s+1)") - 0.6527036).abs() < 1e-7);
    assert!((get("s^3*(s+2)/(2*s+1)") - 0.0178457).abs() < 1e-7);
}

#[test]
fn scan_at_w_finds_both_identities() {
    let fam = ElementFamily::default_at(ConstExpr::parse(W).unwrap());
    let rep = scan_two_term(&fam, &ScanConfig::default(), &builtin_registry()).unwrap();
    let find = |f1: &str, f2: &str, a1: Rational| rep.hits.iter().find(|h| h.f1 == f1 && h.f2 == f2 && h.a1 == a1);
    let first = find("(1-s^2)/(2*s+1)", "s^3*(s+2)/(2*s+1)", q(1, 19)).expect("first identity");
    assert_eq!(first.q, q(2, 19));
    assert!(!first.generic);
    assert_eq!(first.known.as_deref(), Some("thm1-first"));
    let second = find("s/(1+s)", "s^3*(s+2)/(2*s+1)", q(3, 19)).expect("second identity");
    assert_eq!(second.q, q(13, 342));
    assert!(!second.generic);
    assert!(second.known.is_some());
    // reflection L(s/(1+s)) + L(1/(1+s)) = π²/6 holds at every base
    let refl = rep
        .hits
        .iter()
        .find(|h| h.a1 == 1 && h.q == q(1, 6) && h.f1 == "1/(1+s)" && h.f2 == "s/(1+s)")
        .expect("reflection pair");
    assert!(refl.generic);
    for h in &rep.hits {
        assert!(h.a1 <= 1 && h.confirm_digits >= 2 * h.detect_digits);
    }
}

#[test]
fn scan_at_kanade_base() {
    let fam = ElementFamily::default_at(ConstExpr::parse(X_KANADE).unwrap());
    let cfg = ScanConfig::default();
    let rep = scan_two_term(&fam, &cfg, &builtin_registry()).unwrap();
    let h = rep
        .hits
        .iter()
        .find(|h| h.f1 == "1/(1+s)" && h.f2 == "(s+1-s^2)/(s+1)" && h.a1 == q(1, 3))
        .expect("Kanade hit");
    assert_eq!(h.q, q(4, 27));
    assert_eq!(h.known.as_deref(), Some("kanade-main"));
    assert!(!h.generic);
    let again = scan_two_term(&fam, &cfg, &builtin_registry()).unwrap();
    assert_eq!(rep.hits, again.hits);
}

#[test]
fn random_base_hits_are_all_generic() {
    let fam = ElementFamily::default_at(ConstExpr::parse("(sin(pi/3)^7 + 1/1000)").unwrap());
    let cfg = ScanConfig {
        cmax: 30,
        seed: 11,
        ..ScanConfig::default()
    };
    let rep = scan_two_term(&fam, &cfg, &builtin_registry()).unwrap();
    assert!(!rep.hits.is_empty());
    for h in &rep.hits {
        assert!(h.generic, "non-generic hit at a random base: {h:?}");
    }
}
