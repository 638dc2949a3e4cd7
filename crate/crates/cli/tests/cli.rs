use std::process::{Command, Output};

use dilog_cli::report::{ItemStatus, Report};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dilog-lab"));
    c.args(args);
    for k in ["DILOG_DIGITS", "DILOG_QMAX", "DILOG_REPORT", "DILOG_REGISTRY", "DILOG_SEED_GRID", "DILOG_ORDER", "DILOG_SEED"] {
        c.env_remove(k);
    }
    c.envs(env.iter().copied());
    c.output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String, i32) {
    let mut a = args.to_vec();
    a.extend(["--report", "json"]);
    let out = run(&a);
    let text = String::from_utf8(out.stdout).unwrap();
    let rep: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (rep, text, out.status.code().unwrap())
}

#[test]
fn verify_single_and_all() {
    let (rep, _, code) = json(&["verify", "--id", "kanade-main"]);
    assert_eq!(code, 0);
    assert_eq!(rep.items[0].observed.as_deref(), Some("4/27"));
    let (rep, _, code) = json(&["verify", "--all"]);
    assert_eq!(code, 0);
    assert!(rep.items.len() >= 18);
    assert!(rep.items.iter().all(|i| i.status == ItemStatus::Pass));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--id", "no-such"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--all", "--digits", "20"]).status.code(), Some(2));
    assert_eq!(run(&["nahm", "solve", "--matrix", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["qseries", "--identity", "4"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--base", "sqrt("]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn kanade_proof_and_forced_failure() {
    let (rep, _, code) = json(&["prove-kanade"]);
    assert_eq!(code, 0);
    let last = rep.items.last().unwrap();
    assert_eq!(last.observed.as_deref(), Some("5/18·π²"));
    let (hi, _, code) = json(&["prove-kanade", "--digits", "240"]);
    assert_eq!(code, 0);
    assert_eq!(hi.items.last().unwrap().observed, last.observed);
    let out = run(&["prove-kanade", "--omit", "vi"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("target outside row span"));
}

#[test]
fn search_rediscovers_two_term_identities() {
    let (rep, _, code) = json(&["search", "--base", "root([-1,3,6,1],positive)", "--cmax", "99"]);
    assert_eq!(code, 0);
    let has = |name: &str, q: &str| {
        rep.items
            .iter()
            .any(|i| i.name.starts_with(name) && i.observed.as_deref() == Some(q))
    };
    assert!(has("L((1-s^2)/(2*s+1)) + 1/19·L(s^3*(s+2)/(2*s+1))", "2/19·π²"));
    assert!(has("L(s/(1+s)) + 3/19·L(s^3*(s+2)/(2*s+1))", "13/342·π²"));
}

#[test]
fn nahm_table_and_polyid() {
    let (rep, _, code) = json(&["nahm", "table", "--digits", "60"]);
    assert_eq!(code, 0);
    assert_eq!(rep.items.len(), 11);
    let (rep, _, code) = json(&["polyid"]);
    assert_eq!(code, 0);
    assert_eq!(rep.items.len(), 4);
    let (rep, _, code) = json(&["nahm", "solve", "--matrix", "2,1,1", "--digits", "60"]);
    assert_eq!(code, 0);
    assert_eq!(rep.items[0].observed.as_deref(), Some("5/4·L(1)"));
}

#[test]
fn qseries_identities() {
    let (rep, _, code) = json(&["qseries", "--identity", "1", "--order", "100"]);
    assert_eq!(code, 0);
    assert_eq!(rep.items[0].observed.as_deref(), Some("match through q^100"));
    let (rep, _, code) = json(&["qseries", "--identity", "1", "--printed", "--order", "30"]);
    assert_eq!(code, 1);
    assert_eq!(rep.items[0].observed.as_deref(), Some("first mismatch at q^8: sum 5, product 4"));
}

#[test]
fn json_round_trip_and_determinism() {
    let (rep, text, _) = json(&["qseries"]);
    assert_eq!(rep.to_json(), text);
    let (mut a, _, _) = json(&["verify", "--all", "--digits", "60"]);
    let (mut b, _, _) = json(&["verify", "--all", "--digits", "60"]);
    a.wall_ms = 0;
    b.wall_ms = 0;
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn environment_overrides_with_flag_precedence() {
    let out = run_env(&["polyid", "--report", "json"], &[("DILOG_DIGITS", "60")]);
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.config.digits, 60);
    let out = run_env(&["polyid", "--report", "json", "--digits", "80"], &[("DILOG_DIGITS", "60")]);
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.config.digits, 80);
    let out = run_env(&["polyid"], &[("DILOG_REPORT", "json")]);
    assert!(serde_json::from_slice::<Report>(&out.stdout).is_ok());
}

#[test]
fn registry_file_replaces_builtin() {
    let dump = run(&["registry"]);
    assert_eq!(dump.status.code(), Some(0));
    let text = String::from_utf8(dump.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    // change one stated value so that record must fail
    let tampered = text.replacen("\"rhs\": \"1/8\"", "\"rhs\": \"1/9\"", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, tampered).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["verify", "--id", "lima", "--registry", p]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--id", "euler-1", "--registry", p]).status.code(), Some(0));
    std::fs::write(&path, "[{\"name\": 3}]").unwrap();
    assert_eq!(run(&["verify", "--all", "--registry", p]).status.code(), Some(2));
}
