use std::process::{Command, Output};

fn braidkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidkit"))
        .args(args)
        .env_remove("BRAIDKIT_DEGREE")
        .output()
        .expect("run braidkit")
}

fn stdout(args: &[&str]) -> String {
    let out = braidkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn braid_on_the_quantum_plane() {
    assert_eq!(stdout(&["braid", "aq2", "y", "x"]), "q*x(x)y + (q^2 - 1)*y(x)x");
    assert_eq!(stdout(&["braid", "aq2", "x", "y"]), "q*y(x)x");
}

#[test]
fn braid_between_different_comodules() {
    // matrix generator past a plane coordinate
    assert_eq!(stdout(&["braid", "bglq2", "b", "y", "--with", "aq2"]), "q*y(x)b");
    assert_eq!(stdout(&["braid", "bglq2", "c", "y", "--with", "aq2"]), "q^-1*y(x)c");
}

#[test]
fn normal_forms() {
    assert_eq!(stdout(&["nf", "bglq2", "b*a"]), "q^2*a*b");
    assert_eq!(stdout(&["nf", "aq2", "y*x"]), "q*x*y");
    assert_eq!(stdout(&["nf", "glq2", "C*Cinv (x) alpha"]), "1(x)alpha");
}

#[test]
fn pairing_values() {
    assert_eq!(stdout(&["R", "glq2", "C", "C"]), "q^6");
    assert_eq!(stdout(&["R", "glq2", "beta", "gamma"]), "q^2 - 1");
    assert_eq!(stdout(&["R", "glq2", "C", "C", "--inverse"]), "q^-6");
}

#[test]
fn transmuted_relations_hold() {
    let text = stdout(&["transmute", "glq2", "--from", "bglq2", "--relations"]);
    assert!(text.ends_with("7 checks: 7 pass, 0 fail, 0 error"), "{text}");
    assert_eq!(stdout(&["transmute", "glq2", "beta*alpha"]), "q^2*alpha*beta");
}

#[test]
fn verify_reports_and_exits_zero() {
    let text = stdout(&["verify", "superline"]);
    assert!(text.lines().last().unwrap().contains(" 0 fail, 0 error"));
    assert!(text.contains("braided\tbraiding-inverse:theta,theta\tPASS"));
}

#[test]
fn constructions_print_tables() {
    let text = stdout(&["biproduct", "aq2"]);
    assert!(text.contains("x<alpha = q^2*x"));
    assert!(text.contains("x<gamma = 0"));
    let text = stdout(&["smashcop", "aq2"]);
    assert!(text.contains("y*alpha = alpha(x)y + (q - q^-1)*beta(x)x"));
    assert!(text.contains("Delta(1(x)x) = 1(x)1(x)1(x)x + 1(x)x(x)alpha(x)1 + 1(x)y(x)gamma(x)1"));
    let text = stdout(&["bosonise", "superline"]);
    assert!(text.ends_with(", 0 fail, 0 error"), "{text}");
}

#[test]
fn json_output() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "R", "glq2", "alpha", "delta"])).unwrap();
    assert_eq!(v["result"], "q");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "verify", "z2prime"])).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["fail"], 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "catalog"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(braidkit(&["nf", "glq2", "z*alpha"]).status.code(), Some(2));
    assert_eq!(braidkit(&["nf", "nope", "a"]).status.code(), Some(2));
    assert_eq!(braidkit(&["--degree", "0", "verify", "glq2"]).status.code(), Some(2));
    assert_eq!(braidkit(&["bosonise", "glq2"]).status.code(), Some(2));
}

#[test]
fn failing_definition_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.bk");
    // wrong antipode: S(theta) = theta
    let src = braidkit_src("superline").replace("theta = -theta", "theta = theta");
    std::fs::write(&path, src).unwrap();
    let p = path.to_str().unwrap();
    let out = braidkit(&["verify", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("antipode-left:theta\tFAIL"));
    // other commands refuse to use it unless asked not to verify
    assert_eq!(braidkit(&["nf", p, "theta"]).status.code(), Some(1));
    assert_eq!(braidkit(&["--no-verify", "nf", p, "theta"]).status.code(), Some(0));
}

#[test]
fn degree_from_environment() {
    let small = Command::new(env!("CARGO_BIN_EXE_braidkit"))
        .args(["verify", "glq2"])
        .env("BRAIDKIT_DEGREE", "1")
        .output()
        .unwrap();
    let small = String::from_utf8(small.stdout).unwrap();
    let default = stdout(&["verify", "glq2"]);
    assert!(small.lines().count() < default.lines().count());
}

fn braidkit_src(name: &str) -> String {
    stdout(&["export", name]) + "\n"
}
