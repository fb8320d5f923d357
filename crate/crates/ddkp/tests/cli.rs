use std::process::Command;

use ddkp::HierarchyCache;
use ddkp_core::symmetry::{builtin, BuiltinName};

fn ddkp(args: &[&str], seed: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ddkp"));
    cmd.args(args).env_remove("DDKP_SEED");
    if let Some(s) = seed {
        cmd.env("DDKP_SEED", s);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn sl2_reports_three_zero_relations() {
    let (code, out, _) = ddkp(&["verify", "sl2"], None);
    assert_eq!(code, 0);
    assert_eq!(out.matches("syntactic zero").count(), 3);
}

#[test]
fn seed_comes_from_the_environment_unless_given() {
    let seed_of = |out: &str| {
        let v: serde_json::Value = serde_json::from_str(out).unwrap();
        v["parameters"]["seed"].as_u64().unwrap()
    };
    let args = ["oracle", "zero", "u - u", "--json"];
    assert_eq!(seed_of(&ddkp(&args, Some("42")).1), 42);
    assert_eq!(seed_of(&ddkp(&args, Some("0x10")).1), 16);
    let mut explicit = args.to_vec();
    explicit.extend(["--seed", "7"]);
    assert_eq!(seed_of(&ddkp(&explicit, Some("42")).1), 7);
    assert_eq!(ddkp(&args, Some("banana")).0, 2);
}

#[test]
fn witness_is_reproducible_from_the_report() {
    let args = [
        "oracle",
        "zero",
        "Theta(u*u[0,1]) - u*Theta(u[0,1])",
        "--json",
        "--seed",
        "3",
    ];
    let (code, a, _) = ddkp(&args, None);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["oracle"]["verdict"], "nonzero");
    assert!(v["oracle"]["witness"]["state"]["sites"].is_object());
    assert_eq!(ddkp(&args, None).1, a);
}

#[test]
fn hierarchy_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hierarchy.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = ddkp(
        &["hierarchy", "--depth", "2", "--out", p, "--trials", "4"],
        None,
    );
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("H2 = "));
    let cache = HierarchyCache::load(&path).unwrap();
    assert_eq!(cache.records.len(), 2);
    assert_eq!(cache.engine_version, env!("CARGO_PKG_VERSION"));
    let members = cache.members().unwrap();
    assert_eq!(members[0], builtin(BuiltinName::K));
    assert_eq!(
        members[1],
        builtin(BuiltinName::G3).scale(&ddkp_core::rational::int(-2))
    );
}

#[test]
fn timesym_prints_the_polynomial() {
    let (code, out, _) = ddkp(&["timesym", "--generator", "H"], None);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("latex: (-xu_{x}-u)+2t(u_{xx}+2uu_{x}+2\\Theta(u_{x}))"));
    let (code, _, err) = ddkp(&["timesym", "--generator", "u", "--cap", "3"], None);
    assert_eq!(code, 3);
    assert!(err.contains("did not terminate"));
}

#[test]
fn parse_errors_carry_positions() {
    let (code, _, err) = ddkp(&["normalize", "u[0,1] + t"], None);
    assert_eq!(code, 2);
    assert!(err.contains("1:10"), "{err}");
    let (code, _, err) = ddkp(&["latex", "u^(2)"], None);
    assert_eq!(code, 2);
    assert!(err.contains("non-negative integer"), "{err}");
}

#[test]
fn verify_json_is_byte_identical() {
    let args = ["verify", "weights", "--m", "1", "--json"];
    let a = ddkp(&args, None);
    assert_eq!(a.0, 0);
    assert_eq!(a, ddkp(&args, None));
}
