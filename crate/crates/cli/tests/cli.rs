use std::process::Command;
use std::sync::Arc;

use proptest::prelude::*;
use serde_json::Value;

use dgres_cli::format::{emit, emit_module, parse, ParseOptions};
use dgres_cli::main_with;
use dgres_core::builtins;
use dgres_core::exactla::Field;

fn run(args: &[&str]) -> (Value, i32) {
    let mut v = vec!["dgres", "--format", "json"];
    v.extend_from_slice(args);
    let (out, err, code) = main_with(v);
    assert!(err.is_empty(), "{err}");
    (serde_json::from_str(&out).expect("json report"), code)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dgres"))
}

#[test]
fn pd_of_m4_is_exact_four() {
    let (r, code) = run(&["pd", "--module", "M_of(4)"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "dgres-report/1");
    assert_eq!(r["result"]["status"], serde_json::json!({ "exact": 4 }));
    assert_eq!(r["exact"], true);
}

#[test]
fn gldim_of_triangular_two() {
    let (r, _) = run(&["gldim", "--algebra", "triangular(2)"]);
    assert_eq!(r["result"]["gldim"]["status"]["exact"], 1);
    assert_eq!(r["result"]["semisimple_zero"]["holds"], false);
}

#[test]
fn require_exact_sets_exit_status_two() {
    let (r, code) = run(&["pd", "--module", "heart(S_0)", "--cap", "4", "--require-exact"]);
    assert_eq!(r["result"]["status"]["at_least"], 4);
    assert_eq!(code, 2);
    let (_, code) = run(&["pd", "--module", "heart(S_0)", "--cap", "4"]);
    assert_eq!(code, 0);
    let (_, code) = run(&["pd", "--module", "M_of(2)", "--require-exact"]);
    assert_eq!(code, 0);
}

#[test]
fn zero_module_reports_minus_infinity() {
    let (r, _) = run(&["pd", "--module", "zero"]);
    assert_eq!(r["result"]["status"]["exact"], "-inf");
}

#[test]
fn errors_exit_with_one() {
    let (out, err, code) = main_with(["dgres", "pd", "--module", "M_of(x)"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("column 6"), "{err}");
    let (_, err, code) = main_with(["dgres", "gldim", "--algebra", "nosuch"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown algebra"), "{err}");
    let (_, _, code) = main_with(["dgres", "frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--format", "json", "hom", "--module", "M_of(1)", "--target", "heart(S_0)", "--window", "-3:5"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t = bin().args(args).arg("--timing").output().unwrap();
    let v: Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v.get("timing_ms").is_some());
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn seed_from_environment_and_flag() {
    let out = bin().args(["--format", "json", "gldim"]).env("DGRES_SEED", "7").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"]["seed"], 7);
    let out = bin().args(["--format", "json", "gldim", "--seed", "9"]).env("DGRES_SEED", "7").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"]["seed"], 9);
    assert_eq!(v["result"]["gldim"]["status"], serde_json::json!({ "at_least": 16 }));
}

#[test]
fn selftest_passes() {
    let (r, code) = run(&["selftest"]);
    assert_eq!(r["result"]["failed"], 0, "{}", r["result"]);
    assert_eq!(code, 0);
}

#[test]
fn hom_and_tor_routes_agree() {
    let (r, code) = run(&["hom", "--algebra", "triangular(2)", "--module", "heart(S_1)", "--target", "heart(S_0)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tables"].as_array().unwrap().len(), 3);
    assert_eq!(r["result"]["routes_agree"], true);
    let (r, _) = run(&["tor", "--module", "heart(S_0)", "--left", "heart(S_0)", "--window", "0:6"]);
    let dims: Vec<u64> = r["result"]["tables"][0]["dims"].as_array().unwrap().iter().map(|p| p[1].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(r["result"]["routes_agree"], true);
}

#[test]
fn resolve_kinds() {
    for kind in ["sppj", "ifij", "spft"] {
        let (r, code) = run(&["resolve", "--module", "M_of(2)", "--kind", kind]);
        assert_eq!(code, 0);
        assert_eq!(r["result"]["terminal"], true, "{kind}");
    }
    let (r, _) = run(&["resolve", "--module", "heart(S_0)", "--max-steps", "3"]);
    assert_eq!(r["result"]["steps"], 3);
    assert_eq!(r["result"]["terminal"], false);
    let (r, _) = run(&["resolve", "--module", "M_of(1)", "--minimal", "false"]);
    assert_eq!(r["result"]["mode"], "non_minimal");
}

#[test]
fn gorenstein_and_validate_commands() {
    let (r, _) = run(&["gorenstein", "--algebra", "triangular(2)"]);
    assert_eq!(r["result"]["right"]["status"]["exact"], 1);
    assert_eq!(r["result"]["gorenstein"], true);
    let (r, code) = run(&["validate"]);
    assert_eq!((r["result"]["valid"].clone(), code), (Value::Bool(true), 0));
    let (r, _) = run(&["cohomology", "--module", "M_of(3)"]);
    assert_eq!(r["result"]["module"]["sup"], 0);
    assert_eq!(r["result"]["module"]["inf"], -4);
}

#[test]
fn documents_from_files() {
    let dir = std::env::temp_dir().join(format!("dgres-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("rk.dg");
    std::fs::write(
        &good,
        "prime 32003\nalgebra = koszul(x; k[x]/(x^2))\nmodule Z\nend\nmodule A = sum(M_of(1), shift(regular, 2))\n",
    )
    .unwrap();
    let g = good.to_str().unwrap();
    let (r, _) = run(&["pd", "--input", g, "--module", "Z"]);
    assert_eq!(r["result"]["status"]["exact"], "-inf");
    // pd(R + R[1] + R[2]) = 2
    let (r, _) = run(&["pd", "--input", g, "--module", "A"]);
    assert_eq!(r["result"]["status"]["exact"], 2);
    let bad = dir.join("bad.dg");
    std::fs::write(&bad, "algebra\n  degree 0: 1 x\n  mul x x = 2*\nend\n").unwrap();
    let (_, err, code) = main_with(["dgres", "validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3, column"), "{err}");
    let (_, err, code) = main_with(["dgres", "validate", "--input", g, "--algebra", "field"]);
    assert_eq!(code, 1);
    assert!(err.contains("both"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn emit_round_trips_through_the_binary() {
    let out = bin().args(["emit", "--algebra", "product(triangular(2), k[x]/(x^2))"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = parse(&text, &ParseOptions::default()).unwrap();
    assert_eq!(emit(&doc), text);
}

fn algebra(i: usize) -> Arc<dgres_core::dgcore::DgAlgebra> {
    let f = Field::default();
    Arc::new(
        match i {
            0 => builtins::field_algebra(f),
            1 => builtins::nilpotent(f, 3),
            2 => builtins::triangular(f, 2),
            3 => builtins::koszul_rk(f),
            _ => builtins::koszul(f, &[vec![0, 0, 1], vec![0, 1]], 3),
        }
        .unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn text_round_trip(a in 0usize..5, which in 0usize..4, n in -3i32..4) {
        let r = algebra(a);
        let m = match which {
            0 => builtins::m_of(&r, n),
            1 => builtins::free(&r, (n.unsigned_abs() % 3) as usize, n),
            2 => dgres_core::dgcore::shift(&builtins::heart_h0(&r).unwrap(), n),
            _ => dgres_core::dgcore::shift(&builtins::psi_simple(&r, 0).unwrap(), n),
        };
        let text = format!("prime 32003\n{}{}", dgres_cli::format::emit_algebra(&r), emit_module("M", &m));
        let doc = parse(&text, &ParseOptions::default()).unwrap();
        prop_assert_eq!(&*doc.algebra, &*r);
        let back = doc.module("M").unwrap();
        prop_assert_eq!(back.lo(), m.lo());
        prop_assert_eq!(back.dims(), m.dims());
        prop_assert_eq!(emit(&doc), text);
    }
}
