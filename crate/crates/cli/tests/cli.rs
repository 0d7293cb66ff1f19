use std::process::{Command, Output};

use serde_json::Value;

use humbert_cli::golden::{cm5_point, verify_paper, verify_paper_with, CM5_FIXTURE, LINEARIZING_M};
use humbert_core::json::{from_str, siegel_from_json, siegel_to_json, SiegelPointJson};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/cm5_root.json");

fn humbert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_humbert")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let out = humbert(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn fixture_round_trips_through_json() {
    let j: SiegelPointJson = from_str(CM5_FIXTURE).unwrap();
    let tau = siegel_from_json(&j).unwrap();
    assert_eq!(tau.matrix(), cm5_point().matrix());
    let again = siegel_to_json(&tau);
    let text = serde_json::to_string(&again).unwrap();
    let back = siegel_from_json(&from_str(&text).unwrap()).unwrap();
    assert_eq!(back.matrix(), tau.matrix());
    assert_eq!(siegel_to_json(&back), again);
}

#[test]
fn golden_checks_pass_and_detect_a_wrong_matrix() {
    assert!(verify_paper(1).iter().all(|c| c.passed));
    let mut m = LINEARIZING_M;
    m[0][0] = -2;
    let failed: Vec<&str> = verify_paper_with(m, 1).iter().filter(|c| !c.passed).map(|c| c.name).collect();
    assert!(failed.contains(&"linearizing_matrix_symplectic"), "{:?}", failed);
    assert!(!failed.contains(&"cm5_rank_one"));
    // symplectic, but does not linearize the relation
    let failed: Vec<&str> =
        verify_paper_with([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1).iter().filter(|c| !c.passed).map(|c| c.name).collect();
    assert_eq!(failed, ["linearizing_matrix_relation", "transformed_generator_linear", "trdeg_cm5_after"]);
}

#[test]
fn verify_paper_exit_status() {
    let out = humbert(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 19 && text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn classify_fixture() {
    let (code, v) = json(&["classify", FIXTURE]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["lin_rank"], 0);
    assert_eq!(v["min_delta"], 5);
    assert_eq!(v["classification"], "commutative");
    assert_eq!(v["positive_definite"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["classify", FIXTURE], vec!["verify-paper"], vec!["--seed", "9", "verify-paper"]] {
        let a = humbert(&args).stdout;
        let b = humbert(&args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{:?}", args);
    }
}

#[test]
fn malformed_input_exits_2() {
    let bad = r#"{"field":{"min_poly":["1","0","1"],"root":{"re":"0","im":"1","radius":"1/10"}},"tau":[["0","1"],["1/0","0"],["0","2"]]}"#;
    let (code, v) = json(&["classify", bad]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("tau[1][0]"));
    let out = humbert(&["classify", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty() && !out.stderr.is_empty());
}

#[test]
fn domain_and_budget_errors() {
    let (code, v) = json(&["igusa", r#"{"coeffs":["0","0","1","0","0","0","1"]}"#]);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("domain")));
    let (code, _) = json(&["hilbert", "--delta", "8", "to-hz", r#"{"relation":[0,1,0,0,0]}"#]);
    assert_eq!(code, 1);
    let (code, v) = json(&["--budget", "1", "normalize", r#"{"relation":[0,1,-1,1,-1]}"#]);
    assert_eq!((code, v["error"]["kind"].as_str()), (3, Some("budget")));
}

#[test]
fn igusa_subcommand() {
    let (code, v) = json(&["igusa", r#"{"coeffs":["-1","0","0","0","0","0","1"],"mode":"exact"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["I10"], "46656");
    assert_eq!(v["j"][0], "51200000/3");
    let (code, v) = json(&["igusa", r#"{"coeffs":["1","1","0","0","0","0","1"],"mode":"interval"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "interval");
}

#[test]
fn normalize_subcommand() {
    let (code, v) = json(&["normalize", r#"{"relation":[0,1,-1,1,-1]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["discriminant"], 5);
    assert_eq!(v["normalized"], serde_json::json!([-1, 1, 1, 0, 0]));
}

#[test]
fn embed_subcommands() {
    let (code, v) = json(&["embed", "shimura", "--D", "6", "--N", "1", "--a", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["discriminant_x1_y0"], 5);
    assert_eq!(v["identity_on_grid"], true);
    let (code, v) = json(&["embed", "shimura", "--D", "6", "--N", "1", "--a", "2", "--z", "1/3,1", "--z-d", "-1"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["embed", "kani", "--N", "2", "--a", "1", "--b", "3", "--c", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["form_discriminant"], -32);
    assert_eq!(v["delta_1_0"], 1);
    assert_eq!(v["delta_b2_minus_a"], 9);
    let (code, _) = json(&["embed", "kani", "--N", "2", "--a", "1", "--b", "3", "--c", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn hilbert_subcommands() {
    let (code, v) = json(&["hilbert", "--delta", "5", "embed", r#"{"d":-1,"z1":["0","1"],"z2":["1/3","2"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["relation_holds"], true);
    let (code, v) = json(&["hilbert", "--delta", "5", "to-hz", r#"{"relation":[0,1,0,0,0]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["back"], serde_json::json!([0, 1, 0, 0, 0]));
    let (code, _) = json(&["hilbert", "--delta", "13", "obstruct", r#"{"relation":[0,1,0,0,0]}"#]);
    assert_eq!(code, 0);
}
