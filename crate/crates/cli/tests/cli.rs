//! End-to-end tests of the `dmr` binary: flags, file formats, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn dmr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_file(name: &str, contents: &Value) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("dmr-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, serde_json::to_vec(contents).unwrap()).unwrap();
    path
}

#[test]
fn solve_n1_writes_depth_two_anchor() {
    let out = dmr(&["solve", "--N", "1", "--D", "4", "--lambda", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["pass"], true);
    let terms = v["psi"]["terms"].as_array().unwrap();
    let anchor = terms
        .iter()
        .find(|t| t["word"] == json!(["0", "g0"]))
        .expect("x0 x1 term present");
    assert_eq!(anchor["coeff"], "-1/24");
}

#[test]
fn solve_n3_reports_difference_value() {
    let out = dmr(&[
        "solve", "--N", "3", "--D", "3", "--lambda", "1", "--giota", "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["pass"], true);
    assert_eq!(v["report"]["difference"], "1/2");
    assert_eq!(v["report"]["conditions"]["iv"], true);
}

#[test]
fn solve_lambda_zero_low_degree_is_unit() {
    let out = dmr(&["solve", "--N", "1", "--D", "2", "--lambda", "0"]);
    let v = stdout_json(&out);
    let terms = v["psi"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], json!([]));
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn verify_hopf_suite_passes() {
    let out = dmr(&["verify", "--suite", "hopf", "--N", "2", "--D", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_independence_emits_verdict() {
    let out = dmr(&["verify", "--suite", "independence", "--N", "1", "--D", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["theorem"], "Delta_B_N");
    assert_eq!(v["agree"], true);
    assert_eq!(v["degree"], 4);
}

#[test]
fn verify_filtration_reports_ranks() {
    let out = dmr(&["verify", "--suite", "betti-filtration", "--N", "3", "--m", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    let detail = v["results"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("[3, 12, 48, 192]"), "detail: {detail}");
}

#[test]
fn coproduct_w_dr_expands_generator() {
    // z_{2,1} at N=2: z⊗1 + 1⊗z + z_{1,0}⊗z_{1,1} + z_{1,1}⊗z_{1,0}
    let input = tmp_file(
        "z2.json",
        &json!({"N": 2, "D": 4, "terms": [{"word": ["0", "g1"], "g": 1, "coeff": "1"}]}),
    );
    let out = dmr(&["coproduct", "--kind", "w-dr", "--input", input.to_str().unwrap()]);
    let v = stdout_json(&out);
    let expected = json!([
        {"coeff": "1", "left": [], "right": [[2, 1]]},
        {"coeff": "1", "left": [[1, 0]], "right": [[1, 1]]},
        {"coeff": "1", "left": [[1, 1]], "right": [[1, 0]]},
        {"coeff": "1", "left": [[2, 1]], "right": []},
    ]);
    assert_eq!(v["terms"], expected);
    std::fs::remove_file(input).ok();
}

#[test]
fn coproduct_m_b_of_unit_class() {
    let input = tmp_file("one.json", &json!({"terms": [{"word": "", "coeff": "1"}]}));
    let out = dmr(&[
        "coproduct", "--kind", "m-b", "--input", input.to_str().unwrap(),
        "--N", "2", "--D", "3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        v["terms"],
        json!([{"coeff": "1", "left": [], "right": []}])
    );
    std::fs::remove_file(input).ok();
}

#[test]
fn coproduct_w_b_matches_reference_expansion() {
    // Δ^{W,B}(Y_2^+) = Y_2⊗1 + 1⊗Y_2 + Y_1⊗Y_1, read through the chart
    use dmr_core::betti::iso_w;
    use dmr_core::cyclic::EmbeddingDatum;
    use dmr_core::harmonic::{SeriesY, TensorSeriesY};
    use dmr_core::json as fmt;
    use dmr_core::transport::y_pm_generator;

    let n = 1;
    let d = 4;
    let y2 = y_pm_generator(2, true);
    let input = tmp_file("y2.json", &fmt::ga_to_json(&y2));
    let out = dmr(&[
        "coproduct", "--kind", "w-b", "--input", input.to_str().unwrap(),
        "--N", "1", "--D", "4", "--lambda", "1",
    ]);
    let got = stdout_json(&out);

    let iota = EmbeddingDatum::reference(n);
    let y2w = iso_w(&iota, &y2, d).unwrap();
    let y1w = iso_w(&iota, &y_pm_generator(1, true), d).unwrap();
    let one = SeriesY::one(n, d);
    let expected = TensorSeriesY::pure(y2w.z_expansion(), &one)
        .add(&TensorSeriesY::pure(&one, y2w.z_expansion()))
        .add(&TensorSeriesY::pure(y1w.z_expansion(), y1w.z_expansion()));
    assert_eq!(got, fmt::tensor_y_to_json(&expected, "tensor-w-b"));
    std::fs::remove_file(input).ok();
}

#[test]
fn solve_then_reuse_psi_file() {
    let mut psi_path = std::env::temp_dir();
    psi_path.push(format!("dmr-cli-test-{}-psi.json", std::process::id()));
    let out = dmr(&[
        "solve", "--N", "1", "--D", "4", "--lambda", "2",
        "--out", psi_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // split the psi part into its own file
    let blob: Value =
        serde_json::from_str(&std::fs::read_to_string(&psi_path).unwrap()).unwrap();
    std::fs::write(&psi_path, serde_json::to_vec(&blob["psi"]).unwrap()).unwrap();

    let input = tmp_file("unit.json", &json!({"terms": [{"word": "", "coeff": "1"}]}));
    let out = dmr(&[
        "coproduct", "--kind", "m-b", "--input", input.to_str().unwrap(),
        "--N", "1", "--D", "4", "--lambda", "2",
        "--psi", psi_path.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["terms"], json!([{"coeff": "1", "left": [], "right": []}]));
    std::fs::remove_file(psi_path).ok();
    std::fs::remove_file(input).ok();
}

#[test]
fn exit_codes() {
    // degree cap
    let out = dmr(&["solve", "--N", "1", "--D", "9", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // cap override through the environment
    let out = Command::new(env!("CARGO_BIN_EXE_dmr"))
        .args(["solve", "--N", "1", "--D", "7", "--lambda", "0", "--dry-run"])
        .env("DMR_DEGREE_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // unknown suite
    let out = dmr(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed input file
    let mut bad = std::env::temp_dir();
    bad.push(format!("dmr-cli-test-{}-bad.json", std::process::id()));
    std::fs::write(&bad, b"not json").unwrap();
    let out = dmr(&["coproduct", "--kind", "w-dr", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(bad).ok();
    // element outside the W subalgebra
    let e0 = tmp_file(
        "e0.json",
        &json!({"N": 1, "D": 2, "terms": [{"word": ["0"], "g": 0, "coeff": "1"}]}),
    );
    let out = dmr(&["coproduct", "--kind", "w-dr", "--input", e0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(e0).ok();
}

#[test]
fn dry_run_reports_costs() {
    let out = dmr(&[
        "solve", "--N", "3", "--D", "4", "--lambda", "1", "--dry-run",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["dry_run"], true);
    assert_eq!(v["x_words"], 341);
    assert_eq!(v["y_spanning_words"], 256);
}
