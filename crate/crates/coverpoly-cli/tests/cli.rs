//! End-to-end tests for the binary: exit-code contract, report schema,
//! and byte-level determinism of JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/fixtures");
    path.push(name);
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coverpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn check_cactus_exit_codes() {
    let ok = run(&["check-cactus", &fixture("c5.edges")]);
    assert_eq!(exit_code(&ok), 0);
    assert!(stdout(&ok).contains("cactus: true"));

    let not = run(&["check-cactus", &fixture("bowtie.edges")]);
    assert_eq!(exit_code(&not), 1);
    assert!(stdout(&not).contains("cactus: false"));

    let missing = run(&["check-cactus", "/nonexistent/file.edges"]);
    assert_eq!(exit_code(&missing), 2);
}

#[test]
fn malformed_input_exits_2() {
    let bad = run(&["wp-check", &fixture("bad.edges")]);
    assert_eq!(exit_code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}

#[test]
fn require_cactus_gate() {
    let out = run(&["wp-check", &fixture("bowtie.edges"), "--require-cactus"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn wp_check_c5_passes_and_reports_constructive_method() {
    let out = run(&["wp-check", &fixture("c5.edges"), "--k", "2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], "coverpoly/1");
    assert_eq!(report["command"], "wp-check");
    assert_eq!(report["findings"], 0);
    let powers = report["results"]["powers"].as_array().unwrap();
    assert_eq!(powers.len(), 1);
    assert_eq!(powers[0]["wp"], "ok");
    // the worked pair resolves constructively at z = y3 with w = y4
    let pairs = powers[0]["pairs"].as_array().unwrap();
    let example = pairs
        .iter()
        .find(|p| p["f"] == "y1*y2*y3^2*y4*y5" && p["g"] == "y1*y2*y3*y4^2*y5")
        .expect("the worked pair appears");
    assert_eq!(example["z"], "y3");
    assert_eq!(example["witness"]["method"], "constructive-case-y3");
    assert_eq!(example["witness"]["w"], "y4");
}

#[test]
fn wp_check_with_order_file_matches_auto() {
    let auto = run(&["wp-check", &fixture("c5.edges"), "--k", "1..2"]);
    let file = run(&[
        "wp-check",
        &fixture("c5.edges"),
        "--k",
        "1..2",
        "--order",
        &fixture("c5.order"),
    ]);
    assert_eq!(exit_code(&auto), 0);
    assert_eq!(exit_code(&file), 0);
    // same verdict; the order file path skips the decomposition, so the
    // constructive method column may differ
    assert!(stdout(&auto).contains("result: ok"));
    assert!(stdout(&file).contains("result: ok"));
}

#[test]
fn json_reports_are_deterministic_modulo_timings() {
    let args = ["wp-check", &fixture("c5.edges"), "--k", "1..2", "--json"];
    let mut first: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    let mut second: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    // wall-clock timings are explicitly outside the determinism guarantee
    first["timings_ms"] = serde_json::Value::Null;
    second["timings_ms"] = serde_json::Value::Null;
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );
}

#[test]
fn decompose_emits_the_documented_schema() {
    let out = run(&["decompose", &fixture("c5.edges")]);
    assert_eq!(exit_code(&out), 0);
    let d: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(d["cliques"].as_array().unwrap().is_empty());
    let five = &d["five_cycles"].as_array().unwrap()[0];
    for key in ["y1", "y2", "y3", "y4", "y5"] {
        assert_eq!(five[key], key);
    }
    assert!(d["four_cycle_edges"].as_array().unwrap().is_empty());

    // a path of three vertices admits no decomposition
    let dir = std::env::temp_dir().join("coverpoly-p3.edges");
    std::fs::write(&dir, "a b\nb c\n").unwrap();
    let none = run(&["decompose", dir.to_str().unwrap()]);
    assert_eq!(exit_code(&none), 1);
    assert!(stdout(&none).contains("none"));
}

#[test]
fn covers_and_ideal_power_match_the_worked_values() {
    let covers = run(&["covers", &fixture("c5.edges"), "--json"]);
    assert_eq!(exit_code(&covers), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&covers)).unwrap();
    let generators = report["results"]["ideal"]["generators"].as_array().unwrap();
    let expect = ["y1*y2*y3", "y1*y2*y5", "y1*y3*y4", "y2*y4*y5", "y3*y4*y5"];
    assert_eq!(
        generators
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect::<Vec<_>>(),
        expect
    );

    let power = run(&["ideal-power", &fixture("c5.edges"), "--k", "2", "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&power)).unwrap();
    let generators = report["results"]["ideal"]["generators"].as_array().unwrap();
    assert_eq!(generators.len(), 15);
    assert!(generators.iter().any(|v| v == "y1*y2*y3^2*y4*y5"));
    assert!(generators.iter().any(|v| v == "y1*y2*y3*y4^2*y5"));
}

#[test]
fn witness_command_resolves_the_worked_pair() {
    let out = run(&[
        "witness",
        &fixture("c5.edges"),
        "--k",
        "2",
        "--f",
        "y1*y2*y3^2*y4*y5",
        "--g",
        "y1*y2*y3*y4^2*y5",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["z"], "y3");
    assert_eq!(report["results"]["block_position"], 3);
    assert_eq!(
        report["results"]["witness"]["method"],
        "constructive-case-y3"
    );
    assert_eq!(report["results"]["witness"]["w"], "y4");
    let certificate = report["results"]["witness"]["certificate"]
        .as_array()
        .unwrap();
    let mut certs: Vec<&str> = certificate.iter().map(|v| v.as_str().unwrap()).collect();
    certs.sort();
    assert_eq!(certs, ["y1*y2*y3", "y3*y4*y5"]);

    // reversed pair: no divergence with deg_z f > deg_z g
    let reversed = run(&[
        "witness",
        &fixture("c5.edges"),
        "--k",
        "2",
        "--f",
        "y1*y2*y3*y4^2*y5",
        "--g",
        "y1*y2*y3^2*y4*y5",
    ]);
    assert_eq!(exit_code(&reversed), 0);
    assert!(stdout(&reversed).contains("no divergence"));

    // a monomial that is not a minimal generator of J^k is rejected
    let not_gen = run(&[
        "witness",
        &fixture("c5.edges"),
        "--k",
        "2",
        "--f",
        "y1^6",
        "--g",
        "y1*y2*y3*y4^2*y5",
    ]);
    assert_eq!(exit_code(&not_gen), 2);
    assert!(String::from_utf8_lossy(&not_gen.stderr).contains("not a minimal generator"));
}

#[test]
fn fuzz_exit_codes_and_strictness() {
    let ok = run(&["fuzz", "--seed", "42", "--n", "3", "--json"]);
    assert_eq!(exit_code(&ok), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(report["schema"], "coverpoly/1");
    assert_eq!(report["results"]["instances"].as_array().unwrap().len(), 3);

    // an empty campaign is fine
    let empty = run(&["fuzz", "--seed", "1", "--n", "0"]);
    assert_eq!(exit_code(&empty), 0);

    // strict mode turns injected findings into a failing exit
    let strict = run(&[
        "fuzz",
        "--seed",
        "42",
        "--n",
        "1",
        "--strict",
        "--inject-bad-decomposition",
    ]);
    assert_eq!(exit_code(&strict), 1);
    assert!(stdout(&strict).contains("invalid decomposition"));

    // without --strict the same findings only show up in the report
    let lenient = run(&[
        "fuzz",
        "--seed",
        "42",
        "--n",
        "1",
        "--inject-bad-decomposition",
    ]);
    assert_eq!(exit_code(&lenient), 0);
}

#[test]
fn fuzz_reports_are_deterministic_modulo_timings() {
    let args = ["fuzz", "--seed", "7", "--n", "4", "--k", "1..2", "--json"];
    let mut first: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    let mut second: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    first["timings_ms"] = serde_json::Value::Null;
    second["timings_ms"] = serde_json::Value::Null;
    assert_eq!(first, second);
    assert_eq!(first["results"]["total_findings"], 0);
}

#[test]
fn order_file_must_cover_every_vertex() {
    let path = std::env::temp_dir().join("coverpoly-short.order");
    std::fs::write(&path, "y1\ny2\ny3\n").unwrap();
    let out = run(&[
        "wp-check",
        &fixture("c5.edges"),
        "--order",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("misses vertex"));
}

#[test]
fn decomposition_file_is_validated() {
    let path = std::env::temp_dir().join("coverpoly-bad-decomp.json");
    std::fs::write(
        &path,
        r#"{"cliques":[{"vertices":["y1","y2"],"free":[]}],"five_cycles":[],"four_cycle_edges":[]}"#,
    )
    .unwrap();
    let out = run(&[
        "wp-check",
        &fixture("c5.edges"),
        "--decomposition",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("invalid"), "{stderr}");

    // unknown fields are rejected, not ignored
    let path = std::env::temp_dir().join("coverpoly-unknown-field.json");
    std::fs::write(
        &path,
        r#"{"cliques":[],"five_cycles":[],"four_cycle_edges":[],"extra":1}"#,
    )
    .unwrap();
    let out = run(&[
        "wp-check",
        &fixture("c5.edges"),
        "--decomposition",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn k_range_validation() {
    let out = run(&["wp-check", &fixture("c5.edges"), "--k", "0..2"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["wp-check", &fixture("c5.edges"), "--k", "1..9"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["ideal-power", &fixture("c5.edges"), "--k", "7"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn k3_whisker_passes_high_powers() {
    let out = run(&["wp-check", &fixture("k3_whisker.edges"), "--k", "1..4"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("result: ok"));
}
