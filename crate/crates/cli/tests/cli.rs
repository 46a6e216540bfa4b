//! End-to-end command-line tests: formats, exit codes, determinism.

use assert_cmd::Command;
use predicates::prelude::*;

fn corrbc() -> Command {
    Command::cargo_bin("corrbc").unwrap()
}

fn scenario(name: &str) -> String {
    format!("{}/../../scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn info_entropy_of_uniform_bit() {
    corrbc()
        .args(["info", "H(S1)", "--scenario", &scenario("identity_binary.toml")])
        .assert()
        .success()
        .stdout(predicate::str::contains("1.000000000000"));
}

#[test]
fn info_independent_sources_share_nothing() {
    corrbc()
        .args([
            "info",
            "I(S1;S2)",
            "--scenario",
            &scenario("independent_binary.toml"),
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("0.000000000000"));
}

#[test]
fn info_chain_rule_gap_is_nonnegative() {
    let out = corrbc()
        .args([
            "info",
            "I(U1;U0,S2|S1)-I(U1;S2|S1)",
            "--scenario",
            &scenario("onetimepad_ber02.toml"),
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v: f64 = String::from_utf8(out).unwrap().trim().parse().unwrap();
    assert!(v >= -1e-12, "chain-rule gap was {v}");
}

#[test]
fn info_rejects_bad_expression() {
    corrbc()
        .args(["info", "H(S1", "--scenario", &scenario("identity_binary.toml")])
        .assert()
        .code(2);
}

#[test]
fn prove_basic_nonnegativity() {
    corrbc()
        .args(["prove", "I(A;B) >= 0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("proven"));
}

#[test]
fn prove_rejects_non_shannon_claim() {
    // Conditioning can increase mutual information.
    corrbc()
        .args(["prove", "I(A;B|C) <= I(A;B)"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("not-provable"));
}

#[test]
fn prove_uses_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cons.txt");
    std::fs::write(&path, "I(A;C|B) = 0\n").unwrap();
    // Data processing under the Markov chain A - B - C.
    corrbc()
        .args([
            "prove",
            "I(A;C) <= I(A;B)",
            "--constraints",
            path.to_str().unwrap(),
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("verified"));
}

#[test]
fn prove_rejects_bad_syntax() {
    corrbc().args(["prove", "H(A) >"]).assert().code(2);
}

#[test]
fn fm_matches_golden_projection() {
    corrbc()
        .args(["fm"])
        .assert()
        .success()
        .stdout(predicate::str::contains("match"));
}

#[test]
fn fm_is_order_independent() {
    let a = corrbc().args(["fm", "--format", "records"]).output().unwrap();
    let b = corrbc()
        .args(["fm", "--order", "R2,R1,R0", "--format", "records"])
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    let rows = |bytes: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        let mut names: Vec<String> = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["name"].as_str().unwrap().to_string())
            .collect();
        names.sort();
        names
    };
    assert_eq!(rows(&a.stdout), rows(&b.stdout));
}

#[test]
fn fm_reports_raw_count_without_side_conditions() {
    corrbc()
        .args(["fm", "--no-s3"])
        .assert()
        .success()
        .stdout(predicate::str::contains(
            "raw post-elimination count (no side conditions): 33 (reference derivation: 28)",
        ));
}

#[test]
fn region_thm2_on_the_pad_construction() {
    corrbc()
        .args([
            "region",
            "thm2",
            "--scenario",
            &scenario("onetimepad_ber02.toml"),
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("satisfied"))
        .stdout(predicate::str::contains("0.278071905"));
}

#[test]
fn region_compare_dominance() {
    corrbc()
        .args([
            "region",
            "compare",
            "--scenario",
            &scenario("onetimepad_ber02.toml"),
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("dominated"));
}

#[test]
fn region_marton_and_gray_wyner() {
    corrbc()
        .args([
            "region",
            "marton",
            "--scenario",
            &scenario("identity_binary.toml"),
        ])
        .assert()
        .success();
    corrbc()
        .args([
            "region",
            "gw",
            "--scenario",
            &scenario("identity_binary.toml"),
            "--rates",
            "1.5,0.3,0.3",
        ])
        .assert()
        .success();
}

#[test]
fn region_degraded_identity_sits_on_the_boundary() {
    // H(S1,S2) equals I(X;Y1) exactly here, so the strict bounds fail.
    corrbc()
        .args([
            "region",
            "degraded",
            "--scenario",
            &scenario("identity_binary.toml"),
        ])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("not-satisfied"));
}

#[test]
fn region_cover_checks_rates_against_bounds() {
    corrbc()
        .args([
            "region",
            "cover",
            "--scenario",
            &scenario("identity_binary.toml"),
            "--rates",
            "1.5,0.1,0.1",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("satisfied"));
    corrbc()
        .args([
            "region",
            "cover",
            "--scenario",
            &scenario("identity_binary.toml"),
            "--rates",
            "0.5,0.1,0.1",
        ])
        .assert()
        .code(1);
}

#[test]
fn region_superpos_reports_both_bound_groups() {
    let out = corrbc()
        .args([
            "region",
            "superpos",
            "--scenario",
            &scenario("identity_binary.toml"),
            "--format",
            "records",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn simulate_cover_is_deterministic_and_machine_readable() {
    let run = || {
        corrbc()
            .args([
                "simulate",
                "cover",
                "--scenario",
                &scenario("identity_binary.toml"),
                "--rates",
                "1.5,0,0",
                "--n",
                "8",
                "--trials",
                "50",
                "--seed",
                "21",
                "--eps",
                "2.0",
                "--eps-prime",
                "1.5",
                "--format",
                "records",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    // Identical up to wall time: the estimates must be bit-identical.
    let strip = |bytes: &[u8]| {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let p_hat = v["rows"][0]["value"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&p_hat));
}

#[test]
fn simulate_end_to_end_runs_both_schemes() {
    for scheme in ["plain", "superposition"] {
        corrbc()
            .args([
                "simulate",
                "e2e",
                "--scenario",
                &scenario("identity_binary.toml"),
                "--rates",
                "1.2,0,0",
                "--n",
                "4",
                "--trials",
                "20",
                "--seed",
                "3",
                "--eps",
                "2.0",
                "--eps-prime",
                "1.5",
                "--scheme",
                scheme,
            ])
            .assert()
            .success()
            .stdout(predicate::str::contains("error_rate"));
    }
}

#[test]
fn simulate_rejects_bad_params() {
    // eps_prime >= eps is invalid.
    corrbc()
        .args([
            "simulate",
            "cover",
            "--scenario",
            &scenario("identity_binary.toml"),
            "--rates",
            "1.0,0,0",
            "--n",
            "4",
            "--trials",
            "5",
            "--eps",
            "0.1",
            "--eps-prime",
            "0.2",
        ])
        .assert()
        .code(2);
}

#[test]
fn search_finds_a_feasible_point_for_the_skewed_source() {
    corrbc()
        .args([
            "search",
            "--scenario",
            &scenario("onetimepad_ber02.toml"),
            "--cards",
            "2,2,1",
            "--budget",
            "6000",
            "--seed",
            "7",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("feasible"));
}

#[test]
fn missing_scenario_is_an_input_error() {
    corrbc()
        .args(["info", "H(S1)", "--scenario", "/nonexistent.toml"])
        .assert()
        .code(2);
}
