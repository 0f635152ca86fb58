use std::path::PathBuf;
use std::process::{Command, Output};

use latstat_core::random::{instance_rng, matrix};
use latstat_core::scalar::Q;
use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn latstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latstat"))
        .args(args)
        .env_remove("LATSTAT_BUDGET")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = latstat(args);
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (code, report)
}

fn q(n: i64) -> Value {
    json!({"num": n, "den": 1})
}

fn p(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn m3_demo_reproduces_its_numbers_and_exits_zero() {
    let (code, r) = run(&["demo", "m3"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["reproduced"], json!(true));
    assert_eq!(res["lambda_at_tuple"], q(148));
    assert_eq!(res["lambda_at_order_statistics"], q(160));
    assert_eq!(res["k2_check"]["instances_checked"], json!(250));
    assert_eq!(res["order_statistics"], json!([1, 5, 5]));
    assert_eq!(r["command"], json!("demo m3"));
    assert_eq!(r["schema_version"], json!(1));
}

#[test]
fn m3_functional_passes_pairwise_check_and_fails_full_check() {
    let (l, f) = (p("m3.json"), p("m3_functional.json"));
    let (code, r) = run(&["check", "--lattice", &l, "--functional", &f, "--relation", "ge", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["holds"], json!(true));
    let (code, r) = run(&["check", "--lattice", &l, "--functional", &f, "--k", "n"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["holds"], json!(false));
    assert!(r["result"]["witness"]["tuple"].is_array());
}

#[test]
fn zero_denominator_is_rejected_with_a_pointer() {
    let (code, r) = run(&["corollary", "perm", "--config", &p("bad_den.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["pointer"], json!("/matrix/1/1"));
    assert!(r.get("result").is_none());
}

#[test]
fn unknown_field_is_rejected_with_a_pointer() {
    let (code, r) = run(&["corollary", "perm", "--config", &p("unknown_field.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["pointer"], json!("/transpose"));
}

#[test]
fn tiny_budget_exits_3_from_flag_and_environment() {
    let (l, f) = (p("m3.json"), p("m3_functional.json"));
    let (code, r) = run(&["--budget", "10", "check", "--lattice", &l, "--functional", &f]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], json!("budget_exceeded"));
    let out = Command::new(env!("CARGO_BIN_EXE_latstat"))
        .args(["check", "--lattice", &l, "--functional", &f])
        .env("LATSTAT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_bytes_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("schur.json");
    let emitted = emitted.to_str().unwrap();
    let (code, _) = run(&["construct", "schur", "--params", &p("schur_params.json"), "--emit", emitted]);
    assert_eq!(code, 0);
    let args = |jobs: &'static str| {
        vec![
            "--jobs".to_string(),
            jobs.to_string(),
            "check".into(),
            "--lattice".into(),
            p("fn22.json"),
            "--functional".into(),
            emitted.to_string(),
            "--mode".into(),
            "sampled".into(),
            "--seed".into(),
            "7".into(),
            "--samples".into(),
            "500".into(),
        ]
    };
    let outs: Vec<Vec<u8>> = ["1", "3", "8"]
        .into_iter()
        .map(|j| {
            let a = args(j);
            latstat(&a.iter().map(String::as_str).collect::<Vec<_>>()).stdout
        })
        .collect();
    assert!(!outs[0].is_empty());
    assert!(outs.iter().all(|o| o == &outs[0]));
}

#[test]
fn sampled_mode_requires_a_seed() {
    let (code, r) = run(&["check", "--lattice", &p("m3.json"), "--functional", &p("m3_functional.json"), "--mode", "sampled"]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("--seed"));
}

#[test]
fn permanent_corollary_holds_on_a_random_batch() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..12u64 {
        let mut rng = instance_rng(2024, i);
        let (d, q) = (2 + (i % 3) as usize, 2 + (i % 4) as usize);
        let b: Vec<Vec<Q>> = matrix(&mut rng, d, q).into_iter().map(|r| r.into_iter().map(Q).collect()).collect();
        let path = dir.path().join(format!("perm{i}.json"));
        std::fs::write(&path, serde_json::to_string(&json!({ "matrix": b })).unwrap()).unwrap();
        let (code, r) = run(&["corollary", "perm", "--config", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{r}");
    }
}

#[test]
fn every_sample_corollary_holds() {
    for c in ["perm", "esym", "psi", "power", "supinf", "sets", "indep"] {
        let (code, r) = run(&["corollary", c, "--config", &p(&format!("{c}.json"))]);
        assert_eq!(code, 0, "{c}: {r}");
        assert_eq!(r["command"], json!(format!("corollary {c}")));
    }
}

#[test]
fn emitted_functionals_are_accepted_by_check() {
    let dir = tempfile::tempdir().unwrap();
    for (family, relation) in [("schur", "ge"), ("multiadd", "ge"), ("potential", "le")] {
        let params = data(&format!("{family}_params.json"));
        let emitted = dir.path().join(format!("{family}.json"));
        let lattice = dir.path().join(format!("{family}_lattice.json"));
        let (code, r) = run(&["construct", family, "--params", params.to_str().unwrap(), "--emit", emitted.to_str().unwrap()]);
        assert_eq!(code, 0, "{r}");
        let descriptor: Value = serde_json::from_str(&std::fs::read_to_string(&emitted).unwrap()).unwrap();
        assert_eq!(descriptor["family"], json!(family));
        assert_eq!(r["result"]["functional"], descriptor);
        let p: Value = serde_json::from_str(&std::fs::read_to_string(&params).unwrap()).unwrap();
        std::fs::write(&lattice, p["lattice"].to_string()).unwrap();
        let (code, r) = run(&[
            "check",
            "--lattice",
            lattice.to_str().unwrap(),
            "--functional",
            emitted.to_str().unwrap(),
            "--relation",
            relation,
            "--k",
            "2",
        ]);
        assert_eq!(code, 0, "{family}: {r}");
    }
}

#[test]
fn potential_construction_reports_its_predicted_direction() {
    let (code, r) = run(&["construct", "potential", "--params", &p("potential_params.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["predicted"], json!("supermodular"));
    assert_eq!(r["result"]["curvature_report"]["holds"], json!(true));
}

#[test]
fn correlation_commands_report_status() {
    for f in ["fkg_functions.json", "fkg_lattice.json"] {
        let (code, r) = run(&["fkg", "--config", &p(f)]);
        assert_eq!((code, &r["result"]["status"]), (0, &json!("holds")), "{f}");
    }
    let (code, r) = run(&["fkg", "--config", &p("fkg_not_monotone.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["status"], json!("hypothesis_violated"));
    for f in ["ahke_functions.json", "ahke_lattice.json"] {
        let (code, r) = run(&["ahke", "--config", &p(f)]);
        assert_eq!((code, &r["result"]["status"]), (0, &json!("holds")), "{f}");
    }
}

#[test]
fn lattice_commands() {
    assert_eq!(run(&["lattice", "validate", "--lattice", &p("chain3_table.json")]).0, 0);
    let (code, r) = run(&["lattice", "validate", "--lattice", &p("broken_table.json")]);
    assert_eq!(code, 1);
    assert!(r["result"]["report"]["witness"].is_object());
    assert_eq!(run(&["lattice", "distributive", "--lattice", &p("pentagon.json")]).0, 1);
    assert_eq!(run(&["lattice", "distributive", "--lattice", &p("fn22.json")]).0, 0);
    let (code, r) = run(&["lattice", "birkhoff", "--lattice", &p("chain3_table.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["ground_size"], json!(2));
    assert_eq!(r["result"]["images"].as_array().unwrap().len(), 3);
    let (code, r) = run(&["lattice", "birkhoff", "--lattice", &p("m3.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], json!("not_distributive"));
}

#[test]
fn ordstats_shows_both_definitions() {
    let (code, r) = run(&["ordstats", "--lattice", &p("m3.json"), "--tuple", "[2, 3, 4]"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order_statistics"], json!([1, 5, 5]));
    assert_eq!(r["result"]["order_statistics_dual"], json!([1, 1, 5]));
    let (code, r) = run(&["ordstats", "--lattice", &p("fn22.json"), "--tuple", "[[2, 0], [1, 1]]"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order_statistics"], json!([[q(1), q(0)], [q(2), q(1)]]));
    assert_eq!(r["result"]["definitions_agree"], json!(true));
}

#[test]
fn nonreversibility_demo_exits_zero() {
    let (code, r) = run(&["demo", "nonrev", "--N", "3", "--delta", "1/1000", "--eps", "1/10000", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["orderstat_family_sizes"], json!([9, 9]));
    assert_eq!(r["config"]["delta"], json!({"num": 1, "den": 1000}));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = latstat(&["demo", "m3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["library_version"], json!(latstat_core::VERSION));
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let (_, r) = run(&["--timing", "demo", "m3"]);
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn reproduce_prints_one_line_per_criterion() {
    let out = latstat(&["reproduce", "--only", "1,10"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["passed"], json!(2));
    assert!(r["result"]["criteria"][0].get("elapsed_ms").is_none());

    let out = latstat(&["--budget", "5", "reproduce", "--only", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_labels_plumbing_commands() {
    let out = latstat(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[plumbing] Lattice inspection"));
    assert!(text.contains("[plumbing] Run the acceptance criteria"));
    let out = latstat(&["lattice", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = |cmd: &str| text.lines().find(|l| l.trim_start().starts_with(cmd)).unwrap().to_string();
    assert!(line("validate").contains("[plumbing]"));
    assert!(line("distributive").contains("[plumbing]"));
    assert!(!line("birkhoff").contains("[plumbing]"));
}

#[test]
fn regression_holds_on_generated_schur_functionals() {
    let (code, r) = run(&["regression", "--config", &p("regression.json"), "--trials", "3", "--seed", "11"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["falsifications"], json!(0));
    assert_eq!(r["result"]["trials"], json!(3));
}
