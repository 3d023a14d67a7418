use std::path::Path;

use eaqec::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eaqec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, instance: &Value) {
    let errors: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn capacity_values() {
    let l = json(&["capacity", "--channel", "dephasing:0.5"]);
    assert_eq!(l["q_e"].as_f64().unwrap(), 0.5);
    let l = json(&["capacity", "--channel", "erasure:0.25"]);
    assert!((l["c_e"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((l["e_q_random"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    let l = json(&["capacity", "--channel", "depolarizing:0"]);
    assert!((l["c_e"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(l["inequalities"].as_array().unwrap().iter().any(|i| i["paper_eq"] == "bound1"));
}

#[test]
fn json_outputs_match_published_schemas() {
    let ledger = schema("ledger.schema.json");
    for ch in ["dephasing:0.3", "erasure:0.7", "depolarizing:0.1", "pauli:0.5,0.5,0,0"] {
        assert_valid(&ledger, &json(&["capacity", "--channel", ch]));
    }
    assert_valid(&ledger, &json(&["capacity", "--channel", "pauli:0.8,0.1,0,0.1", "--classical", "0.5", "--quantum", "0.1"]));
    let verify = schema("verify.schema.json");
    for code in ["three-qubit-ea", "five-qubit", "teleport"] {
        assert_valid(&verify, &json(&["verify", "--code", code]));
    }
    let bounds = schema("bounds.schema.json");
    assert_valid(&bounds, &json(&["bounds", "--format", "json", "--nkt", "3,1,1", "--p", "0:0.75:0.25"]));
    let sim = schema("sim_result.schema.json");
    assert_valid(&sim, &json(&["simulate", "--code", "five-qubit", "--channel", "depolarizing:0.05", "--trials", "500", "--format", "json"]));
    assert_valid(&sim, &json(&["sweep", "--n", "4,6", "--rate", "0.5", "--channel", "erasure:0.25", "--trials", "100", "--codes", "3", "--format", "json"]));
}

#[test]
fn verify_reports_every_claim() {
    for code in ["three-qubit-ea", "five-qubit", "teleport"] {
        let r = json(&["verify", "--code", code]);
        assert_eq!(r["passed"], true);
        assert!(r["claims"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
    let r = json(&["verify", "--code", "teleport"]);
    let names: Vec<_> = r["claims"].as_array().unwrap().iter().map(|c| c["claim"].as_str().unwrap().to_owned()).collect();
    assert!(names.contains(&"total_dephasing_zero_failure".to_owned()));
}

#[test]
fn bounds_rows() {
    let (code, out, _) = call(&["bounds", "--p", "0,0.1", "--m", "1,3", "--e", "0.5"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "p");
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert_eq!(&rows[0][col("ea_hamming_rate")], "1");
    assert_eq!(&rows[0][col("unassisted_hamming_rate")], "1");
    assert_eq!(&rows[0][col("family_M3")], "1");
    assert_eq!(&rows[0][col("with_entanglement_E0.5")], "1.5");
    for r in &rows {
        assert_eq!(&r[col("family_M1")], &r[col("ea_hamming_rate")]);
    }

    let (code, out, _) = call(&["bounds", "--nkt", "3,1,1", "--nkt", "3,3,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("3,1,1,true,20,32,"), "{out}");
    assert!(out.contains("3,3,1,false,80,8,"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["verify", "--code", "seven-qubit"]).0, 2);
    assert_eq!(call(&["capacity", "--channel", "depolarizing:1.5"]).0, 2);
    assert_eq!(call(&["capacity", "--channel", "amplitude:0.1"]).0, 2);
    assert_eq!(call(&["capacity"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["bounds", "--p", "0:1:0.1"]).0, 2);
    assert_eq!(call(&["sweep", "--n", "4", "--rate", "1.5", "--channel", "erasure:0.1"]).0, 2);
    assert_eq!(call(&["simulate", "--code", "random", "--n", "40", "--rate", "0.5", "--channel", "depolarizing:0.1"]).0, 2);
    let (code, _, err) = call(&["simulate", "--code", "teleport"]);
    assert_eq!(code, 2);
    assert!(err.contains("--channel"));
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn identity_channel_never_fails() {
    for code in ["three-qubit-ea", "five-qubit", "teleport"] {
        let r = json(&["simulate", "--code", code, "--channel", "depolarizing:0", "--trials", "2000", "--format", "json"]);
        assert_eq!(r[0]["failures"], 0);
    }
    let r = json(&["simulate", "--code", "random", "--n", "6", "--rate", "0.5", "--channel", "erasure:0", "--trials", "2000", "--format", "json"]);
    assert_eq!(r[0]["p_fail"].as_f64().unwrap(), 0.0);
}

#[test]
fn same_seed_gives_identical_bytes_for_any_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (i, workers) in ["1", "1", "3", "0"].iter().enumerate() {
        let path = dir.path().join(format!("sweep{i}.csv"));
        let (code, out, err) = call(&[
            "sweep", "--n", "4,6,8", "--rate", "0.5", "--channel", "depolarizing:0.05", "--trials", "500",
            "--codes", "4", "--seed", "9", "--workers", workers, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("wrote"));
        files.push(std::fs::read(&path).unwrap());
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));

    let sim = |seed: &str, workers: &str| {
        call(&["simulate", "--code", "five-qubit", "--channel", "depolarizing:0.1", "--trials", "3000", "--seed", seed, "--workers", workers]).1
    };
    assert_eq!(sim("4", "1"), sim("4", "2"));
    assert_ne!(sim("4", "1"), sim("5", "1"));
}

#[test]
fn sweep_trend_through_cli() {
    let (code, out, _) = call(&[
        "sweep", "--n", "4,6,8,10,12", "--rate", "0.5", "--channel", "erasure:0.25", "--trials", "2000",
        "--codes", "200", "--seed", "2024",
    ]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let col = rdr.headers().unwrap().iter().position(|h| h == "p_fail").unwrap();
    let p: Vec<f64> = rdr.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    assert_eq!(p.len(), 5);
    assert!(p.windows(2).all(|w| w[1] < w[0]), "{p:?}");
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"channel": "erasure:0.25", "code": "five-qubit", "trials": 800, "seed": 3, "format": "json"}"#).unwrap();
    let r = json(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r[0]["trials"], 800);
    assert_eq!(r[0]["channel"], "erasure:0.25");
    let r = json(&["simulate", "--config", cfg.to_str().unwrap(), "--trials", "100"]);
    assert_eq!(r[0]["trials"], 100);

    std::fs::write(&cfg, r#"{"chanel": "erasure:0.25"}"#).unwrap();
    assert_eq!(call(&["capacity", "--config", cfg.to_str().unwrap()]).0, 2);
    assert_eq!(call(&["capacity", "--config", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
}
