//! Contract tests of the command-line interface: exit codes, output
//! determinism, the documented text formats, and the structured documents.

use std::process::{Command, Output};

use serde_json::Value;

fn spincover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn parse_json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON on stdout")
}

#[test]
fn enumerate_lists_the_four_coverings_at_genus_one() {
    let out = spincover(&["enumerate", "--g", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("4 special coverings"));
    for line in ["001  class=0", "011  class=1", "101  class=1", "111  class=0"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn enumerate_family_carries_invariant_labels() {
    let out = spincover(&["enumerate", "--g", "1", "--epi", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["members"][0]["arf"], 0);
    assert_eq!(doc["members"][1]["arf"], 1);
}

#[test]
fn enumerate_family_counts() {
    let out = spincover(&["enumerate", "--g", "3", "--epi", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_json(&out);
    assert_eq!(doc["schema"], "spincover/1");
    assert_eq!(doc["count"], 8);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = spincover(&["enumerate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.to_lowercase().contains("usage") || err.contains("--g"), "{err}");
}

#[test]
fn wrong_bitstring_length_is_a_usage_error() {
    let out = spincover(&["classify-o", "--g", "2", "--rho", "00"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_o_profile_and_determinism() {
    let args = ["classify-o", "--g", "2", "--rho", "000", "--format", "json"];
    let first = spincover(&args);
    assert_eq!(first.status.code(), Some(0));
    let doc = parse_json(&first);
    assert_eq!(doc["report"]["sizes"], serde_json::json!([1, 1, 3, 3]));
    let second = spincover(&args);
    assert_eq!(first.stdout, second.stdout, "identical invocation, identical bytes");
}

#[test]
fn classify_sp_profiles() {
    let out = spincover(&["classify-sp", "--g", "2", "--r", "0000", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["report"]["sizes"], serde_json::json!([2, 2]));
    assert_eq!(doc["exceptional"], false);
    let labels: Vec<&str> = doc["report"]["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, vec!["arf=0", "arf=1"]);

    let out = spincover(&["classify-sp", "--g", "2", "--r", "1010", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["report"]["sizes"], serde_json::json!([4]));
    assert_eq!(doc["exceptional"], true);
}

#[test]
fn classify_sp_mode_both_passes_at_small_genus() {
    let out = spincover(&["classify-sp", "--g", "2", "--r", "0110", "--mode", "both"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn presentation_text_is_exact() {
    let out = spincover(&["presentation", "--g", "1", "--psi", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim_end(), "<w0,w1,k | [w0,k],[w1,k], w0^2 w1^2 k^1>");
    let out = spincover(&["presentation", "--g", "1", "--psi", "00"]);
    assert_eq!(stdout(&out).trim_end(), "<w0,w1,k | [w0,k],[w1,k], w0^2 w1^2>");
}

#[test]
fn stabilizer_reports_orders() {
    let out = spincover(&["stabilizer", "--g", "2", "--alpha", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_json(&out);
    assert_eq!(doc["report"]["passed"], true);
    let details = doc["report"]["details"].as_array().unwrap();
    assert!(details
        .iter()
        .any(|d| d.as_str().unwrap().contains("stabilizer order 2")));
}

#[test]
fn weak_command_reports_witness() {
    let out = spincover(&["weak", "--g", "1", "--psi", "10", "--psi2", "01", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["equivalent"], true);
    assert_eq!(doc["class"], 1);
    assert_eq!(doc["class2"], 1);
    // witness: identity base block, defect row the value difference
    let rows: Vec<&str> = doc["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    assert_eq!(rows, vec!["100", "010", "111"]);

    let out = spincover(&["weak", "--g", "1", "--psi", "10", "--psi2", "00", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["equivalent"], false);
    assert_eq!(doc["witness"], Value::Null);
}

#[test]
fn factor_command_replays_a_transvection() {
    // the transvection along the sum of the kernel vectors at genus 2
    let dir = std::env::temp_dir().join("spincover-cli-test-factor");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.mat");
    std::fs::write(&path, "0111\n1011\n1101\n1110\n").unwrap();
    let out = spincover(&[
        "factor",
        "--g",
        "2",
        "--matrix",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_json(&out);
    let factors: Vec<&str> = doc["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap())
        .collect();
    assert_eq!(factors, vec!["1111"]);
}

#[test]
fn factor_rejects_maps_outside_the_subgroup() {
    let dir = std::env::temp_dir().join("spincover-cli-test-factor2");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.mat");
    // a transvection moving the projection image
    std::fs::write(&path, "1100\n0100\n0010\n0001\n").unwrap();
    let out = spincover(&["factor", "--g", "2", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lift_and_project_roundtrip_through_files() {
    let dir = std::env::temp_dir().join("spincover-cli-test-lift");
    std::fs::create_dir_all(&dir).unwrap();
    let base_path = dir.join("swap.mat");
    std::fs::write(&base_path, "010\n100\n001\n").unwrap();
    let out = spincover(&[
        "lift",
        "--g",
        "2",
        "--matrix",
        base_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_json(&out);
    let rows: Vec<String> = doc["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap().to_string())
        .collect();
    let lifted_path = dir.join("lifted.mat");
    std::fs::write(&lifted_path, rows.join("\n") + "\n").unwrap();
    let out = spincover(&[
        "project",
        "--g",
        "2",
        "--matrix",
        lifted_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_json(&out);
    assert_eq!(doc["count"], 1, "even genus: unique extension");
    let candidate: Vec<&str> = doc["candidates"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    assert_eq!(candidate, vec!["010", "100", "001"], "roundtrip recovers the base map");
}

#[test]
fn classify_o_golden_document() {
    // frozen bytes: any drift in the structured format is a breaking change
    let out = spincover(&["classify-o", "--g", "1", "--rho", "00", "--format", "json"]);
    let expected = r#"{
  "command": "classify-o",
  "g": 1,
  "report": {
    "orbit_count": 3,
    "orbits": [
      {
        "label": "psi0",
        "members": [
          "001"
        ],
        "size": 1
      },
      {
        "label": "psi1",
        "members": [
          "111"
        ],
        "size": 1
      },
      {
        "label": "sum=1",
        "members": [
          "011",
          "101"
        ],
        "size": 2
      }
    ],
    "sizes": [
      1,
      1,
      2
    ]
  },
  "rho": "00",
  "schema": "spincover/1"
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn presentation_golden_document() {
    let out = spincover(&["presentation", "--g", "1", "--psi", "10", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["presentation"]["epsilon"], 1);
    assert_eq!(
        doc["presentation"]["relators"]["main"],
        "w0^2 w1^2 k^1"
    );
    assert_eq!(
        doc["presentation"]["relators"]["commutators"],
        serde_json::json!(["[w0,k]", "[w1,k]"])
    );
    assert_eq!(doc["presentation"]["embedding"][0]["image"], "h^2");
    assert_eq!(doc["presentation"]["embedding"][1]["image"], "u0 h^1");
    assert_eq!(doc["presentation"]["embedding"][2]["image"], "u1 h^0");
}

#[test]
fn verify_single_theorem_and_exit_codes() {
    let out = spincover(&["verify", "--theorem", "an", "--g", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("64 pairs"));

    let out = spincover(&["verify", "--theorem", "2=4", "--g", "2", "--r", "1010"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exceptional"), "{}", stdout(&out));

    let out = spincover(&["verify", "--theorem", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // an explicit genus above a check's supported cap is a usage error
    let out = spincover(&["verify", "--theorem", "symsym", "--g", "6"]);
    assert_eq!(out.status.code(), Some(2));

    let out = spincover(&["verify"]);
    assert_eq!(out.status.code(), Some(2), "bare verify is a usage error");
}

#[test]
fn verify_json_envelope() {
    let out = spincover(&["verify", "--theorem", "2g", "--max-g", "2", "--format", "json"]);
    let doc = parse_json(&out);
    assert_eq!(doc["schema"], "spincover/1");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"][0]["name"], "2g");
}

#[test]
fn regen_fixtures_matches_checked_in_document() {
    let out = spincover(&["verify", "--regen-fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        spincover_oracles::fixtures::CHECKED_IN,
        "regenerated fixtures must be bit-identical to the checked-in file"
    );
}
