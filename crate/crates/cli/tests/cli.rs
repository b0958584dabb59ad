//! End-to-end tests against the built binary: the exit-code contract,
//! the CSV shape, the JSON schema, and the grid completeness set.

use serde_json::Value;
use std::process::{Command, Output};

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn json(output: &Output) -> Value {
    serde_json::from_str(&stdout(output)).expect("valid json")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn verify_holds_with_exact_counts() {
    let out = ekr(&["verify", "--n", "3", "--p", "1", "--s", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["params"], serde_json::json!({"n": 3, "p": 1, "s": 1}));
    assert_eq!(v["results"]["family_size"], 12);
    assert_eq!(v["results"]["star_size"], 6);
    assert_eq!(v["results"]["max_intersecting"], 6);
    assert_eq!(v["results"]["regime"], "ekr-range");
    assert_eq!(v["results"]["holds"], true);
    assert_eq!(v["summary"]["holds"], true);
}

#[test]
fn verify_rejects_empty_members() {
    let out = ekr(&["verify", "--n", "1", "--p", "0", "--s", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_degenerate_regime() {
    let out = ekr(&["verify", "--n", "3", "--p", "2", "--s", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["regime"], "degenerate");
    assert_eq!(v["results"]["max_intersecting"], 6);
    assert_eq!(v["results"]["family_size"], 6);
}

#[test]
fn verify_cap_exit_code() {
    let out = ekr(&["verify", "--n", "4", "--p", "1", "--s", "2", "--cap", "10"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_seeding_flag_changes_nothing() {
    let seeded = ekr(&["verify", "--n", "4", "--p", "2", "--s", "0", "--format", "json"]);
    let bare = ekr(&[
        "verify", "--n", "4", "--p", "2", "--s", "0", "--no-seed-star", "--format", "json",
    ]);
    assert_eq!(code(&seeded), 0);
    assert_eq!(code(&bare), 0);
    assert_eq!(
        json(&seeded)["results"]["max_intersecting"],
        json(&bare)["results"]["max_intersecting"]
    );
    assert_eq!(json(&bare)["results"]["seeded_bound"], 0);
}

#[test]
fn csv_output_is_rejected_outside_grid() {
    for cmd in ["verify", "proofcheck", "witness", "enumerate"] {
        let out = ekr(&[cmd, "--n", "2", "--p", "1", "--s", "0", "--format", "csv"]);
        assert_eq!(code(&out), 2, "{cmd} must reject csv");
    }
}

#[test]
fn grid_csv_shape_and_row_set() {
    let out = ekr(&["grid", "--max-n", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.contains('\r'), "LF line endings only");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,p,s,family_size,star_size,max_intersecting,regime,holds,elapsed_ms"
    );
    // every valid triple with 1 <= 2p+s and p+s <= n, sorted by (n, p, s)
    let triples: Vec<(&str, &str, &str)> = lines[1..]
        .iter()
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap(), f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    assert_eq!(
        triples,
        vec![
            ("1", "0", "1"),
            ("1", "1", "0"),
            ("2", "0", "1"),
            ("2", "0", "2"),
            ("2", "1", "0"),
            ("2", "1", "1"),
            ("2", "2", "0"),
        ]
    );
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 9);
        assert!(line.ends_with(",true,0") || !line.contains(",skipped,"));
    }
}

#[test]
fn grid_rejects_bad_max_n() {
    assert_eq!(code(&ekr(&["grid", "--max-n", "0"])), 2);
    assert_eq!(code(&ekr(&["grid", "--max-n", "9"])), 2);
}

#[test]
fn grid_sweep_is_clean_and_complete() {
    let out = ekr(&["grid", "--max-n", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(v["summary"]["skipped"], 0);
    assert_eq!(v["summary"]["instances"], 30);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 30);
    for row in rows {
        assert!(row["holds"].is_boolean());
        assert!(row["max_intersecting"].is_u64());
        assert!(row["family_size"].is_u64());
    }
}

#[test]
fn grid_strict_cap_exit_code() {
    // cap of 5 skips rows but is not an error without --strict
    let relaxed = ekr(&["grid", "--max-n", "3", "--cap", "5", "--format", "json"]);
    assert_eq!(code(&relaxed), 0);
    let v = json(&relaxed);
    assert!(v["summary"]["skipped"].as_u64().unwrap() > 0);
    let skipped_row = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["skipped"].is_string())
        .expect("some row is skipped");
    assert!(skipped_row["skipped"].as_str().unwrap().contains("cap"));
    assert!(skipped_row["max_intersecting"].is_null() || skipped_row["max_intersecting"] == Value::Null);

    let strict = ekr(&["grid", "--max-n", "3", "--cap", "5", "--strict"]);
    assert_eq!(code(&strict), 3);
}

#[test]
fn grid_csv_skipped_rows_use_bare_tokens() {
    let out = ekr(&["grid", "--max-n", "3", "--cap", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let skipped_line = text
        .lines()
        .find(|l| l.contains("skipped"))
        .expect("a skipped row");
    let fields: Vec<&str> = skipped_line.split(',').collect();
    assert_eq!(fields.len(), 9);
    assert_eq!(fields[5], "skipped");
    assert_eq!(fields[7], "skipped");
}

#[test]
fn proofcheck_full_enumeration_instance() {
    let out = ekr(&["proofcheck", "--n", "4", "--p", "1", "--s", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["skipped"], 0);
    let checks = v["results"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    let f_check = checks.iter().find(|c| c["name"] == "f-independence").unwrap();
    assert_eq!(f_check["status"], "pass");
    assert_eq!(f_check["details"]["f"], 8);
}

#[test]
fn proofcheck_degenerate_skips_range_checks() {
    let out = ekr(&["proofcheck", "--n", "2", "--p", "1", "--s", "1", "--format", "json"]);
    assert_eq!(code(&out), 0, "skipped checks are not failures");
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    let by_name = |name: &str| {
        v["results"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap()
            .clone()
    };
    assert_eq!(by_name("quasi-sizes")["status"], "pass");
    assert_eq!(by_name("intersection-pattern")["status"], "skipped");
    assert_eq!(by_name("quasi-extremal-bound")["status"], "skipped");
    assert_eq!(by_name("pullback-membership")["status"], "pass");
    assert_eq!(by_name("counting-identity")["status"], "pass");
}

#[test]
fn proofcheck_degenerate_singletons() {
    let out = ekr(&["proofcheck", "--n", "2", "--p", "0", "--s", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn proofcheck_sampled_canvass() {
    let out = ekr(&["proofcheck", "--n", "5", "--p", "1", "--s", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let f_check = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "f-independence")
        .unwrap();
    assert_eq!(f_check["details"]["pairs"], 10);
}

#[test]
fn proofcheck_map_cap_skips_mapping_checks() {
    let out = ekr(&[
        "proofcheck", "--n", "4", "--p", "1", "--s", "2", "--map-cap", "3", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["skipped"], 5);
    assert_eq!(v["summary"]["passed"], 3);
}

#[test]
fn witness_prints_named_members() {
    let out = ekr(&["witness", "--n", "2", "--p", "1", "--s", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1 members"));
    assert!(text.contains("[a1 b1]"));
}

#[test]
fn witness_star_structure() {
    let out = ekr(&["witness", "--n", "4", "--p", "2", "--s", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["size"], 3);
    assert_eq!(v["results"]["validated"], true);
    let members = v["results"]["members"].as_array().unwrap();
    assert_eq!(members.len(), 3);
    for member in members {
        let names: Vec<&str> = member.as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
        assert!(names.contains(&"a1") && names.contains(&"b1"), "members share the first edge");
    }
}

#[test]
fn witness_fixed_vertex_star() {
    let out = ekr(&["witness", "--n", "3", "--p", "0", "--s", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["size"], 4);
    for member in v["results"]["members"].as_array().unwrap() {
        assert_eq!(member.as_array().unwrap()[0], "a1", "members share a1");
    }
}

#[test]
fn enumerate_lists_the_family() {
    let out = ekr(&["enumerate", "--n", "2", "--p", "1", "--s", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["count"], 2);
    assert_eq!(
        v["results"]["members"],
        serde_json::json!([["a1", "b1"], ["a2", "b2"]])
    );
}

#[test]
fn enumerate_respects_cap() {
    let out = ekr(&["enumerate", "--n", "4", "--p", "1", "--s", "2", "--cap", "10"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ekr(&["verify"])), 2);
    assert_eq!(code(&ekr(&["nonsense"])), 2);
    assert_eq!(code(&ekr(&["verify", "--n", "2", "--p", "2", "--s", "2"])), 2);
}
