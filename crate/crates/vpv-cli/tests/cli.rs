use std::process::{Command, Output};

use serde_json::Value;

fn vpv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vpv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_and_reports_equal_sides() {
    let out = vpv(&["verify", "--id", "COR-21.03", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["id"], "COR-21.03");
    assert_eq!(j["status"], "pass");
    assert_eq!(j["all_equal"], true);
    assert_eq!(j["variables"], serde_json::json!(["y", "z"]));
}

#[test]
fn unknown_id_is_an_error() {
    let out = vpv(&["verify", "--id", "NOT-AN-ID"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn substitution_prints_the_univariate_series() {
    let out = vpv(&["verify", "--id", "COR-21.03", "--sub", "y=1/2", "--order", "5", "--format", "pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 - 1/2*z - 1/4*z^2 - 1/8*z^3"), "{text}");
}

#[test]
fn grid_is_tab_separated_with_largest_z_first() {
    let out = vpv(&["grid", "--max-y", "3", "--max-z", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0], ["z/y", "0", "1", "2", "3"]);
    assert_eq!(rows[1], ["4", "0", "0", "2", "0"]);
    assert_eq!(rows.last().unwrap(), &["0", "1", "0", "0", "0"]);
}

#[test]
fn determinant_coefficient_checks_against_the_closed_form() {
    let out = vpv(&["det-coeff", "--family", "17i", "--n", "4", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["coefficient"], "6*y^3 + 17*y^2 + 26*y + 24");
    assert_eq!(j["checked"], true);
    assert_eq!(j["first_disagreement"], Value::Null);
}

#[test]
fn alpha_check_reports_gcd_failures_with_exit_one() {
    let out = vpv(&["seq", "--name", "alpha", "--n", "34", "--check"]);
    assert_eq!(out.status.code(), Some(1));
    let j = json(&out);
    assert_eq!(j["table"]["values"][10], "396271");
    assert_eq!(j["report"]["recurrence_holds"], true);
    assert_eq!(j["report"]["gcd_failures"], serde_json::json!([24, 34]));
}

#[test]
fn zeta_sum_agrees_within_its_bound() {
    let out = vpv(&["zetasum", "--exponents", "2,2", "--trunc", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    let direct = j["direct"].as_f64().unwrap();
    let bound = j["direct_tail_bound"].as_f64().unwrap();
    assert!((direct - 2.5).abs() <= bound);
    assert_eq!(j["agrees"], true);
}

#[test]
fn zeta_sum_rejects_the_pole() {
    let out = vpv(&["zetasum", "--exponents", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn visible_points_of_a_small_triangle() {
    let out = vpv(&["points", "--region", "triangle-weak-2d", "--max-z", "3", "--visible"]);
    assert_eq!(out.status.code(), Some(0));
    let pts: Vec<Vec<i64>> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(pts.iter().all(|p| num_gcd(p[0], p[1]) == 1));
    assert!(!pts.contains(&vec![2, 2]));
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn suite_reports_flags_and_exits_one_on_the_longhand_mismatch() {
    let out = vpv(&["suite"]);
    assert_eq!(out.status.code(), Some(1));
    let j = json(&out);
    assert_eq!(j["mismatched"], 1);
    let flags: Vec<&str> = j["flags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["id"].as_str().unwrap())
        .collect();
    for id in [
        "golden:COR-21.08-z-half:printed-expansion",
        "distinct-interpretation-list",
        "particular-case:tangent",
        "mismatch:COR-21.12-longhand",
    ] {
        assert!(flags.contains(&id), "missing {id}");
    }
}

#[test]
fn output_is_reproducible_and_can_go_to_a_file() {
    let args = ["verify", "--id", "COR-21.11", "--order", "4"];
    let a = vpv(&args);
    let b = vpv(&args);
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("vpv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let c = vpv(&with_file);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
