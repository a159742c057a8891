use std::path::PathBuf;

use quadfix::fixed_space::GenericFixedMatrix;
use quadfix::quadric::same_span_at_point;
use quadfix::{Partition, Report, ZPoly};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quadfix").chain(args.iter().copied());
    let code = quadfix_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn goldens_match() {
    let cases: &[(&str, &[&str])] = &[
        ("generic_2_2_1_1.json", &["generic", "2,2,1,1", "--letters"]),
        ("generic_3_2_1.json", &["generic", "3,2,1", "--letters"]),
        ("det_2_2_1_1.json", &["det", "2,2,1,1", "--letters"]),
        ("verify_3_2_1.json", &["verify", "3,2,1", "--letters"]),
        ("rank_4_2_2_2.json", &["rank", "4,2,2,2"]),
        (
            "minor_4_2_2_2.json",
            &["minor", "4,2,2,2", "--letters", "--symbolic-bound", "10"],
        ),
    ];
    for (file, args) in cases {
        let path = golden(file);
        let mut argv = args.to_vec();
        argv.extend(["--format", "json", "--expect", path.to_str().unwrap()]);
        let r = run(&argv);
        assert_eq!(r.code, 0, "{file}: {}", r.stderr);
    }
}

#[test]
fn corrupted_golden_fails() {
    let text = std::fs::read_to_string(golden("det_2_2_1_1.json")).unwrap();
    let corrupted = text.replace("c^4*g*k - c^4*j^2", "c^4*g*k + c^4*j^2");
    assert_ne!(text, corrupted);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("det.json");
    std::fs::write(&path, corrupted).unwrap();
    let r = run(&["det", "2,2,1,1", "--letters", "--expect", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("expectation failed: /det"), "{}", r.stderr);
}

#[test]
fn unreadable_golden_is_usage_error() {
    let r = run(&["dim", "2", "--expect", "/nonexistent/golden.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn det_text_shows_product_and_factors() {
    let r = run(&["det", "2,2,1,1", "--letters", "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("c^4*g*k - c^4*j^2"));
    assert!(r.stdout.contains("det P_1 (4x4)  c^2*g*k - c^2*j^2"));
    assert!(r.stdout.contains("det P_2 (2x2)  c^2"));
}

#[test]
fn verify_three_two_one_passes() {
    let r = run(&["verify", "3,2,1", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: Report = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.corank, 1);
    assert!(report.passed());
    assert_eq!(report.checks.len(), 11);
}

#[test]
fn report_json_for_two() {
    let r = run(&["verify", "2", "--format", "json"]);
    let v = json(&r);
    assert_eq!(v["partition"], serde_json::json!([2]));
    assert_eq!(
        (v["n"].as_u64(), v["dim_S"].as_u64(), v["dim_Q"].as_u64()),
        (Some(2), Some(1), Some(0))
    );
    assert_eq!(v["degeneracy"], 1);
    assert_eq!(v["det"], "0");
    let keys: Vec<&str> = r
        .stdout
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        keys,
        [
            "partition",
            "n",
            "dim_S",
            "dim_Q",
            "degeneracy",
            "det_factors",
            "det",
            "corank",
            "checks"
        ]
    );
}

#[test]
fn json_round_trips_into_report() {
    let r = run(&["verify", "4,2,2,2", "--format", "json"]);
    let report: Report = serde_json::from_str(&r.stdout).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again, r.stdout.trim_end());
}

#[test]
fn text_report_agrees_with_json() {
    let text = run(&["verify", "2"]).stdout;
    assert!(text.contains("dim_S       1"));
    assert!(text.contains("dim_Q       0"));
    assert!(text.contains("degeneracy  1"));
}

#[test]
fn sweep_one() {
    let r = run(&["sweep", "--n", "1", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["partitions"], 1);
    assert_eq!(v["failed"], 0);
}

#[test]
fn sweep_is_deterministic_and_parallel_independent() {
    let a = run(&["sweep", "--n", "6", "--format", "json"]);
    let b = run(&["sweep", "--n", "6", "--format", "json"]);
    let c = run(&["sweep", "--n", "6", "--format", "json", "--parallel", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn timings_appear_only_on_request() {
    assert!(!run(&["verify", "2,1", "--format", "json"]).stdout.contains("millis"));
    assert!(run(&["verify", "2,1", "--format", "json", "--timings"])
        .stdout
        .contains("millis"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["det", "2,x"]).code, 2);
    assert_eq!(run(&["det"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["verify", "2", "--format", "yaml"]).code, 2);
    assert_eq!(run(&["verify", "2", "--trials", "0"]).code, 2);
    let r = run(&["generic", "1,1,1,1,1,1,1", "--letters"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("28 variables"), "{}", r.stderr);
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sweep"));
}

#[test]
fn latex_rules_for_two_one_one_one() {
    let r = run(&["generic", "2,1,1,1", "--letters", "--format", "latex"]);
    assert!(r.stdout.contains("\\begin{array}{cc|c|c|c}"), "{}", r.stdout);
    assert_eq!(r.stdout.matches("\\hline").count(), 3);
}

#[test]
fn restricted_matrices_for_four_two_two_two() {
    let r = run(&[
        "generic",
        "4,2,2,2",
        "--letters",
        "--m-prime",
        "--m-double-prime",
        "--format",
        "json",
    ]);
    let v = json(&r);
    assert_eq!(v["m_prime"]["columns"], serde_json::json!([3, 4, 6, 8, 10]));
    assert_eq!(v["m_prime"]["matrix"].as_array().unwrap().len(), 10);
    assert_eq!(v["m_double_prime"]["rows"], serde_json::json!([1, 2, 5, 7, 9]));
    assert_eq!(v["m_double_prime"]["matrix"].as_array().unwrap().len(), 5);
}

#[test]
fn nullspace_spans_the_column_relations() {
    let r = run(&["nullspace", "4,2,2,2", "--letters", "--format", "json"]);
    assert_eq!(r.code, 0);
    let parse = |rows: &Value| -> Vec<Vec<ZPoly>> {
        rows.as_array()
            .unwrap()
            .iter()
            .map(|v| {
                v.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_str().unwrap().parse().unwrap())
                    .collect()
            })
            .collect()
    };
    let got = parse(&json(&r)["null_vectors"]);
    // (pd - ng + il) C3 - bp C6 + bn C8 - bi C10 = 0 and C4 = 0
    let expected = parse(&serde_json::json!([
        ["0", "0", "p*d - n*g + i*l", "0", "0", "-b*p", "0", "b*n", "0", "-b*i"],
        ["0", "0", "0", "1", "0", "0", "0", "0", "0", "0"],
    ]));
    let partition: Partition = "4,2,2,2".parse().unwrap();
    let g = GenericFixedMatrix::new(&partition).with_letters().unwrap();
    for seed in 0..3 {
        assert!(same_span_at_point(&got, &expected, g.catalog(), seed));
    }
}
