mod support;

use proptest::prelude::*;
use serde_json::Value;
use support::{read_golden, resolve, run_binary, write_golden, GOLDEN_CASES};
use tiling_cli::{emit_system, parse_system, run};

/// Compare every golden case against the binary. `UPDATE_GOLDEN=1` rewrites them.
#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for case in GOLDEN_CASES {
        let out = run_binary(&resolve(case.args), &[]);
        assert_eq!(out.code, case.exit, "{}: stderr {}", case.name, String::from_utf8_lossy(&out.stderr));
        if update {
            write_golden(case.name, &out.stdout);
            continue;
        }
        let golden = read_golden(case.name).unwrap_or_else(|| panic!("missing golden {}", case.name));
        assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&golden), "{}", case.name);
    }
}

fn invoke(args: &[&str]) -> tiling_cli::Outcome {
    let mut full = vec!["tiling".to_string()];
    full.extend(resolve(args));
    run(full)
}

fn stdout_json(args: &[&str]) -> (Value, i32) {
    let out = invoke(args);
    (serde_json::from_str(&out.stdout).expect("stdout is JSON"), out.code)
}

#[test]
fn verify_reports_partition() {
    let (v, code) = stdout_json(&["verify", "@running_example.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_partition"], true);
    assert_eq!(v["density_sum"], "1/1");
}

#[test]
fn witness_reports_shape_and_offsets() {
    let (v, code) = stdout_json(&["witness", "@running_example.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["shared_shape"], serde_json::json!([4]));
    assert_eq!(v["star_offset"], serde_json::json!([1]));
    assert_eq!(v["partner_offset"], serde_json::json!([3]));
}

#[test]
fn search_confirms_theorem() {
    let (v, code) = stdout_json(&["search", "--dim", "1", "--max-n", "4", "--distinct-shapes", "--exclude-trivial"]);
    assert_eq!(code, 0);
    assert_eq!(v["stats"]["solutions"], 0);
    assert_eq!(v["solutions"], serde_json::json!([]));
}

#[test]
fn poles_without_numeric_has_no_estimate() {
    let (v, code) = stdout_json(&["poles", "@running_example.json", "--point", "0/1"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact_order"], 1);
    assert_eq!(v["numeric_estimate"], Value::Null);
    assert_eq!(v["probe"], Value::Null);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["verify"],
        &["verify", "/nonexistent/file.json"],
        &["search", "--dim", "1"],
        &["search", "--dim", "0", "--max-n", "3"],
        &["search", "--dim", "1", "--max-n", "3", "--threads", "0"],
        &["poles", "@running_example.json", "--point", "1/4,1/2"],
        &["poles", "@running_example.json", "--point", "one"],
        &["gen", "--dim", "1", "--steps", "2", "--max-factor", "1"],
        &["verify", "@running_example.json", "--budget", "2"],
    ];
    for args in cases {
        let out = invoke(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err: Value = serde_json::from_str(out.stderr.lines().last().unwrap()).unwrap();
        assert!(err["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn malformed_document_exits_two() {
    let dir = std::env::temp_dir().join(format!("tiling-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in [
        ("zero.json", r#"{"d":1,"cosets":[{"n":[0],"m":[0]}]}"#),
        ("syntax.json", r#"{"d":1,"cosets":[{"n":[2] "m":[0]}]}"#),
        ("mismatch.json", r#"{"d":2,"cosets":[{"n":[2],"m":[0]}]}"#),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        let out = run(["tiling", "verify", path.to_str().unwrap()]);
        assert_eq!(out.code, 2, "{name}");
        assert!(out.stderr.contains("\"kind\":\"input\""), "{name}: {}", out.stderr);
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn help_exits_zero() {
    let out = run(["tiling", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("search"));
}

#[test]
fn warnings_go_to_stderr() {
    let out = invoke(&["verify", "@mixed_2d.json"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"));
    assert!(!out.stdout.contains("warning"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gen_output_round_trips(dim in 1usize..=3, steps in 0usize..=8, seed in any::<u64>()) {
        let out = run(["tiling", "gen", "--dim", &dim.to_string(), "--steps", &steps.to_string(), "--seed", &seed.to_string()]);
        prop_assert_eq!(out.code, 0);
        let parsed = parse_system(&out.stdout).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(&emit_system(&parsed.system, parsed.name.clone()), &out.stdout);
        let verify = verify_code(&out.stdout);
        prop_assert_eq!(verify, 0);
    }
}

fn verify_code(doc: &str) -> i32 {
    let parsed = parse_system(doc).unwrap();
    let report = tiling_core::verify_partition(&parsed.system, tiling_core::DEFAULT_CELL_BUDGET).unwrap();
    if report.is_partition {
        0
    } else {
        1
    }
}
