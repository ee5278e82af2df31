//! End-to-end checks of the binary: exit codes, output formats, seed
//! echoing and replayability.

use std::process::{Command, Output};

fn meander(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meander"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(meander(&["gen"]).status.code(), Some(2));
    assert_eq!(meander(&["gen", "--s", "0"]).status.code(), Some(2));
    assert_eq!(meander(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        meander(&["sample", "--stat", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        meander(&["gen", "--s", "3", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        meander(&["verify", "enumeration", "--max-s", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_json_is_schema_shaped_and_replayable() {
    let run = meander(&[
        "gen", "--s", "5", "--r", "1", "--count", "2", "--seed", "42", "--format", "json",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let text = stdout(&run);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(value["s"], 5);
        assert_eq!(value["r"], 1);
        assert_eq!(value["pd"].as_array().unwrap().len(), 9);
        for field in [
            "top",
            "bottom",
            "crossing_info",
            "components",
            "axis_components",
            "pierced_circles",
        ] {
            assert!(value.get(field).is_some(), "missing {field}");
        }
    }
    // Seed echoed on stderr, replay gives identical bytes.
    assert!(String::from_utf8(run.stderr.clone())
        .unwrap()
        .contains("# seed 42"));
    let again = meander(&[
        "gen", "--s", "5", "--r", "1", "--count", "2", "--seed", "42", "--format", "json",
    ]);
    assert_eq!(run.stdout, again.stdout);
}

#[test]
fn gen_cabled_crossing_counts() {
    let run = meander(&[
        "gen", "--s", "5", "--r", "3", "--count", "2", "--seed", "1", "--format", "json",
    ]);
    assert_eq!(run.status.code(), Some(0));
    for line in stdout(&run).lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(value["pd"].as_array().unwrap().len(), 81);
        let words = value["crossing_info"].as_array().unwrap();
        assert_eq!(words.len(), 3);
        assert_eq!(words[0].as_str().unwrap().len(), 27);
    }
}

#[test]
fn gen_alternating_gauss_code_on_a_knot_skeleton() {
    // Find a seed whose s = 2 skeleton is a knot, then ask for its Gauss
    // code; 6 entries for 3 crossings, alternating O/U.
    for seed in 0..20u64 {
        let run = meander(&[
            "gen",
            "--s",
            "2",
            "--alternating",
            "--format",
            "gauss",
            "--seed",
            &seed.to_string(),
        ]);
        if run.status.code() == Some(0) {
            let text = stdout(&run);
            let entries: Vec<&str> = text.trim().split(',').collect();
            assert_eq!(entries.len(), 6, "seed {seed}: {text}");
            let kinds: Vec<char> = entries.iter().map(|e| e.chars().next().unwrap()).collect();
            for i in 0..kinds.len() {
                assert_ne!(kinds[i], kinds[(i + 1) % kinds.len()]);
            }
            return;
        }
        // Multi-component skeleton: a clean runtime failure.
        assert_eq!(run.status.code(), Some(1));
    }
    panic!("no knot skeleton found in 20 seeds");
}

#[test]
fn expect_prints_exact_rationals() {
    let run = meander(&["expect", "--s", "6", "--r", "1"]);
    assert_eq!(run.status.code(), Some(0));
    let text = stdout(&run);
    assert!(text.contains("245/242"), "{text}");
    assert!(text.contains("twist regions        4"), "{text}");

    let run = meander(&["expect", "--s", "1", "--r", "1"]);
    let text = stdout(&run);
    assert!(text.contains("-1"), "{text}");
    assert!(text.contains("(vacuous)"), "{text}");

    let run = meander(&[
        "expect",
        "--s",
        "3",
        "--r",
        "2",
        "--alternating",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(value["twists"], "16");
    assert!((value["volume_lower"].as_f64().unwrap() - 6.089649638457921).abs() < 1e-9);
}

#[test]
fn verify_targets_pass() {
    for args in [
        vec!["verify", "recurrence", "--max-s", "60"],
        vec!["verify", "enumeration", "--max-s", "6"],
        vec!["verify", "unlinked", "--max-r", "8"],
        vec!["verify", "ratio", "--max-s", "40"],
        vec!["verify", "narayana", "--max-s", "20"],
    ] {
        let run = meander(&args);
        assert_eq!(run.status.code(), Some(0), "{args:?}: {}", stdout(&run));
        assert!(stdout(&run).contains("PASS"));
    }
}

#[test]
fn sample_formats_and_seed_in_output() {
    let args = [
        "sample", "--stat", "twists", "--s", "5", "--r", "2", "--trials", "5000", "--seed", "11",
        "--format", "csv",
    ];
    let run = meander(&args);
    assert_eq!(run.status.code(), Some(0));
    let text = stdout(&run);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "statistic,s,r,trials,seed,mean,stderr,closed_form,z"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("twists,5,2,5000,11,"), "{row}");
    assert!(row.contains(",30,"), "target 9*4-6 = 30 missing: {row}");

    let table = meander(&[
        "sample", "--stat", "twists", "--s", "5", "--r", "2", "--trials", "5000", "--seed", "11",
    ]);
    assert!(stdout(&table).contains("seed         11"));
}

#[test]
fn sample_tolerance_gate() {
    // An absurdly small tolerance turns the (nonzero) z into a failure.
    let run = meander(&[
        "sample", "--stat", "nestings", "--s", "8", "--trials", "4000", "--seed", "3", "--tol",
        "0.000001",
    ]);
    assert_eq!(run.status.code(), Some(1));
    // The default gate of 4 passes.
    let run = meander(&[
        "sample", "--stat", "nestings", "--s", "8", "--trials", "4000", "--seed", "3",
    ]);
    assert_eq!(run.status.code(), Some(0));
}

#[test]
fn out_flag_writes_files() {
    let dir = std::env::temp_dir().join("meander-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let run = meander(&[
        "sample",
        "--stat",
        "crossing_count",
        "--s",
        "3",
        "--trials",
        "10",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["mean"], 5.0);
    std::fs::remove_file(path).unwrap();
}
