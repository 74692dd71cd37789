use std::fs;
use std::path::PathBuf;
use std::process::Command;

use foliate::catalog;
use foliate::cli::{self, Outcome};

fn run(args: &[&str]) -> Outcome {
    cli::run(std::iter::once("foliate").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("foliate-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// First report line with a leading non-numeric key removed.
fn headline(stdout: &str) -> String {
    let line = stdout.lines().next().unwrap_or("");
    match line.split_once(' ') {
        Some((key, rest)) if key.parse::<f64>().is_err() && !key.contains('/') => rest.to_string(),
        _ => line.to_string(),
    }
}

#[test]
fn golden_reports() {
    assert_eq!(run(&["betti", "catalog:sl2"]).stdout, "1 0 0 1\n");
    assert_eq!(run(&["betti", "catalog:heisenberg3"]).stdout, "1 2 2 1\n");
    assert_eq!(run(&["relative-betti", "catalog:sl2_so2_pair"]).stdout, "1 0 1\n");
    let v = run(&["verdict", "catalog:carriere_default"]);
    assert_eq!(v.code, 0);
    assert!(v.stdout.starts_with("verdict ManifoldFibers\n"));
    assert!(v.stdout.ends_with("period_generator log_lambda\n"));
    let core = run(&["core", "catalog:s4_table"]);
    assert!(core.stdout.starts_with("order 4\n"), "{}", core.stdout);
}

#[test]
fn catalog_expectations_reproduce() {
    let mut checked = 0;
    for entry in catalog::entries() {
        for e in &entry.expected {
            let mut words: Vec<&str> = e.quantity.split_whitespace().collect();
            let target = format!("catalog:{}", entry.name);
            words.insert(1, &target);
            let out = run(&words);
            assert_eq!(out.code, 0, "{words:?}: {}", out.stderr);
            assert_eq!(headline(&out.stdout), e.value, "{words:?}");
            checked += 1;
        }
    }
    assert!(checked >= 25);
}

#[test]
fn representatives_are_listed() {
    let out = run(&["betti", "catalog:ga1", "--representatives"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "1 1 0");
    assert!(lines.iter().any(|l| l.starts_with("H1 ")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["betti", "catalog:sl2"]).code, 0);
    assert_eq!(run(&["betti", "catalog:no_such_thing"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);

    let dir = scratch("codes");
    let jacobi = dir.join("jacobi.lie");
    // [A,B]=C, [B,C]=A, [A,C]=A breaks the Jacobi identity
    fs::write(
        &jacobi,
        "algebra broken\ndim 3\nbasis A B C\nbracket A B = C\nbracket B C = A\nbracket A C = A\n",
    )
    .unwrap();
    let out = run(&["validate", jacobi.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{out:?}");

    let garbled = dir.join("garbled.lie");
    fs::write(&garbled, "algebra g\ndim 1\nbracket x x = 1/0\n").unwrap();
    let out = run(&["validate", garbled.to_str().unwrap()]);
    assert_eq!(out.code, 2, "{out:?}");
    assert!(out.stderr.contains("line 3"));
}

#[test]
fn files_round_trip_through_the_tool() {
    let dir = scratch("roundtrip");
    for name in ["sl2_so2_pair", "e2_o2_pair", "s4_table", "carriere_default", "z4_area_form"] {
        let text = run(&["catalog", name]).stdout;
        let path = dir.join(format!("{name}.lie"));
        fs::write(&path, &text).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(run(&["validate", p]).code, 0, "{name}");
        let by_file = format!("{p}:{name}");
        assert_eq!(run(&["catalog", name]).stdout, text, "catalog output is stable");
        let entry = catalog::get(name).unwrap();
        for e in &entry.expected {
            let mut words: Vec<&str> = e.quantity.split_whitespace().collect();
            words.insert(1, &by_file);
            assert_eq!(headline(&run(&words).stdout), e.value, "{words:?}");
        }
    }
}

#[test]
fn json_output() {
    let out = run(&["betti", "catalog:ga1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 1, 0]));
    let out = run(&["verdict", "catalog:sl2_example_profile", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "FoliationUnimodular");
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args(["relative-betti", "catalog:sl2_so2_pair"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 0 1\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_foliate")).arg("betti").arg("catalog:nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
