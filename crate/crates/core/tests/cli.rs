//! End-to-end tests of the command line: exit codes, report text, JSON
//! round trips and agreement between the two output formats.

use std::collections::BTreeSet;
use std::io::Write;

use miranda::cli::{execute, CollideReport, FiberReport, ResolveReport, WeierstrassReport};
use miranda::scenario::ScenarioReport;
use miranda::tables::CollisionTable;

fn run(args: &[&str]) -> miranda::cli::Outcome {
    execute(std::iter::once("miranda").chain(args.iter().copied()))
}

fn data_file() -> String {
    format!("{}/examples/data/hirzebruch_f1.json", env!("CARGO_MANIFEST_DIR"))
}

/// Unsigned integers and fractions appearing in `text`.
fn numbers(text: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let prev_alpha = i > 0 && (chars[i - 1].is_alphabetic() || chars[i - 1] == '_');
        if chars[i].is_ascii_digit() && !prev_alpha {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || (chars[i] == '/' && chars.get(i + 1).is_some_and(char::is_ascii_digit))) {
                i += 1;
            }
            out.insert(chars[start..i].iter().collect());
        } else {
            i += 1;
        }
    }
    out
}

#[test]
fn documented_invocations() {
    let out = run(&["collide", "II*", "IV"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("β = 7/6, Γ: II, α = 1, δ = 0, verdict: Bad"));

    let out = run(&["classify-fiber", "--orders", "2,3,6"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("I0*"));

    let out = run(&["weierstrass", "--a", "s", "--b", "t"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("blow-ups: 3"));
    assert!(out.stdout.contains("SNC: true"));
    for t in ["type II,", "type III,", "type I0*,"] {
        assert!(out.stdout.contains(t), "{t}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["collide", "II"][..],
        &["collide", "II", "V"],
        &["classify-fiber"],
        &["classify-fiber", "--orders", "2,3", "--type", "II"],
        &["classify-fiber", "--orders", "2,3"],
        &["tables"],
        &["tables", "--cor46", "--miranda3"],
        &["weierstrass", "--a", "s"],
        &["weierstrass", "--a", "s", "--b", "t^"],
        &["resolve", "II", "IV", "--bogus"],
        &["frobnicate"],
        &[],
    ] {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty() && !out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn domain_errors_exit_1_with_error_name() {
    let cases = [
        (&["collide", "III", "IV"][..], "CollisionError::IncompatibleJFamilies"),
        (&["collide", "m2:I0", "I1"], "CollisionError::MissingMultiplicity"),
        (&["classify-fiber", "--orders", "4,6,12"], "KodairaError::NonMinimal"),
        (&["classify-fiber", "--orders", "1,1,5"], "KodairaError::Inconsistent"),
        (&["resolve", "II*", "II*", "--max-depth", "3"], "CollisionError::DepthBudgetExceeded"),
        (&["weierstrass", "--a", "s^4", "--b", "s^6"], "WeierstrassError::NonMinimalModel"),
        (&["weierstrass", "--a", "-3", "--b", "2"], "WeierstrassError::DegenerateFibration"),
        (&["scenario", "/nonexistent/file.json"], "IoError"),
    ];
    for (args, name) in cases {
        let out = run(args);
        assert_eq!(out.code, 1, "{args:?}: {}", out.stderr);
        assert!(out.stderr.starts_with(&format!("error[{name}]")), "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{\"surface\": 1}}").unwrap();
    let out = run(&["scenario", bad.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error[ScenarioError::Malformed]"));
}

#[test]
fn multiplicity_flags() {
    let out = run(&["--json", "collide", "m2:I0", "I1", "--ngamma", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: CollideReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((r.input.n_left, r.input.n_right, r.input.n_gamma), (2, 1, Some(2)));
    assert_eq!(r.outcome.gamma_type.to_string(), "m2:I1");
    assert_eq!(r.outcome.beta.to_string(), "1/2");
}

#[test]
fn json_round_trips() {
    let f = data_file();
    let out = run(&["classify-fiber", "--type", "IV*", "--json"]);
    let r: FiberReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

    let out = run(&["collide", "II*", "IV", "--json"]);
    let r: CollideReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

    let out = run(&["resolve", "II*", "IV*", "--json"]);
    let r: ResolveReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((r.blowups, r.depth), (5, 4));
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

    for flag in ["--cor46", "--miranda3"] {
        let out = run(&["tables", flag, "--json"]);
        let r: Vec<CollisionTable> = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(r.len(), if flag == "--cor46" { 2 } else { 1 });
        assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);
    }

    let out = run(&["weierstrass", "--a", "s", "--b", "t", "--json"]);
    let r: WeierstrassReport = serde_json::from_str(&out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["divisors", "collisions", "steps", "snc"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

    let out = run(&["scenario", &f, "--json"]);
    let r: ScenarioReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let f = data_file();
    let exact: [&[&str]; 4] = [
        &["collide", "II*", "IV"],
        &["collide", "I2*", "I3"],
        &["classify-fiber", "--orders", "2,3,9"],
        &["resolve", "II*", "IV*"],
    ];
    for args in exact {
        let text = run(args).stdout;
        let json = run(&[args, &["--json"]].concat()).stdout;
        assert_eq!(numbers(&text), numbers(&json), "{args:?}\n{text}\n{json}");
    }
    // these JSON reports also carry the chart tree and lattice, so only containment holds
    let wider: [&[&str]; 4] = [
        &["weierstrass", "--a", "s", "--b", "t"],
        &["weierstrass", "--a", "-3", "--b", "2 + s*t"],
        &["scenario", &f],
        &["tables", "--cor46"],
    ];
    for args in wider {
        let text = run(args).stdout;
        let json = run(&[args, &["--json"]].concat()).stdout;
        let (t, j) = (numbers(&text), numbers(&json));
        assert!(t.is_subset(&j), "{args:?}: {:?}", t.difference(&j).collect::<Vec<_>>());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["weierstrass", "--a", "s", "--b", "t", "--json"][..], &["tables", "--miranda3"], &["resolve", "IV*", "IV*"]] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_miranda");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["collide", "II*", "IV"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("β = 7/6"));
    assert_eq!(status(&["collide", "III", "IV"]).status.code(), Some(1));
    assert_eq!(status(&["collide", "III"]).status.code(), Some(2));
}
