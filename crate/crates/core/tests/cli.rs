//! The `krc` binary: payload round-trips, exit codes and cache management.

mod common;

use std::path::Path;
use std::process::Command;

use common::{cache_dir, engine, tensor};
use krc::cli::{run, EXIT_FAIL, EXIT_GUARD, EXIT_PASS, EXIT_SCOPE, EXIT_USAGE};
use krc::kr::Family;
use serde_json::Value;

const TRIPLE: &str = "[[1,2]] ⊗ [[1,3,-3]] ⊗ [[1],[3],[-1]]";
const PAIR: &str = "[[[1,2,3,4],[1,2]],[[3,-3,-2],[4],[-4]]]";

fn krc(cache: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_krc"))
        .args(args)
        .env("KRC_CACHE_DIR", cache)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn in_process(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["krc", "--no-cache", "--format", "json"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn line_value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no {key:?} in {out}"))
}

#[test]
fn documented_examples() {
    let (code, out, _) = krc(
        &cache_dir(),
        &["energy", "--alg", "D1", "--n", "6", "--shapes", "2,2", "3,1", "1,3", "--element", TRIPLE],
    );
    assert_eq!(code, EXIT_PASS);
    assert_eq!(line_value(&out, "D̄ = "), "7");

    let (code, out, _) = krc(&cache_dir(), &["verify", "strange", "--alg", "C1", "--n", "3", "--shapes", "1,1", "1,2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("verdict PASS"));

    let (code, out, _) = krc(
        &cache_dir(),
        &["r", "--alg", "D1", "--n", "6", "--left", "4,3", "--right", "3,3", "--element", PAIR],
    );
    assert_eq!(code, EXIT_PASS);
    assert_eq!(line_value(&out, "R(b) = "), "[[1,2,3],[1,2,3],[1]] ⊗ [[4,-4,-3,-2],[4,-1]]");
    assert_eq!(line_value(&out, "H̄ = "), "8");
    assert_eq!(line_value(&out, "D̄ = "), "12");
}

#[test]
fn printed_payloads_parse_back() {
    let e = engine();
    for (fam, alg, n, shapes) in [(Family::D, "D1", 4, [(2, 1), (1, 2)]), (Family::C, "C1", 2, [(1, 2), (2, 1)])] {
        let t = tensor(&e, fam, n, &shapes);
        let t21 = t.reversed();
        let (left, right) = (format!("{},{}", shapes[0].0, shapes[0].1), format!("{},{}", shapes[1].0, shapes[1].1));
        let nstr = n.to_string();
        for b in t.all_elements().unwrap().into_iter().step_by(7) {
            let payload = t.to_json(&b).unwrap();
            let (code, out) = in_process(&[
                "r", "--alg", alg, "--n", &nstr, "--left", &left, "--right", &right, "--element", &payload, "--oracle",
            ]);
            assert_eq!(code, EXIT_PASS, "{out}");
            let v: Value = serde_json::from_str(&out).unwrap();
            let image = t21.parse(&v["image"].to_string()).unwrap();
            assert_eq!(image, e.combinatorial_r(&t, &b).unwrap().image);
            for x in v["iterates"].as_array().unwrap() {
                t.parse(&x.to_string()).unwrap();
            }

            let (code, out) = in_process(&[
                "sigma", "--alg", alg, "--n", &nstr, "--shapes", &left, &right, "--element", &payload,
            ]);
            assert_eq!(code, EXIT_PASS);
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(t.parse(&v["element"].to_string()).unwrap(), b);
            assert_eq!(t.parse(&v["sigma"].to_string()).unwrap(), t.sigma(&b).unwrap());
            assert!(t.is_highest(&t.parse(&v["high"].to_string()).unwrap()));
        }
    }
    // text output uses the ⊗-separated form, which parses too
    let t = tensor(&e, Family::D, 6, &[(2, 2), (3, 1), (1, 3)]);
    let (_, out, _) = krc(
        &cache_dir(),
        &["sigma", "--alg", "D1", "--n", "6", "--shapes", "2,2", "3,1", "1,3", "--element", TRIPLE],
    );
    let s = t.parse(line_value(&out, "σ(b) = ")).unwrap();
    assert_eq!(s, t.sigma(&t.parse(TRIPLE).unwrap()).unwrap());
    assert_eq!(line_value(&out, "High(σ(b)) = "), "[[1,2],[1,2]] ⊗ [[1,3,4]] ⊗ [[2],[3],[5]]");
}

#[test]
fn element_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.json");
    std::fs::write(&file, "[[[1]],[[1],[1]]]\n").unwrap();
    let f = file.to_str().unwrap();
    let (code, out, _) = krc(dir.path(), &["energy", "--alg", "C1", "--n", "2", "--shapes", "1,1", "1,2", "--element-file", f]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(line_value(&out, "D̄ = "), "0");
    let (code, _, err) = krc(dir.path(), &["energy", "--alg", "C1", "--n", "2", "--shapes", "1,1", "--element-file", "/nonexistent"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("/nonexistent"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // X=K below the rank bound: B^{2,2} of C_2 is classically irreducible
    let (code, out, _) = krc(d, &["verify", "xk", "--alg", "C1", "--n", "2", "--shapes", "2,2", "1,1", "--lambda", "1"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("verdict FAIL"));
    let (code, out, _) = krc(d, &["verify", "xk", "--alg", "C1", "--n", "3", "--shapes", "2,2", "1,1", "--lambda", "1"]);
    assert_eq!(code, EXIT_PASS, "{out}");

    assert_eq!(krc(d, &["sigma", "--alg", "D1", "--n", "4"]).0, EXIT_USAGE);
    assert_eq!(krc(d, &["energy", "--alg", "D1", "--n", "4", "--shapes", "1", "--element", "[[[1]]]"]).0, EXIT_USAGE);
    assert_eq!(krc(d, &["energy", "--alg", "D1", "--n", "4", "--shapes", "1,1", "--element", "[[[1,2]]]"]).0, EXIT_USAGE);
    assert_eq!(krc(d, &["xsum", "--alg", "B1", "--n", "4", "--shapes", "1,1", "--lambda", ""]).0, EXIT_SCOPE);
    assert_eq!(krc(d, &["verify", "strange", "--alg", "A1", "--n", "3", "--shapes", "1,1"]).0, EXIT_SCOPE);

    let u22 = "[[[1,2],[1,2]],[[1,2],[1,2]]]";
    let (code, out, _) = krc(
        d,
        &["--format", "json", "r", "--alg", "D1", "--n", "6", "--left", "2,2", "--right", "2,2", "--element", u22, "--oracle"],
    );
    assert_eq!(code, EXIT_GUARD);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], EXIT_GUARD);
}

#[test]
fn cache_management() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (_, out, _) = krc(d, &["cache", "list"]);
    assert_eq!(out.lines().count(), 1);
    krc(d, &["xsum", "--alg", "D1", "--n", "4", "--shapes", "1,1", "2,1", "--lambda", "1"]);
    let (code, out, _) = krc(d, &["--format", "json", "cache", "list"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    // both factors, plus the type-A crystals behind the energy tables
    assert!(entries.iter().any(|e| e["file"] == "D1-n4-r2-s1.krc"));
    assert!(entries.iter().all(|e| e["valid"] == true));
    let (_, out, _) = krc(d, &["cache", "clear"]);
    assert!(out.starts_with(&format!("removed {} files", entries.len())));
    assert_eq!(krc(d, &["--format", "json", "cache", "list"]).1.matches("\"file\"").count(), 0);
}
