use std::path::Path;
use std::process::Command;

use tauforge::cli::run;
use tauforge::hurwitz::HurwitzTable;

fn call(cache: &Path, args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["tauforge", "--cache-dir", cache.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn tau_values() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(dir.path(), &["tau", "--g", "0", "--b", "0,0,0"]), (0, "1\n".into(), String::new()));
    assert_eq!(call(dir.path(), &["tau", "--g", "1", "--b", "1"]).1, "1/24\n");
    assert_eq!(call(dir.path(), &["tau", "--g", "0", "--b", "5"]).1, "0\n");
    // order of the indices does not matter
    assert_eq!(call(dir.path(), &["tau", "--g", "1", "--b", "0,2"]).1, "1/24\n");
    let (code, out, _) = call(dir.path(), &["--format", "json", "tau", "--g", "1", "--b", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"b":[1,1],"g":1,"v":"1/24"}"#);
}

#[test]
fn malformed_input_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["tau", "--g", "0", "--b", "a,b"][..],
        &["tau", "--g", "-1", "--b", "0"],
        &["hurwitz", "--g", "0", "--mu", "0,1"],
        &["hurwitz", "--g", "0"],
        &["verify", "nosuch"],
        &["frobnicate"],
        &["hodge", "--g", "0", "--n", "2"],
        &["verify", "master", "--g", "1"],
    ] {
        assert_eq!(call(dir.path(), args).0, 2, "{args:?}");
    }
}

#[test]
fn hurwitz_values_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(dir.path(), &["hurwitz", "--g", "1", "--mu", "2"]).1, "1/2\n");
    assert_eq!(call(dir.path(), &["hurwitz", "--g", "0", "--mu", "3", "--oracle"]).1, "1 (oracle: agree)\n");
    let (code, out, _) = call(dir.path(), &["hurwitz", "--g", "0", "--mu", "2,2,2", "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("(oracle: agree)\n"), "{out}");
    // unordered input is canonicalized
    assert_eq!(
        call(dir.path(), &["hurwitz", "--g", "0", "--mu", "1,2"]).1,
        call(dir.path(), &["hurwitz", "--g", "0", "--mu", "2,1"]).1
    );
    let (code, _, err) = call(dir.path(), &["hurwitz", "--g", "5", "--mu", "4", "--oracle"]);
    assert_eq!(code, 2);
    assert!(err.contains("out of range"), "{err}");
}

#[test]
fn hodge_and_ftable_output() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(dir.path(), &["hodge", "--g", "1", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "<tau0 lambda1>_1 = 1/24\n<tau1 lambda0>_1 = 1/24\n");
    let (_, out, _) = call(dir.path(), &["--format", "csv", "ftable", "--imax", "2"]);
    assert_eq!(out, "i,j,f\n1,1,1\n1,2,-1\n2,1,3\n2,2,-5\n2,3,2\n");
}

#[test]
fn verify_examples_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(dir.path(), &["verify", "ftable", "--imax", "15"]).0, 0);
    assert_eq!(call(dir.path(), &["verify", "kdv", "--n", "2", "--K", "3", "--D", "4"]).0, 0);
    let (code, out, _) = call(dir.path(), &["verify", "master", "--g", "1", "--n", "3", "--N", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("suite master: PASS"));
    let (code, out, _) = call(dir.path(), &["-q", "verify", "lemma32", "--imax", "3"]);
    assert_eq!((code, out.as_str()), (0, ""));
}

#[test]
fn json_report_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "verify", "cutjoin-pde", "--dmax", "3", "--rmax", "5"];
    let (code, a, _) = call(dir.path(), &args);
    let (_, b, _) = call(dir.path(), &args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suite"], "cutjoin-pde");
    assert_eq!(v["params"]["dmax"], 3);
    let first = &v["checks"][0];
    assert_eq!(first["pass"], true);
    assert!(first["counterexample"].is_null());
}

#[test]
fn corrupted_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("hurwitz.jsonl"),
        "{\"format\":\"hurwitz-cache\",\"version\":1}\n{\"g\":0,\"mu\":[1,1],\"h\":\"1\"}\n",
    )
    .unwrap();
    let (code, out, _) = call(dir.path(), &["verify", "oracle", "--dmax", "3", "--rmax", "5"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"), "{out}");
    assert!(out.contains("FAIL recursion equals oracle for |mu| = 2"), "{out}");

    let header = "{\"format\":\"hurwitz-cache\",\"version\":1}\n";
    std::fs::write(dir.path().join("hurwitz.jsonl"), format!("{header}{{\"g\":0,\"mu\":[1,1],\"h\":\"1/3\"}}\n")).unwrap();
    let (code, _, err) = call(dir.path(), &["hurwitz", "--g", "0", "--mu", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a Hurwitz number"), "{err}");
    std::fs::write(dir.path().join("hurwitz.jsonl"), "{\"format\":\"hurwitz-cache\",\"version\":99}\n").unwrap();
    assert_eq!(call(dir.path(), &["hurwitz", "--g", "0", "--mu", "1"]).0, 1);
}

#[test]
fn export_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    assert_eq!(call(dir.path(), &["export", "ftable", path.to_str().unwrap(), "--imax", "3"]).0, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.contains(&"3,2,-35"));

    // empty cache exports a header only
    let empty = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.jsonl");
    assert_eq!(call(empty.path(), &["export", "hurwitz", h.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read_to_string(&h).unwrap().lines().count(), 1);
    assert!(HurwitzTable::cache_load(&h).unwrap().is_empty());

    // round trip through the cache
    call(dir.path(), &["hurwitz", "--g", "1", "--mu", "3,1"]);
    assert_eq!(call(dir.path(), &["export", "hurwitz", h.to_str().unwrap()]).0, 0);
    let cached = HurwitzTable::cache_load(&dir.path().join("hurwitz.jsonl")).unwrap();
    let exported = HurwitzTable::cache_load(&h).unwrap();
    assert!(!exported.is_empty());
    assert_eq!(cached.entries(), exported.entries());

    let tau = dir.path().join("tau.jsonl");
    assert_eq!(call(dir.path(), &["export", "tau", tau.to_str().unwrap(), "--max-euler", "1"]).0, 0);
    assert_eq!(
        std::fs::read_to_string(&tau).unwrap(),
        "{\"g\":0,\"b\":[0,0,0],\"v\":\"1\"}\n{\"g\":1,\"b\":[1],\"v\":\"1/24\"}\n"
    );

    let hodge = dir.path().join("hodge.jsonl");
    assert_eq!(call(dir.path(), &["export", "hodge", hodge.to_str().unwrap(), "--g", "1", "--n", "1"]).0, 0);
    assert_eq!(std::fs::read_to_string(&hodge).unwrap().lines().count(), 2);

    let bad = dir.path().join("missing").join("x.csv");
    assert_eq!(call(dir.path(), &["export", "ftable", bad.to_str().unwrap()]).0, 1);
}

#[test]
fn cache_stats_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    assert!(call(dir.path(), &["cache", "stats"]).1.ends_with(": 0 entries\n"));
    call(dir.path(), &["hurwitz", "--g", "0", "--mu", "2"]);
    let (_, out, _) = call(dir.path(), &["cache", "stats"]);
    assert!(!out.ends_with(": 0 entries\n"), "{out}");
    assert_eq!(call(dir.path(), &["cache", "clear"]).0, 0);
    assert!(!dir.path().join("hurwitz.jsonl").exists());
}

#[test]
fn cache_dir_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_tauforge");
    let status = Command::new(bin)
        .env("TAUFORGE_CACHE_DIR", env_dir.path())
        .args(["hurwitz", "--g", "0", "--mu", "2"])
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(env_dir.path().join("hurwitz.jsonl").exists());

    let other = tempfile::tempdir().unwrap();
    let status = Command::new(bin)
        .env("TAUFORGE_CACHE_DIR", other.path())
        .arg("--cache-dir")
        .arg(flag_dir.path())
        .args(["hurwitz", "--g", "0", "--mu", "2"])
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(flag_dir.path().join("hurwitz.jsonl").exists());
    assert!(!other.path().join("hurwitz.jsonl").exists());
}
