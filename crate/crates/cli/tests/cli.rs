use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn meridian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meridian"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn search(dir: &Path, manifold: &str, genus: u32, boundary: u32) -> std::path::PathBuf {
    let o = meridian(&[
        "search",
        "--manifold",
        manifold,
        "--genus",
        &genus.to_string(),
        "--boundary",
        &boundary.to_string(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let path = dir.join(format!("{manifold}-{genus}-{boundary}.desc"));
    fs::write(&path, o.stdout).unwrap();
    path
}

#[test]
fn search_validate_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let f = search(dir.path(), "S3", 2, 2);
    let f = f.to_str().unwrap();
    let v = meridian(&["validate", f]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "valid; genus 2, boundary 2\n");
    let i = meridian(&["invariants", f]);
    assert!(stdout(&i).starts_with("components: 1, genus 2, boundary 2\n"));
}

#[test]
fn trace_then_recognize() {
    let dir = tempfile::tempdir().unwrap();
    let f = search(dir.path(), "S3", 3, 2);
    let t = meridian(&["trace", f.to_str().unwrap()]);
    assert_eq!(t.status.code(), Some(0));
    let tf = dir.path().join("t.trace");
    fs::write(&tf, &t.stdout).unwrap();
    let r = meridian(&[
        "recognize",
        tf.to_str().unwrap(),
        "--bottom",
        "annuli",
        "--top",
        "annuli",
    ]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).starts_with("pieces: B A B\n"), "{}", stdout(&r));
}

#[test]
fn exit_codes() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/2_8_1_1.desc");
    let v = meridian(&["validate", corpus.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("2.8.1(1)"));

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.desc");
    fs::write(&junk, "oneone-descriptor 9\n").unwrap();
    assert_eq!(
        meridian(&["validate", junk.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        meridian(&["validate", "/nonexistent.desc"]).status.code(),
        Some(2)
    );
    assert_eq!(
        meridian(&["search", "--manifold", "T2"]).status.code(),
        Some(2)
    );

    let none = meridian(&[
        "search",
        "--manifold",
        "S3",
        "--genus",
        "0",
        "--boundary",
        "2",
    ]);
    assert_eq!(none.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&none.stderr).contains("structurally impossible"));
}

#[test]
fn json_mode() {
    let o = meridian(&[
        "--json",
        "search",
        "--manifold",
        "L(5,2)",
        "--genus",
        "0",
        "--boundary",
        "4",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["pieces"].as_array().unwrap().len(), 1);

    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/parity.desc");
    let o = meridian(&["validate", "--json", corpus.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["valid"], false);
    assert_eq!(doc["ids"], serde_json::json!(["parity"]));
}

#[test]
fn search_is_deterministic() {
    let args = [
        "search",
        "--manifold",
        "S1xS2",
        "--genus",
        "3",
        "--boundary",
        "4",
    ];
    let a = meridian(&args);
    let b = meridian(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
