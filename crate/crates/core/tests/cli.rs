//! The command-line front end: output formats and exit codes.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_regcover")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn decided_instances_exit_zero() {
    let (code, out) = run(&[
        "cover", "--class", "at", "--alphabet", "abc", "--target", "a+|b+", "--against", "b+|c+",
        "--against", "c+|a+", "--emit-cover", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coverable"], true);
    assert_eq!(v["cover"]["pieces"].as_array().unwrap().len(), 2);
    let (code, out) = run(&[
        "cover", "--class", "at", "--alphabet", "abc", "--target", "a+|b+", "--against", "b+|c+",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coverable"], false);
}

#[test]
fn input_errors_exit_two() {
    let (code, _) = run(&["cover", "--class", "at", "--alphabet", "ab", "--target", "(a", "--against", "b"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["imprint", "--class", "at", "--alphabet", "ab"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["cover", "--class", "nope", "--alphabet", "ab", "--against", "b"]);
    assert_eq!(code, 2);
}

#[test]
fn caps_exit_three() {
    let (code, _) = run(&[
        "cover", "--class", "bsigma1", "--alphabet", "ab", "--target", "(ab)*", "--against", "a",
        "--max-elements", "3",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn instance_files_and_oracles() {
    let dir = std::env::temp_dir().join("regcover-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("instance.json");
    std::fs::write(
        &path,
        r#"{"alphabet":"ab","class":"sigma1","target":"a+","against":["b+"],"options":{"emit_cover":true}}"#,
    )
    .unwrap();
    let (code, out) = run(&["cover", "--instance", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coverable"], true);
    assert!(v["cover"]["verified"]["separating"].as_bool().unwrap());

    let (code, out) = run(&["oracle", "sigma1-sep", "--alphabet", "ab", "--target", "a+", "--against", "b+", "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("true"));
    let (_, out) = run(&["oracle", "pt-k", "--k", "1", "--alphabet", "ab", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classes"], 4);
    let (_, out) = run(&[
        "oracle", "at", "--alphabet", "abc", "--against", "(ab)+", "--against", "b(ab)+",
        "--against", "c(ac)+", "--json",
    ]);
    let v: Vec<Vec<usize>> = serde_json::from_str(&out).unwrap();
    assert_eq!(v.len(), 5);
    let (code, out) = run(&["member", "--class", "sigma1", "--alphabet", "ab", "--target", "(a|b)*a(a|b)*"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("member: true"));
}

#[test]
fn bundled_instances_decide() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/instances");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (code, out) = run(&["cover", "--instance", path.to_str().unwrap(), "--json"]);
        assert_eq!(code, 0, "{}", path.display());
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["coverable"], true, "{}", path.display());
        assert!(v["cover"]["verified"]["separating"].as_bool().unwrap());
    }
}
