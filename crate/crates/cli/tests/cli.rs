use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multitile"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, out)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_octagon() {
    let (code, v, _) = run(&["decide", path(&data("octagon.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["multi_tiles"], Value::Bool(true));
}

#[test]
fn decide_irrational_pentagon() {
    let (code, v, _) = run(&["decide", path(&data("pentagon-irrational.json"))]);
    assert_eq!(code, 1);
    assert_eq!(v["failure_reason"], "span-not-discrete");
}

#[test]
fn bolle_and_lp() {
    let (code, _, _) = run(&["bolle", path(&data("octagon.json")), path(&data("z2.json"))]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "bolle",
        path(&data("octagon.json")),
        path(&data("z-2z.json")),
    ]);
    assert_eq!(code, 1);
    let (code, v, _) = run(&["lp", path(&data("octagon.json"))]);
    assert_eq!(code, 0);
    assert!(v.to_string().contains("\"6\""));
}

#[test]
fn verify_exit_codes() {
    let (code, v, _) = run(&["verify", path(&data("octagon-family-third.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["multiplicity"], 7);
    let (code, v, _) = run(&["verify", path(&data("octagon-z-2z.json"))]);
    assert_eq!(code, 1);
    assert_ne!(
        v["counterexample"][0]["count"],
        v["counterexample"][1]["count"]
    );
    let (code, _, _) = run(&["verify", path(&data("incommensurable.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_input_is_an_error() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"generators\": [[1]]}").unwrap();
    for cmd in ["decide", "lp", "verify"] {
        let (code, _, out) = run(&[cmd, path(&bad)]);
        assert_eq!(code, 2, "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let (code, _, _) = run(&["decide", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
}

#[test]
fn examples_round_trip() {
    for name in [
        "tetromino-L1",
        "tetromino-L2",
        "tetromino-union",
        "octagon-family",
    ] {
        let (code, v, out) = run(&["examples", name]);
        assert_eq!(code, 0);
        let file = scratch(&format!("{name}.json"));
        std::fs::write(&file, &out.stdout).unwrap();
        let stored: Value = serde_json::from_str(
            &std::fs::read_to_string(data(&format!(
                "{}.json",
                if name == "octagon-family" {
                    "octagon-family-zero"
                } else {
                    name
                }
            )))
            .unwrap(),
        )
        .unwrap();
        assert_eq!(v, stored, "{name}");
        let scene =
            multitile::json::scene_from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(multitile::json::encode_scene(&scene), v);
    }
}

#[test]
fn render_is_deterministic() {
    let a = scratch("a.svg");
    let b = scratch("b.svg");
    for out in [&a, &b] {
        let (code, _, _) = run(&[
            "render",
            path(&data("octagon-family-third.json")),
            "-o",
            path(out),
            "--window",
            "0,0,4,4",
        ]);
        assert_eq!(code, 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("<svg") && text.contains("k = 7"));
    let (code, _, _) = run(&[
        "render",
        path(&data("octagon-family-third.json")),
        "-o",
        "/nonexistent/x.svg",
        "--window",
        "0,0,1,1",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "render",
        path(&data("octagon-family-third.json")),
        "-o",
        path(&a),
        "--window",
        "1,1,1,2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn strips_profile() {
    let (code, v, _) = run(&[
        "strips",
        path(&data("octagon-positioned.json")),
        path(&data("z-2z.json")),
        "--from",
        "0",
        "--to",
        "4",
    ]);
    assert_eq!(code, 0);
    let strips = v["strips"].as_array().unwrap();
    assert_eq!(strips.len(), 4);
    assert_eq!(strips[0]["count"], 4);
    assert_eq!(strips[1]["count"], 3);
}
