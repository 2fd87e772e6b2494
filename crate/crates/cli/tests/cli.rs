//! Process-level behavior of the installed binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kunzkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_status_and_streams() {
    let out = run(&["dimension", "6,7,8,9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\n");
    assert!(out.stderr.is_empty());

    let out = run(&["apery", "4,6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd"));

    assert_eq!(run(&["apery"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn file_input() {
    let path = std::env::temp_dir().join(format!("kunzkit-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"generators": [6, 7, 8, 9]}"#).unwrap();
    let from_file = run(&["poset", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file.stdout, run(&["poset", "6,7,8,9"]).stdout);
    assert_eq!(run(&["poset", "--file", "/nonexistent/input.json"]).status.code(), Some(2));
}

#[test]
fn output_is_identical_across_runs() {
    for args in [
        &["minpres", "9,20,30,35"][..],
        &["outer-betti", "11,60,72,84,96,108"],
        &["poset", "8,9,11,12,15", "--format", "dot"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
