use std::io::Write;
use std::process::{Command, Stdio};

fn mzvlab(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_mzvlab")).args(args).env_remove("MZVLAB_PREC").output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(mzvlab(&["dual", "1,1,2,1"]), (0, "3,2\n".into(), String::new()));
    assert_eq!(mzvlab(&["eval", "--index", "2", "--prec", "7"]).0, 2);
    assert_eq!(mzvlab(&["verify", "--id", "NOPE"]).0, 2);
    assert_eq!(mzvlab(&["eval", "--index", "1,1"]).0, 3);
    let (code, out, _) = mzvlab(&["verify", "--id", "SS2016-LEMMA", "--k", "2,1", "--x", "1/2,1/3", "--n", "4", "--mode", "exact"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"residual\": \"0\""));
}

#[test]
fn precision_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mzvlab"));
        c.args(["eval", "--index", "3"]).env_remove("MZVLAB_PREC");
        if let Some(p) = env {
            c.env("MZVLAB_PREC", p);
        }
        let v: serde_json::Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["precision_bits"].as_u64().unwrap()
    };
    assert_eq!(run(None), 128);
    assert_eq!(run(Some("300")), 300);
}

#[test]
fn poset_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mzvlab"))
        .args(["poset", "--poset-file", "-", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // zeta(2): K(1) nearest 0, dt/t above it
    child.stdin.take().unwrap().write_all(b"1: K(1)\n2: O\n2<1\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("extensions 1\n"));
    assert!(text.contains("value 1.644934066848226436472415166646"), "{text}");

    let mut child = Command::new(env!("CARGO_BIN_EXE_mzvlab"))
        .args(["poset", "--poset-file", "-", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1: O\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stdout).unwrap().contains("witness 1"));
}
