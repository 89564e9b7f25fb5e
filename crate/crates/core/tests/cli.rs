use std::io::Write;
use std::process::{Command, Output, Stdio};

use revsynth::io::{emit_tfc, parse_tfc, CircuitFile, TruthTableFile};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("revsynth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn dlog_synth_stats_verify() {
    let table = stdout(&run(&["dlog-gen", "n=2", "f=111", "log"], ""));
    let tfc = stdout(&run(&["synth", "--method", "B"], &table));
    assert!(tfc.starts_with("# synth method=B"));
    let stats = stdout(&run(&["stats"], &tfc));
    let l: usize = stats.lines().find_map(|l| l.strip_prefix("L=")).unwrap().parse().unwrap();
    assert_eq!(l, parse_tfc(&tfc).unwrap().circuit.len());
    let ok = run(&["verify", &tmp("log.tfc", &tfc), &tmp("log.tt", &table)], "");
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn mirror_verifies_against_inverse() {
    let table = stdout(&run(&["dlog-gen", "n:3;f:1011", "pow"], ""));
    let f = TruthTableFile::parse(&table).unwrap().to_mapping().unwrap();
    let tfc = stdout(&run(&["synth", "--method", "K", "--lift"], &table));
    let c = parse_tfc(&tfc).unwrap().circuit;
    let inv = TruthTableFile::from_mapping(&f.inverse().unwrap()).emit();
    let mirrored = emit_tfc(&CircuitFile::new(c.mirror()));
    let o = run(&["verify", &tmp("m.tfc", &mirrored), &tmp("inv.tt", &inv)], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["verify", &tmp("m.tfc", &mirrored), &tmp("f.tt", &table)], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("mismatch input="));
}

#[test]
fn reduce_cancels_a_pair() {
    let text = ".v a,b,c\n.i a,b,c\n.o a,b,c\nBEGIN\nt3 a,b',c\nt3 a,b',c\nEND\n";
    let out = stdout(&run(&["reduce", "--quiet"], text));
    assert!(parse_tfc(&out).unwrap().circuit.is_empty());
}

#[test]
fn errors_are_machine_readable() {
    let o = run(&["synth"], ".i 2\n.o 1\n0\n0\n0\n1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error kind=capacity "));
    let o = run(&["stats"], ".v a\nt2 a,z\n");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error kind=parse "));
}
