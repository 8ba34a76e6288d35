use std::path::PathBuf;
use std::process::{Command, Output};

use entangle::examples::{DynState, ScenarioReport};
use entangle::lawcheck::CorpusReport;

fn entangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn laws_for_one_bx() {
    let o = entangle(&["laws", "--suite", "seven", "--bx", "identity"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS G_LG_R"));
    assert!(out.ends_with("1 entries, 1 as expected, 0 unexpected\n"));
}

#[test]
fn full_corpus_runs_as_expected() {
    let o = entangle(&["laws"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn laws_json_parses() {
    let o = entangle(&["laws", "--suite", "theta", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: CorpusReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.entries.len(), 3);
    assert!(report.all_as_expected);
}

#[test]
fn laws_usage_errors() {
    let o = entangle(&["laws", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite `bogus`"));
    let o = entangle(&["laws", "--bx", "no such bx"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn laws_over_the_cap_need_a_seed() {
    let o = entangle(&["laws", "--suite", "monad", "--bx", "choice", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sampling is disabled"));
    let o = entangle(&[
        "laws", "--suite", "monad", "--bx", "choice", "--cap", "100", "--seed", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sampled, seed 3"));
}

#[test]
fn laws_list() {
    let o = entangle(&["laws", "--suite", "stability", "--list"]);
    assert_eq!(
        stdout(&o),
        "stability identity\nstability nondet\nstability unstable\n"
    );
}

#[test]
fn composers_fixture_agrees() {
    let o = entangle(&[
        "composers",
        "--script",
        &fixture("composers.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: ScenarioReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.all_agree);
    assert_eq!(report.steps.len(), 8);
    let back: ScenarioReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back, report);
    let default = entangle(&["composers"]);
    assert!(stdout(&default).contains("John Tavener (British, ????)"));
    assert!(stdout(&default).ends_with("all agree: true\n"));
}

#[test]
fn composers_malformed_script() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "[\n  { \"op\": \"getL\" },\n  { \"op\": \"setQ\" }\n]\n",
    )
    .unwrap();
    let o = entangle(&["composers", "--script", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let dup = dir.path().join("dup.json");
    std::fs::write(
        &dup,
        r#"[{"op":"setR","value":[{"name":"A","nation":"x"},{"name":"A","nation":"y"}]}]"#,
    )
    .unwrap();
    let o = entangle(&["composers", "--script", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`A` appears more than once"));
}

#[test]
fn sync_fixture_prompts_once_per_edit() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("state.json");
    let transcript = dir.path().join("t.txt");
    let args = [
        "sync",
        "--script",
        &fixture("sync_repeat.txt"),
        "--dump",
        dump.to_str().unwrap(),
        "--transcript",
        transcript.to_str().unwrap(),
    ];
    let a = entangle(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let first = std::fs::read_to_string(&transcript).unwrap();
    assert_eq!(first.matches("Replacement for").count(), 2);
    assert!(first.ends_with("state (5, 10) memoL 2 memoR 0\n"));
    let state: DynState<i64, i64> =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(state.views, (5, 10));
    assert_eq!(state.memo_l.len(), 2);
    let b = entangle(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read_to_string(&transcript).unwrap(), first);
}

#[test]
fn sync_exhausted_input() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("short.txt");
    std::fs::write(&script, "setR 3\n").unwrap();
    let o = entangle(&["sync", "--script", script.to_str().unwrap(), "--left", "-1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("final state: (-1, 0)"));
}

#[test]
fn sync_needs_a_script() {
    let o = entangle(&["sync"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn demo_runs() {
    let o = entangle(&["demo"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rejected"));
    assert!(stdout(&o).contains("6.9999995"));
    let o = entangle(&["demo", "--tolerance", "0", "--values", "7"]);
    assert_eq!(o.status.code(), Some(1));
}
