use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn program(name: &str) -> String {
    root().join("programs").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elpsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_program(dir: &Path, text: &str) -> String {
    let path = dir.join("p.elp");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_prints_answer_set() {
    let o = run(&["solve", &program("pi62_asp.elp")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 answer set\n{a,c,e,f,p}\n");
}

#[test]
fn worldviews_pi0_is_empty() {
    let o = run(&["worldviews", "--semantics", "g91", &program("pi0.elp")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0 world views\n");
}

#[test]
fn tdesp_recovers_pi1_candidate() {
    let o = run(&["tdesp", "--semantics", "k15", "--u", "p,q", &program("pi1.elp")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 world view\n[ {p} ]\n");
}

#[test]
fn tdesp_with_fact_keeps_it() {
    let o = run(&["tdesp", "-s", "k15", "-u", "p,q", &program("pi1_fact.elp")]);
    assert_eq!(stdout(&o), "1 world view\n[ {c,p} ]\n");
}

#[test]
fn pi2_agrees_across_semantics() {
    for s in ["g91", "k15", "s16"] {
        let o = run(&["worldviews", "-s", s, &program("pi2.elp")]);
        assert_eq!(stdout(&o), "1 world view\n[ {p,q} ]\n", "{s}");
    }
}

#[test]
fn layered_tdespb_on_pi3() {
    let o = run(&["tdespb", "-u", "e,h,m,f,ne", "-u", "e,h,m,f,ne,in", &program("pi3.elp")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 world view\n[ {a,e,h,in} {a,f,in} ]\n");
}

#[test]
fn stratify_reports_levels_and_cycles() {
    let o = run(&["stratify", &program("pi3.elp")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("stratified\n"), "{text}");

    let o = run(&["stratify", &program("cycle.elp")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("not stratified\n"), "{text}");
    assert!(text.contains("cycle e > f > e") || text.contains("cycle f > e > f"), "{text}");
}

#[test]
fn split_lists_splitting_sets() {
    let o = run(&["split", &program("pi0.elp")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2 splitting sets\n{}\n{a,b}\n");
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_elpsplit"))
        .args(["solve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"a :- not b. b :- not a.").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "2 answer sets\n{a}\n{b}\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["worldviews", "-s", "nope", &program("pi0.elp")])), 2);
    assert_eq!(code(&run(&["--help"])), 0);

    let bad = write_program(dir.path(), "a :- .");
    let o = run(&["solve", &bad]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:6"));

    // q does not occur, so it splits trivially; {b} cuts the head of a | b
    let o = run(&["split", "--u", "q", &program("pi0.elp")]);
    assert_eq!(code(&o), 0);
    let o = run(&["tdespb", "--u", "b", &program("pi0.elp")]);
    assert_eq!(code(&o), 4);

    assert_eq!(code(&run(&["--max-subjective", "1", "worldviews", &program("cycle.elp")])), 5);
    assert_eq!(code(&run(&["--max-atoms", "2", "split", &program("pi3.elp")])), 5);
}

#[test]
fn solve_rejects_epistemic_program() {
    let o = run(&["solve", &program("pi1.elp")]);
    assert_ne!(code(&o), 0);
}

#[test]
fn json_compare_is_stable() {
    let args = ["--json", "compare", "-s", "k15", "--u", "p,q", &program("pi1.elp")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["semantics"], "k15");
    assert_eq!(v["splitting_set"], serde_json::json!(["p", "q"]));
    assert_eq!(v["direct"], serde_json::json!([]));
    assert_eq!(v["esp"], serde_json::json!([]));
    assert_eq!(v["tdesp"], serde_json::json!([[["p"]]]));
    assert_eq!(v["verdicts"]["esp_eq_direct"], true);
    assert_eq!(v["verdicts"]["tdesp_eq_direct"], false);
    assert_eq!(v["degenerate"], false);
    let trace = &v["traces"][0];
    assert_eq!(trace["es"], serde_json::json!(["K p"]));
    assert_eq!(trace["ec"], serde_json::json!(["K p"]));
    assert_eq!(trace["rq"], serde_json::json!([]));
}

#[test]
fn json_worldviews_round_trip() {
    let o = run(&["--json", "worldviews", &program("cycle.elp")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["operation"], "worldviews");
    assert_eq!(
        v["world_views"],
        serde_json::json!([[["a", "e"], ["b", "e"]], [["a", "f"], ["b", "f"]]])
    );
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn corpus_passes() {
    let o = run(&["corpus", &root().join("corpus").to_string_lossy()]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.lines().last().unwrap().ends_with(" 0 failed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn empty_corpus_has_no_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["corpus", &dir.path().to_string_lossy()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0 files, 0 checks, 0 passed, 0 failed\n");
}

#[test]
fn corpus_reports_wrong_expectation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("wrong.toml"),
        r#"
name = "wrong"
program = "p | q. :- not K p."

[[expect]]
operation = "worldviews"
semantics = "g91"
world_views = [[["p"]]]

[[expect]]
operation = "stratify"
stratified = true
"#,
    )
    .unwrap();
    let o = run(&["corpus", &dir.path().to_string_lossy()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("FAIL wrong worldviews/g91"), "{text}");
    assert!(text.contains("PASS wrong stratify"), "{text}");
    assert!(text.ends_with("1 files, 2 checks, 1 passed, 1 failed\n"), "{text}");
}

#[test]
fn malformed_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "name = \"x\"\nprogram = \"a.\"\nextra = 1\n").unwrap();
    assert_eq!(code(&run(&["corpus", &dir.path().to_string_lossy()])), 3);
}
