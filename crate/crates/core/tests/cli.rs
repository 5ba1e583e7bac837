use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_spinweb");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("SPINWEB_FIXTURES", FIXTURES).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .env("SPINWEB_FIXTURES", FIXTURES)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_pentagon() {
    let o = run(&["classify", "--gen", "cycle:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "spin model: pentagon case; family Kauffman; dim V3 = 13");
}

#[test]
fn classify_union_of_completes() {
    let o = run(&["classify", "--gen", "union_complete:2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "spin model: union of completes; family Bisch-Jones; dim V3 = 11");
}

#[test]
fn classify_petersen_is_not_a_spin_model() {
    let o = run(&["classify", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not a spin model"));
}

#[test]
fn exact_dim_resolves_open_prediction() {
    let plain = stdout(&run(&["classify", "--gen", "clebsch"]));
    assert!(plain.contains("{14,15}"), "{plain}");
    let exact = stdout(&run(&["classify", "--gen", "clebsch", "--exact-dim"]));
    assert!(exact.contains("dim V3 = 14"), "{exact}");
}

#[test]
fn classify_json_from_stdin() {
    let o = run_stdin(&["classify", "--graph6", "-", "--json"], "Dhc\nI?LRCecq?\n");
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["graph6"], "Dhc");
    assert_eq!(lines[0]["verdict"]["is_spin_model"], true);
    assert_eq!(lines[1]["verdict"]["is_spin_model"], false);
}

#[test]
fn verify_petersen_flags_and_exit_code() {
    let o = run(&["verify", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("1b✓(k=3) 2b✓(k=3,λ=0,μ=1) 3a✗ 3b✓"), "{out}");
    assert!(out.contains("3a: fails"));
}

#[test]
fn verify_json_three_cycle() {
    let o = run(&["verify", "--gen", "circulant_tournament:3,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["directed"], true);
    assert_eq!(v["dim_v3"], 9);
    assert_eq!(v["2b"]["coefficients"]["k"], "1");
}

#[test]
fn dims_and_generate() {
    assert_eq!(stdout(&run(&["dims", "--gen", "complete:4"])).trim(), "5");
    let g6 = stdout(&run(&["generate", "--gen", "cycle:5"]));
    assert_eq!(g6.trim(), "Dhc");
    let o = run(&["dims", "--graph6", g6.trim()]);
    assert_eq!(stdout(&o).trim(), "13");
}

#[test]
fn tournament_graph6_input() {
    let g6 = stdout(&run(&["generate", "--gen", "circulant_tournament:3,1"]));
    let o = run(&["classify", "--graph6", g6.trim(), "--tournament"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3-cycle"), "{}", stdout(&o));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["classify", "--graph6", "zzz"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--gen", "nope:3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--gen", "cycle:5", "--tournament"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--gen", "empty:3"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--max-n", "9"]).status.code(), Some(2));
}

#[test]
fn census_enumeration_summary() {
    let o = run(&["census", "--max-n", "5", "--mode", "list_spin_models", "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# summary"));
    assert!(out.contains("disagreements=0"));
    assert!(out.lines().any(|l| l.starts_with("graph6=Dhc\tn=5\tspin=T\tcase=pentagon")));
}

#[test]
fn census_scan_sample() {
    let input = format!("{FIXTURES}/scan_sample.g6");
    let o = run(&["census", "--input", &input, "--mode", "list_spin_models"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let hits: Vec<&str> = out.lines().filter(|l| l.starts_with("graph6=")).collect();
    assert_eq!(hits.len(), 2, "{out}");
    assert!(hits[0].contains("srg=16,5,0,2"));
    assert!(hits[1].contains("srg=100,22,0,6\tq=0,0,0,2"));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--gen", "paley:9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1b✓(k=4) 2b✓(k=4,λ=1,μ=2) 3a✓ 3b✓"));
    let o = run(&["verify", "--gen", "schlafli"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().next().unwrap().ends_with("3b✗"));
    let o = run(&["verify", "--gen", "circulant_tournament:5,1,2", "--tournament"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().next().unwrap().ends_with("3b✗"));
}

#[test]
fn generate_into_classify_pipeline() {
    let g6 = stdout(&run(&["generate", "--gen", "clebsch"]));
    let o = run_stdin(&["classify", "--graph6", "-"], &g6);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("spin model"));
    assert_eq!(stdout(&run(&["dims", "--gen", "union_complete:3,3"])).trim(), "12");
}

#[test]
fn census_assert_mode_reports_ok() {
    let o = run(&["census", "--max-n", "6", "--mode", "assert_equivalence"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("OK, 33867 graphs, 0 disagreements"));
}
