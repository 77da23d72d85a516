use std::path::PathBuf;
use std::process::{Command, Output};

use verify_cli::{Outcome, VerificationReport};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("verify-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn char0_rank_passes() {
    let o = verify(&["char0-rank", "--char", "0", "--t", "2", "--cutoff", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.outcome, Outcome::Pass);
    assert_eq!(r.details["rank"], 1);
    assert_eq!(r.details["stable"], true);
    assert_eq!(r.details["cutoff"], 4);
}

#[test]
fn char0_rank_t1_is_zero() {
    let o = verify(&["char0-rank", "--t", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.details["rank"], 0);
}

#[test]
fn charp_family_p2_t3() {
    let o = verify(&["charp-family", "--char", "2", "--t", "3", "--cutoff", "4", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.details["independence"]["classes"], 3);
    assert_eq!(r.details["params"]["bound"], 3);
}

#[test]
fn log_identity_and_cocycle_pass() {
    assert_eq!(code(&verify(&["log-identity", "--t", "2"])), 0);
    assert_eq!(code(&verify(&["char0-eta-cocycle", "--t", "3"])), 0);
    assert_eq!(code(&verify(&["char0-eta-noncoboundary", "--t", "2"])), 0);
    assert_eq!(code(&verify(&["h6-rank", "--j", "-6"])), 0);
    assert_eq!(code(&verify(&["oracle-crosscheck", "--t", "2", "--degree-bound", "4"])), 0);
}

#[test]
fn inconclusive_without_escalation() {
    let args = ["rank", "--char", "2", "--t", "3", "--multidegree", "0,0,0,1", "--max-cutoff", "4", "--format", "json"];
    let o = verify(&args);
    assert_eq!(code(&o), 3);
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.outcome, Outcome::Inconclusive);
    assert!(!r.unstable_pieces().is_empty());
    let mut escalated = args.to_vec();
    escalated[8] = "8";
    assert_eq!(code(&verify(&escalated)), 0);
}

#[test]
fn negative_multidegree_parses() {
    let o = verify(&["rank", "--char", "2", "--t", "3", "--multidegree", "0,0,0,-1", "--format", "tsv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("rank 1"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&verify(&["char0-eta-cocycle", "--char", "2", "--t", "2"])), 64);
    assert_eq!(code(&verify(&["charp-family", "--char", "0", "--t", "3"])), 64);
    assert_eq!(code(&verify(&["no-such-scenario"])), 64);
    assert_eq!(code(&verify(&["char0-rank", "--t", "2", "--cutoff", "1"])), 64);
    assert_eq!(code(&verify(&["char0-rank", "--t", "2", "--char", "4"])), 64);
    assert_eq!(code(&verify(&["char0-rank"])), 64);
    assert_eq!(code(&verify(&["rank", "--t", "2", "--multidegree", "1,2"])), 64);
    assert_eq!(code(&verify(&["char0-rank", "--t", "2", "--format", "xml"])), 64);
    assert_eq!(code(&verify(&["--help"])), 0);
}

#[test]
fn failing_fixture_reports_witness() {
    let path = scratch("one-entry.toml");
    std::fs::write(
        &path,
        "name = \"broken\"\ncochain_degree = 3\nmultidegree = \"0,0,0,0\"\n\n[[component]]\nsite = \"vxz\"\nentry = \"D1/vz\"\n",
    )
    .unwrap();
    let fixture = path.to_str().unwrap();
    let o = verify(&["char0-eta-cocycle", "--t", "2", "--fixture", fixture]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.contains("[nonzero] uvxz"), "{text}");
    assert!(text.contains("outcome: FAIL"));
    let o = verify(&["char0-eta-noncoboundary", "--t", "2", "--fixture", fixture]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_fixture_is_a_usage_error() {
    let path = scratch("malformed.toml");
    std::fs::write(&path, "this is not toml [").unwrap();
    let o = verify(&["char0-eta-cocycle", "--t", "2", "--fixture", path.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("fixture"));
}

#[test]
fn json_is_deterministic_across_job_counts() {
    let base = ["charp-family", "--char", "2", "--t", "3", "--format", "json"];
    let a = verify(&base);
    let b = verify(&base);
    let mut with_jobs = base.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let c = verify(&with_jobs);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn json_round_trips() {
    let o = verify(&["char0-eta-cocycle", "--t", "2", "--format", "json"]);
    let text = stdout(&o);
    let r: VerificationReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, text);
    assert!(r.duration_ms.is_none());
}

#[test]
fn tsv_has_one_row_per_component() {
    let o = verify(&["char0-eta-cocycle", "--t", "2", "--format", "tsv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "scenario\titem\tstatus\tdetail");
    assert_eq!(lines.len(), 16);
    assert!(lines[1..].iter().all(|l| l.split('\t').count() == 4));
}

#[test]
fn out_and_timing() {
    let path = scratch("report.json");
    let o = verify(&["h6-rank", "--j", "-7", "--format", "json", "--timing", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.duration_ms.is_some());
    assert_eq!(r.details["formula"], 6);
}

#[test]
fn window_reports_both_bounds() {
    let o = verify(&["charp-window", "--char", "2", "--t", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.details["window"]["rank"], 3);
    assert_eq!(r.details["bound"], 3);
    assert_eq!(r.details["reaches_two_t_minus_1"], false);
}
