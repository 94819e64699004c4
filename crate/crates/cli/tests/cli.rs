use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn polyuniv(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyuniv"))
        .current_dir(dir)
        .env_remove("POLYUNIV_OUT_DIR")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn factor_reports_profile() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["factor", "--p", "3", "--a", "1", "--poly", "X^4+X^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("profile = (1,1,2)(2,1,1)"), "{}", stdout(&o));
    assert!(tmp.path().join("polyuniv-out/factor.report.txt").exists());
}

#[test]
fn turnwald_failure_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["turnwald", "--p", "3", "--a", "1", "--poly", "X^4-X"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("simple_root_ok = false"));
    assert!(out.contains("verdict = fail"));
}

#[test]
fn exhaustive_universality_exits_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(
        tmp.path(),
        &["universality", "--p", "5", "--a", "1", "--d", "3", "--family", "xqj", "--j", "2", "--mode", "exhaustive"],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("covered = 7/7"));
    assert!(out.contains("status = universal"));
    let csv = fs::read_to_string(tmp.path().join("polyuniv-out/universality.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("ell,witness_t0,profile,scanned"));
    assert_eq!(csv.lines().count(), 8);
}

#[test]
fn exhaustive_gap_is_a_negative_certificate() {
    // Over F_3 alone X^5 + X misses some degree at d = 1.
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["universality", "--p", "3", "--d", "1", "--poly", "X^5+X", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("status = not_universal"));
}

#[test]
fn bad_input_exits_one_with_field_name() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["factor", "--p", "4", "--poly", "X"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--p"));
    let o = polyuniv(tmp.path(), &["family", "--p", "3", "--family", "xqj", "--j", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_dir_comes_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_polyuniv"))
        .current_dir(tmp.path())
        .env("POLYUNIV_OUT_DIR", "elsewhere")
        .args(["family", "--p", "5", "--family", "xq2", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(tmp.path().join("elsewhere/family.report.txt").exists());
}

const SWEEP: [&str; 16] = [
    "universality", "--p", "7", "--d", "3", "--family", "xqj", "--j", "2", "--mode", "random",
    "--budget", "4000", "--seed", "9", "--quiet",
];

fn read_outputs(dir: &Path) -> (Vec<u8>, Vec<u8>) {
    (
        fs::read(dir.join("universality.report.txt")).unwrap(),
        fs::read(dir.join("universality.csv")).unwrap(),
    )
}

#[test]
fn resumed_run_matches_uninterrupted_run() {
    let tmp = tempfile::tempdir().unwrap();
    let full = tmp.path().join("full");
    let o = polyuniv(tmp.path(), &[&SWEEP[..], &["--out-dir", full.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));

    let text = String::from_utf8(read_outputs(&full).0).unwrap();
    let scanned: u64 = text
        .lines()
        .find_map(|l| l.strip_prefix("scanned = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(scanned > 4);
    for stop in [1, scanned / 2, scanned - 1] {
        let stop = &stop.to_string();
        let part = tmp.path().join(format!("part{stop}"));
        let resume = tmp.path().join(format!("r{stop}.json"));
        let (part_s, resume_s) = (part.to_str().unwrap(), resume.to_str().unwrap());
        let extra = ["--out-dir", part_s, "--checkpoint", resume_s, "--stop-after", stop, "--checkpoint-every", "3"];
        let o = polyuniv(tmp.path(), &[&SWEEP[..], &extra[..]].concat());
        assert_eq!(o.status.code(), Some(0));
        assert!(!part.join("universality.report.txt").exists());

        let o = polyuniv(tmp.path(), &["resume", resume_s, "--workers", "3", "--quiet"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(read_outputs(&full), read_outputs(&part), "stopped after {stop}");
    }
}

#[test]
fn resume_rejects_altered_seed_and_skips_completed_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let resume = tmp.path().join("r.json");
    let resume_s = resume.to_str().unwrap();
    let extra = ["--out-dir", "out", "--checkpoint", resume_s, "--stop-after", "2", "--checkpoint-every", "1"];
    assert_eq!(polyuniv(tmp.path(), &[&SWEEP[..], &extra[..]].concat()).status.code(), Some(0));

    let o = polyuniv(tmp.path(), &["resume", resume_s, "--seed", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config hash mismatch"));

    assert_eq!(polyuniv(tmp.path(), &["resume", resume_s, "--seed", "9", "--quiet"]).status.code(), Some(0));
    let before = read_outputs(&tmp.path().join("out"));
    let saved = fs::read(&resume).unwrap();
    let o = polyuniv(tmp.path(), &["resume", resume_s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("already complete"));
    assert_eq!(fs::read(&resume).unwrap(), saved);
    assert_eq!(read_outputs(&tmp.path().join("out")), before);
}

#[test]
fn corrupt_resume_file_reports_location() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.json");
    fs::write(&path, "{\n  \"format\": 3\n}").unwrap();
    let o = polyuniv(tmp.path(), &["resume", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn reproduce_small_bound_witnesses_every_prime() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["reproduce-401", "--max-prime", "23"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all_universal = true"));
    let csv = fs::read_to_string(tmp.path().join("polyuniv-out/reproduce-401.csv")).unwrap();
    assert_eq!(csv.lines().count(), 9);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true,universal")), "{csv}");
}

#[test]
fn minimal_d_and_dlp_search_run() {
    let tmp = tempfile::tempdir().unwrap();
    let o = polyuniv(tmp.path(), &["minimal-d", "--p", "7", "--poly", "X^7+X^2", "--d-max", "3", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d_min = 2"));
    let o = polyuniv(tmp.path(), &["dlp-search", "--p", "3", "--d", "2", "--h1", "1;X+1", "--h2", "X^2;X^2+u"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("candidates = 4"));
}
