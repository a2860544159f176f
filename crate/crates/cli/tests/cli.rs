use std::path::PathBuf;
use std::process::{Command, Output};

fn ssle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ssle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sweep_writes_csv() {
    let out = scratch("sweep.csv");
    let o = ssle(&[
        "sweep", "--n", "8,16", "--trials", "3", "--seed", "5", "--instrument", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "protocol,n,psi,kappa_max,seed,steps,converged,final_leader_count,violations"
    );
    assert_eq!(lines.len(), 7);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true,1,0")));
}

#[test]
fn sweep_to_stdout_is_reproducible() {
    let args = ["sweep", "--n", "8", "--trials", "4", "--seed", "11"];
    let a = ssle(&args);
    let b = ssle(&[&args[..], &["--workers", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn truncated_cutoff_fails_the_sweep() {
    let o = ssle(&["sweep", "--n", "32", "--trials", "2", "--multiplier", "0.001"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",false,"));
}

#[test]
fn lottery_has_no_sweep() {
    let o = ssle(&["sweep", "--protocol", "lottery", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn por_sweep() {
    let o = ssle(&["sweep", "--protocol", "por", "--n", "8", "--trials", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("POR,8,0,0,")));
}

#[test]
fn suites_pass() {
    for args in [
        &["closure", "--n", "8", "--trials", "3", "--steps", "5000"][..],
        &["closure", "--protocol", "por", "--n", "8", "--trials", "3", "--steps", "5000"],
        &["eliminate", "--n", "16", "--leaders", "2,4", "--trials", "5"],
        &["lottery", "--k", "3", "--trials", "500"],
    ] {
        let o = ssle(args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn orient_csv() {
    let out = scratch("orient.csv");
    let o = ssle(&[
        "orient", "--n", "8", "--seeds", "4", "--settle", "1000", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "seed,steps_to_oriented,max_segment_count_violation"
    );
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn dump_check_load() {
    let safe = scratch("safe.json");
    let o = ssle(&["dump", "--n", "16", "--start", "safe", "--seed", "3", "--out", safe.to_str().unwrap()]);
    assert!(o.status.success());
    let o = ssle(&["check", safe.to_str().unwrap(), "--require", "s-pl,perfect"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("in_S_PL=true"));

    let moved = scratch("moved.json");
    let o = ssle(&[
        "load", safe.to_str().unwrap(), "--steps", "2000", "--out", moved.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = ssle(&["check", moved.to_str().unwrap(), "--require", "s-pl"]);
    assert!(o.status.success());

    let random = scratch("random.json");
    ssle(&["dump", "--n", "16", "--seed", "1", "--out", random.to_str().unwrap()]);
    let o = ssle(&["check", random.to_str().unwrap(), "--require", "s-pl"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ssle(&["load", random.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=16 psi=4 kappa_max=128"));
}

#[test]
fn dump_is_lossless() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    ssle(&["dump", "--n", "20", "--seed", "9", "--out", a.to_str().unwrap()]);
    let o = ssle(&["load", a.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn truncated_snapshot_is_an_error() {
    let good = scratch("good.json");
    ssle(&["dump", "--n", "8", "--out", good.to_str().unwrap()]);
    let text = std::fs::read_to_string(&good).unwrap();
    let bad = scratch("bad.json");
    std::fs::write(&bad, &text[..text.len() / 3]).unwrap();
    let o = ssle(&["load", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}
