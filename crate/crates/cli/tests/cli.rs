use std::process::{Command, Output};

use monodromy_cli::dump::ModelDump;
use monodromy_cli::{Report, SweepSummary};
use monodromy_core::build_parabolic;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .env_remove("MONODROMY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Report {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn model_ranks() {
    assert_eq!(report(&["model", "parabolic", "-p", "2", "-q", "3"]).rank, 6);
    assert_eq!(report(&["model", "lotka_volterra", "-p", "1"]).rank, 4);
    assert_eq!(report(&["model", "toy", "-p", "1", "-q", "1"]).rank, 2);
}

#[test]
fn minimal_examples() {
    let r = report(&["minimal", "parabolic", "-p", "2", "-q", "3"]);
    assert_eq!(r.closure_dim, Some(5));
    assert_eq!(r.closure_certified, Some(true));
    assert_eq!((r.annihilator_order_low, r.annihilator_order_high), (Some(4), Some(5)));
    assert_eq!((r.exponent_bound, r.cap), (Some(18), Some(10_000)));

    let r = report(&["minimal", "lotka_volterra", "-p", "3"]);
    assert_eq!((r.closure_dim, r.orbit_size), (Some(2), Some(3)));
    assert_eq!(r.annihilator_order_high, Some(2));

    let r = report(&["minimal", "parabolic", "-p", "3", "-q", "5"]);
    assert_eq!(r.zero_kernel_dim, Some(0));
    assert_eq!((r.annihilator_order_low, r.annihilator_order_high), (Some(8), Some(8)));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["minimal", "toy", "-p", "1", "-q", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["model", "parabolic", "-p", "2", "-q", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["model", "parabolic", "-p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["model", "circle", "-p", "2", "-q", "3"]).status.code(), Some(2));
    assert_eq!(
        run(&["minimal", "parabolic", "-p", "2", "-q", "3", "--exponent-bound", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["annihilate", "--solutions", "t;t"]).status.code(), Some(2));
    let out = run(&["annihilate", "--solutions", "log(t;1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 5"));
}

#[test]
fn a_failed_check_exits_with_one() {
    // A cap of 1 still certifies an orbit of size 1 but not an orbit of size 3.
    let out = run(&["minimal", "lotka_volterra", "-p", "3", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!r.all_pass);
    let failed = r.checks.iter().find(|c| c.name == "closure_certified").unwrap();
    assert!(!failed.pass && failed.witness.is_some());
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        &["minimal", "parabolic", "-p", "3", "-q", "4"][..],
        &["model", "lotka_volterra", "-p", "4", "--dump"][..],
        &["sweep", "--family", "parabolic", "--max-pq", "3", "--jobs", "3"][..],
        &["annihilate", "--solutions", "log(t-1);1"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn sweep_is_ordered_and_aggregated() {
    let out = run(&["sweep", "--family", "parabolic", "--max-pq", "4", "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let reports: Vec<Report> = lines[..lines.len() - 1]
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    let summary: SweepSummary = serde_json::from_value(summary["summary"].clone()).unwrap();
    let pairs: Vec<(u32, u32)> = reports.iter().map(|r| (r.p, r.q)).collect();
    let mut sorted = pairs.clone();
    sorted.sort();
    assert_eq!(pairs, sorted);
    assert_eq!(summary.pairs, reports.len());
    assert_eq!(summary.all_pass, reports.iter().all(|r| r.all_pass));
    for r in &reports {
        assert_eq!(r.closure_dim, Some((r.p + r.q) as usize));
    }
    let single = run(&["sweep", "--family", "parabolic", "--max-pq", "4", "--jobs", "1"]);
    assert_eq!(single.stdout, text.as_bytes());
}

#[test]
fn dump_reloads_to_the_same_model() {
    let r = report(&["model", "parabolic", "-p", "3", "-q", "2", "--dump"]);
    let dump: ModelDump = r.model.unwrap();
    assert_eq!(dump.to_model().unwrap(), build_parabolic(3, 2).unwrap());
}

#[test]
fn cache_directory_is_used_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let run_cached = || {
        Command::new(env!("CARGO_BIN_EXE_monodromy"))
            .args(["minimal", "parabolic", "-p", "2", "-q", "5"])
            .env("MONODROMY_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run_cached();
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run_cached();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        first.stdout,
        run(&["minimal", "parabolic", "-p", "2", "-q", "5"]).stdout
    );
    let path = entries[0].as_ref().unwrap().path();
    std::fs::write(&path, "not json").unwrap();
    let third = run_cached();
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(first.stdout, third.stdout);
}
