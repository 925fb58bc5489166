//! End-to-end tests of the srglab binary: the exit-code contract, file
//! outputs, and byte-reproducibility under a fixed seed.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_srglab"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn gen_writes_edge_list_and_prints_params() {
    let out = tmp("paley13.txt");
    let res = run(&["gen", "paley:13", "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("SR(13,6,2,3)"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("13 39\n"), "13 vertices, k*n/2 = 39 edges");

    let res = run(&["gen", "~triangular:5", "--out", tmp("petersen.txt").to_str().unwrap()]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("SR(10,3,0,1)"));
}

#[test]
fn gen_rejects_bad_spec() {
    let res = run(&["gen", "paley:12", "--out", tmp("nope.txt").to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    // SRG file: exit 0
    let petersen = tmp("verify_petersen.txt");
    run(&["gen", "~triangular:5", "--out", petersen.to_str().unwrap()]);
    let res = run(&["verify", petersen.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    assert!(stdout(&res).contains("SR(10,3,0,1)"));

    // non-regular graph: exit 1 with a witness
    let path_graph = tmp("path3.txt");
    fs::write(&path_graph, "3 2\n0 1\n1 2\n").unwrap();
    let res = run(&["verify", path_graph.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(stdout(&res).contains("NotRegular vertex=0"));

    // truncated file: exit 2
    let truncated = tmp("truncated.txt");
    fs::write(&truncated, "5 4\n0 1\n").unwrap();
    let res = run(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn sweep_csv_and_empty_size_list() {
    let out = tmp("sweep_empty.csv");
    let res = run(&["sweep", "paley", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "family,param,n,k,lambda,mu,k_over_n,dev_lambda,dev_mu,dev_lambda_over_n,dev_mu_over_n\n"
    );

    let out = tmp("sweep_tri.csv");
    let res = run(&["sweep", "triangular", "--sizes", "10,20", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("triangular,10,45,16,8,4,"));

    let res = run(&["sweep", "paley", "--sizes", "12", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn sweep_upto_uses_valid_sizes() {
    let out = tmp("sweep_upto.csv");
    let res = run(&["sweep", "paley", "--upto", "41", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    // primes 5, 13, 17, 29, 37, 41 plus the header
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn lemma_reports_and_exit_codes() {
    let out = tmp("xsec2.txt");
    let res = run(&[
        "lemma", "xsec2", "random:120x120:0.5", "--eps", "0.15", "--r", "2", "--seed", "7",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let doc = fs::read_to_string(&out).unwrap();
    assert!(doc.contains("seed: 7"));
    assert!(doc.contains("lemma: xsec2(i)"));
    assert!(doc.contains("lemma: xsec2(ii)"));
    assert!(!doc.contains("verdict: violated"));

    let res = run(&["lemma", "dle", "random-multi:t=80,p=5", "--eps", "0.1", "--seed", "7"]);
    assert_eq!(res.status.code(), Some(0));
    let doc = stdout(&res);
    assert!(doc.contains("lemma: dle"));
    assert!(doc.contains("verdict: holds"));
    assert!(doc.contains("averaged-bound:"));

    let res = run(&["lemma", "nonsense", "random:10x10:0.5"]);
    assert_eq!(res.status.code(), Some(2));

    let res = run(&["lemma", "xple2", "random:10x10:0.5"]);
    assert_eq!(res.status.code(), Some(2), "xple2 needs a tripartite instance");
}

#[test]
fn regularity_partition_and_report() {
    let part = tmp("part_cliques.txt");
    let report = tmp("report_cliques.txt");
    let res = run(&[
        "regularity", "cliques:4x50", "--l", "4", "--eps", "0.09", "--seed", "0",
        "--out", part.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let part_text = fs::read_to_string(&part).unwrap();
    assert_eq!(part_text.lines().count(), 5, "V0 plus four classes");
    assert!(part_text.starts_with("V0:"));
    let report_text = fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("condition-i: holds"));
    assert!(report_text.contains("condition-ii: holds"));
    assert!(report_text.contains("dichotomy-middle: 0"));
    assert!(report_text.contains("seed: 0"));

    // too many classes for the order
    let res = run(&[
        "regularity", "cliques:2x2", "--l", "3", "--eps", "0.1",
        "--out", tmp("part_bad.txt").to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = tmp("repro_a.txt");
    let b = tmp("repro_b.txt");
    for out in [&a, &b] {
        let res = run(&[
            "lemma", "lebs", "random-multi:t=40,p=3", "--eps", "0.1", "--seed", "11",
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(res.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let pa = tmp("repro_part_a.txt");
    let pb = tmp("repro_part_b.txt");
    for out in [&pa, &pb] {
        let res = run(&[
            "regularity", "cliques:3x20", "--l", "3", "--eps", "0.09", "--seed", "5",
            "--out", out.to_str().unwrap(), "--report", tmp("repro_rep.txt").to_str().unwrap(),
        ]);
        assert!(res.status.code().is_some());
    }
    assert_eq!(fs::read(&pa).unwrap(), fs::read(&pb).unwrap());

    let sa = tmp("repro_sweep_a.csv");
    let sb = tmp("repro_sweep_b.csv");
    for out in [&sa, &sb] {
        run(&["sweep", "lattice", "--sizes", "2,3,4", "--out", out.to_str().unwrap()]);
    }
    assert_eq!(fs::read(&sa).unwrap(), fs::read(&sb).unwrap());
}

#[test]
fn feasibility_reports() {
    let res = run(&["feasibility", "10", "3", "0", "1"]);
    assert_eq!(res.status.code(), Some(0));
    let doc = stdout(&res);
    assert!(doc.contains("eigenvalues: 1 -2"));
    assert!(doc.contains("multiplicities: 5 4"));
    assert!(doc.contains("feasible: true"));

    let res = run(&["feasibility", "10", "3", "1", "1"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(stdout(&res).contains("feasible: false"));

    // conference case
    let res = run(&["feasibility", "5", "2", "0", "1"]);
    assert_eq!(res.status.code(), Some(0));
    assert!(stdout(&res).contains("conference: true"));
}
