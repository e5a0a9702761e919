use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIG1: &str = "1,2\t5,6\n7\t1,3\n6,7\t4\n";

fn hyperrec(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperrec")).args(args).current_dir(cwd).env_remove("HYPERREC_DATA_DIR").output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn setup(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in files {
        fs::write(dir.path().join(name), body).unwrap();
    }
    dir
}

#[test]
fn measure_writes_per_arc_tables_and_summary() {
    let dir = setup(&[("g.tsv", FIG1)]);
    let o = hyperrec(&["measure", "-i", "g.tsv", "--alpha", "1e-4", "1", "-o", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    let csv = fs::read_to_string(out.join("arcs_alpha_1.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "arc_id,r,omega,psi,searched,reciprocal_set,error");
    assert_eq!(csv.lines().count(), 4);
    let s = json(&out.join("summary.json"));
    assert_eq!((s["nodes"].as_u64(), s["arcs"].as_u64()), (Some(7), Some(3)));
    assert_eq!(s["results"].as_array().unwrap().len(), 2);
    assert_eq!(json(&out.join("run_config.json"))["command"], "measure");
}

#[test]
fn oracle_check_agrees_with_brute_force() {
    let dir = setup(&[("g.tsv", "0,1\t2,3\n2\t0\n3\t1\n2,3\t0,1\n1\t2\n")]);
    let o = hyperrec(&["measure", "-i", "g.tsv", "--alpha", "0.5", "1", "--oracle-check", "--max-arcs", "10", "-o", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let s = json(&dir.path().join("out/summary.json"));
    assert_eq!(s["oracle"]["comparisons"], 10);
    assert_eq!(s["oracle"]["mismatches"], 0);
}

#[test]
fn missing_input_exits_with_input_code() {
    let dir = setup(&[]);
    let o = hyperrec(&["measure", "-i", "absent.tsv", "-o", "out"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("error:") && err.contains("absent.tsv"), "{err}");
    // the resolved config goes out before anything can fail
    assert!(dir.path().join("out/run_config.json").exists());
}

#[test]
fn overlapping_arcs_are_rejected_unless_repaired() {
    let dir = setup(&[("g.tsv", "1\t2\n1,2\t2,3\n")]);
    let o = hyperrec(&["measure", "-i", "g.tsv", "-o", "out"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
    let o = hyperrec(&["measure", "-i", "g.tsv", "--repair-overlaps", "-o", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn bad_parameters_exit_with_parameter_code() {
    let dir = setup(&[("g.tsv", FIG1)]);
    assert_eq!(hyperrec(&["measure", "-i", "g.tsv", "--alpha=0"], dir.path()).status.code(), Some(3));
    assert_eq!(hyperrec(&["measure", "-i", "g.tsv", "--max-psi", "99"], dir.path()).status.code(), Some(3));
    assert_eq!(hyperrec(&["measure", "--bogus"], dir.path()).status.code(), Some(3));
    let o = hyperrec(&["generate", "--model", "redi", "--ref", "g.tsv", "--beta1", "1.5"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn search_budget_is_a_parameter_error_unless_lenient() {
    let dir = setup(&[("g.tsv", "0,1\t2,3\n2\t0\n3\t1\n")]);
    let o = hyperrec(&["measure", "-i", "g.tsv", "--max-psi", "1", "-o", "out"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap of 1"));
    let o = hyperrec(&["measure", "-i", "g.tsv", "--max-psi", "1", "--lenient", "-o", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&dir.path().join("out/summary.json"))["failed_arcs"], 1);
    let csv = fs::read_to_string(dir.path().join("out/arcs_alpha_1.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("0,,,,,,"));
}

#[test]
fn group_search_is_selectable() {
    let dir = setup(&[("g.tsv", FIG1)]);
    let o = hyperrec(&["measure", "-i", "g.tsv", "--search", "groups", "-o", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&dir.path().join("out/run_config.json"))["args"]["search"], "groups");
}

#[test]
fn thread_count_does_not_change_outputs() {
    let dir = setup(&[("g.tsv", "0,1\t2,3\n2\t0\n3\t1\n2,3\t0,1\n1\t2\n4\t0,1\n0\t4\n")]);
    for (threads, out) in [("1", "a"), ("3", "b")] {
        let o = hyperrec(&["--threads", threads, "measure", "-i", "g.tsv", "-o", out], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["arcs_alpha_1.csv", "summary.json"] {
        assert_eq!(fs::read(dir.path().join("a").join(f)).unwrap(), fs::read(dir.path().join("b").join(f)).unwrap());
    }
}

#[test]
fn data_dir_variable_resolves_relative_inputs() {
    let data = setup(&[("g.tsv", FIG1)]);
    let work = setup(&[]);
    let o = Command::new(env!("CARGO_BIN_EXE_hyperrec"))
        .args(["measure", "-i", "g.tsv", "-o", "out"])
        .current_dir(work.path())
        .env("HYPERREC_DATA_DIR", data.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn null_generation_writes_one_file_per_seed_and_stats() {
    let dir = setup(&[("g.tsv", FIG1)]);
    let o = hyperrec(&["generate", "--model", "null", "--ref", "g.tsv", "--seeds", "4", "-o", "nulls"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let stats = json(&dir.path().join("nulls/stats.json"));
    assert_eq!(stats["files"].as_array().unwrap().len(), 4);
    assert!(stats["r_g_mean"].is_number() && stats["r_g_sd"].is_number());
    for seed in 0..4 {
        let text = fs::read_to_string(dir.path().join(format!("nulls/null_seed{seed}.tsv"))).unwrap();
        assert_eq!(text.lines().count(), 3);
    }
}

#[test]
fn generation_is_reproducible_and_zero_betas_equal_the_baseline() {
    let reference: String = (0..40).map(|i| format!("{},{}\t{}\n", i % 13, (i * 7 + 1) % 13 + 13, (i * 3) % 11 + 30)).collect();
    let dir = setup(&[("ref.tsv", &reference)]);
    let run = |args: &[&str]| {
        let o = hyperrec(args, dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
    };
    let common = ["--ref", "ref.tsv", "--seed", "7", "--seeds", "2", "--skip-measure"];
    run(&[&["generate", "--model", "redi", "--beta1", "0.4", "--beta2", "0.3", "-o", "a"][..], &common].concat());
    run(&[&["generate", "--model", "redi", "--beta1", "0.4", "--beta2", "0.3", "-o", "b"][..], &common].concat());
    run(&[&["generate", "--model", "redi", "-o", "c"][..], &common].concat());
    run(&[&["generate", "--model", "baseline", "-o", "d"][..], &common].concat());
    let read = |d: &str, f: &str| fs::read(dir.path().join(d).join(f)).unwrap();
    for seed in [7, 8] {
        assert_eq!(read("a", &format!("redi_seed{seed}.tsv")), read("b", &format!("redi_seed{seed}.tsv")));
        assert_eq!(read("c", &format!("redi_seed{seed}.tsv")), read("d", &format!("baseline_seed{seed}.tsv")));
    }
}

#[test]
fn analyze_produces_tables_and_null_comparison() {
    let dir = setup(&[("g.tsv", "0,1\t2,3\n2\t0\n3\t1\n2,3\t0,1\n1\t2\n4\t0,1\n0\t4\n5\t6\n")]);
    let o = hyperrec(&["analyze", "-i", "g.tsv", "--against", "null:mean", "--null-seeds", "5", "-o", "an"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("an");
    let a = json(&out.join("analysis.json"));
    assert_eq!(a["alpha_table"].as_array().unwrap().len(), 3);
    assert_eq!(a["robustness"].as_array().unwrap().len(), 3);
    assert_eq!(a["comparison"]["samples"], 5);
    assert!(a["comparison"]["ks_d"].is_number());
    assert!(out.join("alpha_table.csv").exists() && out.join("node_curve.csv").exists());
}

#[test]
fn analyze_against_a_file() {
    let dir = setup(&[("g.tsv", FIG1), ("h.tsv", "1\t2\n2\t1\n")]);
    let o = hyperrec(&["analyze", "-i", "g.tsv", "--against", "h.tsv", "-o", "an"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let a = json(&dir.path().join("an/analysis.json"));
    assert_eq!(a["comparison"]["against"], "h.tsv");
    assert_eq!(a["comparison"]["other_r_g_mean"], 1.0);
}

#[test]
fn analyze_single_arc_degenerates_gracefully() {
    let dir = setup(&[("g.tsv", "a\tb\n")]);
    let o = hyperrec(&["analyze", "-i", "g.tsv", "-o", "an"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let a = json(&dir.path().join("an/analysis.json"));
    assert_eq!(a["r_g"], 0.0);
    assert!(a["robustness"][0]["pearson"].is_null());
    assert!(a["degrees"]["nonzero"]["head_out"].is_null());
}

#[test]
fn compare_measures_writes_the_matrix() {
    let dir = setup(&[]);
    let o = hyperrec(&["compare-measures", "--trials", "30", "-o", "cmp"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("cmp/matrix.csv")).unwrap();
    // 6 arc-level measures x 5 axioms + 4 hypergraph-level measures x 3 axioms
    assert_eq!(csv.lines().count(), 1 + 30 + 12);
    assert!(csv.lines().any(|l| l.starts_with("1.0,HyperRec,") && l.contains(",true,")));
}
