use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ssb_lab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssb-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SSB_LAB_OUT")
        .output()
        .expect("spawn ssb-lab")
}

fn manifest(dir: &Path, sub: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("manifest_{sub}.json"))).unwrap()).unwrap()
}

#[test]
fn manifests_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        assert!(ssb_lab(&["all", "--seed", "42"], dir.path()).status.success());
    }
    for entry in fs::read_dir(a.path()).unwrap() {
        let name = entry.unwrap().file_name();
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?} differs");
    }
}

#[test]
fn exit_status_matches_report_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["steiner", "scalar", "ode", "maxwell", "potential", "classify"] {
        let out = ssb_lab(&[sub], dir.path());
        let m = manifest(dir.path(), sub);
        let all_pass = m["reports"].as_array().unwrap().iter().all(|r| r["pass"] == true);
        assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }), "{sub}");
        assert!(all_pass, "{sub}");
    }
}

#[test]
fn failing_checks_exit_one_and_still_write_the_manifest() {
    // An 8^3 base grid is too coarse for the factor-4 order check.
    let dir = tempfile::tempdir().unwrap();
    let out = ssb_lab(&["maxwell", "--grid", "8"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let m = manifest(dir.path(), "maxwell");
    assert!(m["reports"].as_array().unwrap().iter().any(|r| r["pass"] == false));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ssb_lab(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(ssb_lab(&["potential", "-n", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(ssb_lab(&["potential", "--lambda", "-1"], dir.path()).status.code(), Some(2));
    assert_eq!(ssb_lab(&["potential", "-n", "3", "--mu", "2"], dir.path()).status.code(), Some(2));
    assert!(!dir.path().join("manifest_potential.json").exists());
}

#[test]
fn steiner_manifest_and_segments() {
    let dir = tempfile::tempdir().unwrap();
    let out = ssb_lab(&["steiner", "--square", "1.0"], dir.path());
    assert!(out.status.success());
    let m = manifest(dir.path(), "steiner");
    assert_eq!(m["schema_version"], 1);
    let best = m["results"]["steiner"]["best_length"].as_f64().unwrap();
    assert!((best - 2.7320508).abs() < 1e-7);
    assert_eq!(m["results"]["steiner"]["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(m["results"]["steiner"]["stabilizer_orders"], serde_json::json!([4, 4]));
    for name in ["steiner_solution_1.seg", "steiner_solution_2.seg", "steiner_guess_x.seg"] {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        for line in text.lines() {
            let fields: Vec<&str> = line.split(' ').collect();
            assert_eq!(fields.len(), 4, "{line}");
            for f in fields {
                let mantissa = f.trim_start_matches('-').split('e').next().unwrap();
                assert_eq!(mantissa.replace('.', "").len(), 17, "{f}");
                f.parse::<f64>().unwrap();
            }
        }
    }
}

#[test]
fn potential_gauge_shift_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = ssb_lab(&["potential", "-n", "2", "-q", "6.2831853", "--lambda", "2.7182818", "--json"], dir.path());
    assert!(out.status.success());
    let m: Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = &m["results"]["potential"];
    assert!((p["gauge_shift"].as_f64().unwrap() + 1.0).abs() < 1e-6);
    assert_eq!(p["mu"], 1.0);
    for key in ["n", "q", "lambda", "checks"] {
        assert!(p.get(key).is_some(), "{key}");
    }
    let csv = fs::read_to_string(dir.path().join("phi_vs_r_n2.csv")).unwrap();
    let zero_row = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .find(|row| row[0] == 1.0)
        .expect("row at r = mu");
    assert_eq!(zero_row[1], 0.0);
}

#[test]
fn maxwell_convergence_csv_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ssb_lab(&["maxwell"], dir.path()).status.success());
    let csv = fs::read_to_string(dir.path().join("maxwell_convergence.csv")).unwrap();
    let evo: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(evo.len(), 3);
    assert!(evo.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"n": 4, "q": 2.5, "lambda": 3.0}"#).unwrap();
    let out = ssb_lab(&["potential", "--config", cfg.to_str().unwrap(), "-n", "5"], dir.path());
    assert!(out.status.success());
    let m = manifest(dir.path(), "potential");
    assert_eq!(m["config"]["n"], 5);
    assert_eq!(m["config"]["q"], 2.5);
    assert_eq!(m["config"]["lambda"], 3.0);
}

#[test]
fn terminals_file_replaces_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let h = 3f64.sqrt() / 2.0;
    fs::write(&t, format!("[[0,0],[1,0],[0.5,{h}]]")).unwrap();
    let out = ssb_lab(&["steiner", "--terminals", t.to_str().unwrap()], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = manifest(dir.path(), "steiner");
    let best = m["results"]["steiner"]["best_length"].as_f64().unwrap();
    assert!((best - 3f64.sqrt()).abs() < 1e-9);
    assert_eq!(m["results"]["steiner"]["problem_group_order"], 6);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from_env");
    let out = Command::new(env!("CARGO_BIN_EXE_ssb-lab"))
        .arg("ode")
        .env("SSB_LAB_OUT", &target)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(target.join("manifest_ode.json").exists());
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = ssb_lab(&["ode"], &blocker.join("sub"));
    assert!(!out.status.success());
}
