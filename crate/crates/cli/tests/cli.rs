use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const PI: f64 = std::f64::consts::PI;

fn vacnoise(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vacnoise"))
        .args(args)
        .current_dir(dir)
        .env_remove("VACNOISE_OUTPUT")
        .env_remove("VACNOISE_THREADS")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn single_frequency_gw_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "gw.toml",
        "channels = \"gw-only\"\n[scales]\nplanck_length = 0.3\n[probe]\nv = 0.0\ntau = 1.5\n[grid]\nvalues = [2.0]\n",
    );
    let o = vacnoise(&["spectrum", "--config", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "omega,C_d33,C_d13,C_d23,C_d12,C_d12p,C_trace");
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    let (w, tau, lp2) = (2.0f64, 1.5f64, 0.09f64);
    let want = 32.0 / 15.0 * w.powi(3) * lp2 * (w * tau / 2.0).sin().powi(2);
    assert!((r[0][1] / want - 1.0).abs() < 5e-3, "{} vs {want}", r[0][1]);
    assert_eq!(r[0][6], 0.0);
}

#[test]
fn gravity_of_vacuum_trace() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "gov.toml",
        "channels = \"gravity-of-vacuum\"\n[content]\nneutrinos = 3\n[grid]\nmin = 0.5\nmax = 5.0\npoints = 4\n",
    );
    let o = vacnoise(&["spectrum", "--config", &cfg, "--threads", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    for r in rows(&stdout(&o)) {
        let w = r[0];
        let want = 8.0 * 7.0 / (105.0 * PI) * w.powi(5) * (w / 2.0).sin().powi(2);
        assert!((r[6] / want - 1.0).abs() < 1e-2, "omega {w}: {} vs {want}", r[6]);
    }
}

#[test]
fn csv_is_locale_independent_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = vacnoise(&["spectrum"], dir.path());
    let b = Command::new(env!("CARGO_BIN_EXE_vacnoise"))
        .arg("spectrum")
        .env("LC_ALL", "de_DE.UTF-8")
        .env("LANG", "de_DE.UTF-8")
        .env_remove("VACNOISE_OUTPUT")
        .env_remove("VACNOISE_THREADS")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18, "{field}");
        let x: f64 = field.parse().unwrap();
        assert_eq!(format!("{x:.16e}"), field);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "moving.toml", "[probe]\nv = 0.6\ntau = 0.7\n[grid]\npoints = 12\n");
    let one = vacnoise(&["spectrum", "--config", &cfg, "--threads", "1"], dir.path());
    let many = vacnoise(&["spectrum", "--config", &cfg, "--threads", "5"], dir.path());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn json_spectrum_has_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let o = vacnoise(&["spectrum", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let meta = &v["metadata"];
    assert_eq!(meta["channels"], "both");
    assert_eq!(meta["library"], "vacnoise");
    assert!(meta["version"].is_string());
    assert_eq!(meta["config"]["dimension"], 4);
    assert_eq!(v["columns"][6], "C_trace");
    assert_eq!(v["rows"].as_array().unwrap().len(), 31);
    let csv = rows(&stdout(&vacnoise(&["spectrum"], dir.path())));
    assert_eq!(v["rows"][3][1].as_f64().unwrap(), csv[3][1]);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(dir.path(), "empty.toml", "[grid]\nvalues = []\n");
    assert_eq!(vacnoise(&["spectrum", "--config", &empty], dir.path()).status.code(), Some(2));
    let bad = write_config(dir.path(), "bad.toml", "dimension = 4\n[probe\n");
    let o = vacnoise(&["spectrum", "--config", &bad], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let wrong_d = write_config(dir.path(), "d5.toml", "dimension = 5\n");
    assert_eq!(vacnoise(&["spectrum", "--config", &wrong_d], dir.path()).status.code(), Some(2));
    assert_eq!(vacnoise(&["spectrum", "--threads", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(vacnoise(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(vacnoise(&["validate", "--inject-fault", "nope"], dir.path()).status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let o = vacnoise(&["spectrum", "--output", target.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let o = vacnoise(&["spectrum", "--config", "no-such-file.toml"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn environment_overrides_output_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_vacnoise"))
        .arg("coefficients")
        .current_dir(dir.path())
        .env("VACNOISE_OUTPUT", "coeffs.csv")
        .env("VACNOISE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("coeffs.csv")).unwrap();
    assert!(text.starts_with("species,"));
    let o = Command::new(env!("CARGO_BIN_EXE_vacnoise"))
        .arg("coefficients")
        .current_dir(dir.path())
        .env("VACNOISE_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coefficient_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.toml", "[content]\nneutrinos = 0\n[[content.species]]\nkind = \"maxwell\"\n");
    let text = stdout(&vacnoise(&["coefficients", "--config", &cfg], dir.path()));
    let maxwell = text.lines().find(|l| l.starts_with("maxwell,")).unwrap();
    assert!(maxwell.contains(",1/(80π²),0,"), "{maxwell}");

    let cfg = write_config(dir.path(), "s2.toml", "dimension = 2\n[content]\nneutrinos = 0\n[[content.species]]\nkind = \"scalar\"\n");
    let o = vacnoise(&["coefficients", "--config", &cfg], dir.path());
    assert!(stdout(&o).lines().any(|l| l.starts_with("scalar,") && l.contains(",1/(24π),0,")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("anomaly"));

    let cfg = write_config(dir.path(), "s3.toml", "dimension = 3\n[content]\nneutrinos = 0\n[[content.species]]\nkind = \"scalar\"\n");
    let o = vacnoise(&["coefficients", "--config", &cfg, "--format", "json"], dir.path());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][0];
    // d = 3: ζ₀ = (4π)^{-3/2} Γ(5/2)/Γ(5) = 1/(256π)
    assert_eq!(row["zeta0_exact"], "1/(256π)");
    assert!((row["zeta0"].as_f64().unwrap() - 1.0 / (256.0 * PI)).abs() < 1e-18);
}

#[test]
fn eddington_values_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let gamma_for = |x: &str| {
        let cfg = write_config(dir.path(), "e.toml", &format!("[modified_gravity]\ndelta_gamma1 = {x}\n"));
        let o = vacnoise(&["eddington", "--config", &cfg, "--format", "json"], dir.path());
        (o.status.code(), serde_json::from_slice::<Value>(&o.stdout).ok())
    };
    let (code, v) = gamma_for("0.0");
    assert_eq!(code, Some(0));
    assert_eq!(v.unwrap()["gamma"].as_f64(), Some(1.0));
    let (_, v) = gamma_for("0.3");
    let v = v.unwrap();
    assert!((v["gamma"].as_f64().unwrap() - 1.1 / 0.9).abs() < 1e-15);
    assert!((v["hii"].as_f64().unwrap() / v["h00"].as_f64().unwrap() - 1.1 / 0.9).abs() < 1e-14);
    assert_eq!(gamma_for("3.0").0, Some(4));
    assert_eq!(vacnoise(&["eddington"], dir.path()).status.code(), Some(2));
    let cfg = write_config(dir.path(), "e5.toml", "dimension = 5\n[modified_gravity]\ndelta_gamma1 = 0.1\n");
    assert_eq!(vacnoise(&["eddington", "--config", &cfg], dir.path()).status.code(), Some(2));
}

#[test]
fn validate_is_deterministic_and_catches_faults() {
    let dir = tempfile::tempdir().unwrap();
    let a = vacnoise(&["validate", "--seed", "42"], dir.path());
    let b = vacnoise(&["validate", "--seed", "42"], dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 42);
    assert_eq!(report["failed"], 0);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["tolerance"].is_number() && c["deviation"].is_number() && c["name"].is_string());
    }

    let default = vacnoise(&["validate"], dir.path());
    assert!(String::from_utf8_lossy(&default.stderr).contains("seed: 42"));
    assert_eq!(default.stdout, a.stdout);

    let f = vacnoise(&["validate", "--inject-fault", "zeta_exact_d4"], dir.path());
    assert_eq!(f.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&f.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["zeta_exact_d4"]);
    assert!(String::from_utf8_lossy(&f.stderr).contains("FAIL zeta_exact_d4"));
}
