use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcurve")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json")).display().to_string()
}

fn write_spec(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.display().to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn report_for_xzzx_fixture() {
    let out = qcurve(&["report", "--input", &fixture("xz_zx_product")]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["kappa_sq_moments", "kappa_sq_geometric", "tau_sq_moments", "tau_sq_geometric"] {
        assert!((v[key].as_f64().unwrap() - 1.0).abs() < 1e-12, "{key}");
    }
    assert_eq!(v["dimension"], 4);
    assert!(v.get("oracle").is_none());
}

#[test]
fn oracle_flag_and_gamma() {
    let out = qcurve(&["report", "--input", &fixture("sigma_z_tilted"), "--oracle", "--gamma", "1.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["kappa_sq_moments"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!((v["oracle"]["kappa_lt_normalized"].as_f64().unwrap() - 4.0).abs() < 0.08);
    assert_eq!(qcurve(&["report", "--input", &fixture("sigma_z_tilted"), "--gamma", "-1"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let eigen = write_spec(dir.path(), "e.json", r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "0"}}"#);
    let out = qcurve(&["report", "--input", &eigen]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stationary state"));

    let both = write_spec(
        dir.path(),
        "b.json",
        r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}], "dense": [[1,0]]}, "state": {"named": "0"}}"#,
    );
    let out = qcurve(&["report", "--input", &both]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/hamiltonian"));

    let dims = write_spec(dir.path(), "d.json", r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "ZZ"}]}, "state": {"amplitudes": [[1,0],[0,0]]}}"#);
    let out = qcurve(&["report", "--input", &dims]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/state"));

    let equator = write_spec(dir.path(), "q.json", r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "bloch:π/2,0"}}"#);
    let out = qcurve(&["report", "--input", &equator]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["kappa_sq_moments"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn trajectory_equator_and_xzzx() {
    let dir = tempfile::tempdir().unwrap();
    let equator = write_spec(dir.path(), "q.json", r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "bloch:pi/2,0"}}"#);
    let csv = dir.path().join("q.csv");
    let out = qcurve(&["trajectory", "--input", &equator, "--t-max", "3", "--steps", "50", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let (h, rows) = read_csv(&csv);
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[0][column(&h, "fidelity_to_initial")], 1.0);
    for r in &rows {
        let s = r[column(&h, "s")];
        assert!(r[column(&h, "az")].abs() <= 1e-10);
        assert!((r[column(&h, "ax")] - (2.0 * s).cos()).abs() <= 1e-10);
        assert!((r[column(&h, "ay")] - (2.0 * s).sin()).abs() <= 1e-10);
    }

    let csv = dir.path().join("a.csv");
    let out = qcurve(&["trajectory", "--input", &fixture("xz_zx_product"), "--t-max", "2", "--steps", "21", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let (h, rows) = read_csv(&csv);
    assert!(!h.contains(&"ax".to_string()));
    for r in &rows {
        let t = r[column(&h, "t")];
        let expected = [
            (t.cos().powi(2), 0.0),
            (0.0, -0.5 * (2.0 * t).sin()),
            (0.0, -0.5 * (2.0 * t).sin()),
            (t.sin().powi(2), 0.0),
        ];
        for (k, (re, im)) in expected.iter().enumerate() {
            assert!((r[column(&h, &format!("re_a{k}"))] - re).abs() <= 1e-10);
            assert!((r[column(&h, &format!("im_a{k}"))] - im).abs() <= 1e-10);
        }
        assert!((r[column(&h, "kappa_sq")] - 1.0).abs() < 1e-12);
    }

    let bad = qcurve(&["trajectory", "--input", &equator, "--t-max", "1", "--steps", "1", "--output", csv.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    let unwritable = qcurve(&["trajectory", "--input", &equator, "--t-max", "1", "--steps", "3", "--output", "/nonexistent/dir/x.csv"]);
    assert_eq!(unwritable.status.code(), Some(1));
}

#[test]
fn xi_sweep_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "x.json", r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "xi:0.5"}}"#);
    let csv = dir.path().join("x.csv");
    let out = qcurve(&["sweep", "--input", &spec, "--param", "xi", "--from", "0.01", "--to", "0.99", "--points", "99", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let (h, rows) = read_csv(&csv);
    assert_eq!(h, ["param", "kappa_sq", "tau_sq", "eta", "alpha4", "alpha3_sq"]);
    for r in &rows {
        let x2 = r[0] * r[0];
        let kappa = (1.0 - 2.0 * x2).powi(2) / (x2 * (1.0 - x2));
        let alpha4 = (1.0 - 3.0 * x2 + 3.0 * x2 * x2) / (x2 * (1.0 - x2));
        assert!((r[1] - kappa).abs() <= 1e-9 * kappa.max(1.0));
        assert!((r[4] - alpha4).abs() <= 1e-9 * alpha4);
    }
    let unknown = qcurve(&["sweep", "--input", &spec, "--param", "J", "--from", "0", "--to", "1", "--points", "3", "--output", csv.to_str().unwrap()]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("s{k}.csv"))).collect();
    for p in &paths {
        let out = qcurve(&["sweep", "--input", &fixture("ghz_heisenberg"), "--param", "h", "--from", "-2", "--to", "2", "--points", "64", "--output", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    let a = qcurve(&["report", "--input", &fixture("w_heisenberg"), "--oracle"]);
    let b = qcurve(&["report", "--input", &fixture("w_heisenberg"), "--oracle"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validate_passes_and_detects_edited_fixture() {
    let out = qcurve(&["validate"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let dir = tempfile::tempdir().unwrap();
    assert!(qcurve(&["validate", "--export-fixtures", dir.path().to_str().unwrap()]).status.success());
    assert!(qcurve(&["validate", "--fixtures", dir.path().to_str().unwrap()]).status.success());

    let path = dir.path().join("sigma_z_equator.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let edited = text.replacen("0.7071067811865476", "0.7081067811865476", 1);
    assert_ne!(text, edited);
    std::fs::write(&path, edited).unwrap();
    let out = qcurve(&["validate", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout.lines().find(|l| l.contains("sigma_z_equator")).unwrap();
    assert!(line.starts_with("FAIL") && line.contains("residual"), "{line}");
}
