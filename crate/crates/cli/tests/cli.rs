use std::path::Path;
use std::process::{Command, Output};

use fueter_core::io::{GridFile, GridValue};
use fueter_core::oracles::{example1_oracle, Example1Field};
use fueter_core::verify::polynomial_fit_residual;
use num_complex::Complex64;
use serde_json::Value;

fn fueter(args: &[&str]) -> Output {
    fueter_env(args, &[])
}

fn fueter_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fueter"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn invert_example1_matches_up_to_gauge() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inv.json");
    let o = fueter(&["invert", "--field", "example1", "--m", "5", "--k", "0", "--rect", "0,1,0.5,1.5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = read_json(&out);
    let grid: GridFile = serde_json::from_value(doc["grid"].clone()).unwrap();
    let samples: Vec<_> = grid
        .points
        .iter()
        .map(|p| {
            let GridValue::Pair([u, v]) = p.value else { panic!("expected (u, v) pairs") };
            let eu = example1_oracle(Example1Field::U, p.x0, p.r, 0.5).unwrap();
            let ev = example1_oracle(Example1Field::V, p.x0, p.r, 0.5).unwrap();
            (Complex64::new(p.x0, p.r), Complex64::new(u - eu, v - ev))
        })
        .collect();
    assert!(polynomial_fit_residual(&samples, 3).unwrap().residual <= 1e-6);
    assert_eq!(doc["order"], 2);
    assert_eq!(doc["trajectories"]["alpha"].as_array().unwrap().len(), 2);
}

#[test]
fn kernel_report_for_three_dimensions() {
    let o = fueter(&["kernel", "--m", "3", "--k", "0", "--nmax", "3"]);
    assert!(o.status.success());
    let reports: Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = reports.as_array().unwrap();
    assert_eq!(r.len(), 4);
    assert!(r[0]["max"].as_f64().unwrap() <= 1e-9);
    assert!(r[1]["max"].as_f64().unwrap() <= 1e-9);
    assert!((r[2]["at_reference"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!(r[3]["at_reference"].as_f64().unwrap() > 0.1);
}

#[test]
fn forward_of_identity_is_zero() {
    let o = fueter(&["forward", "--h", "z^1", "--m", "3", "--k", "0"]);
    assert!(o.status.success());
    let grid: GridFile = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(grid.points.len(), 100);
    for p in grid.points {
        let GridValue::Multivector(pairs) = p.value else { panic!() };
        assert!(pairs.iter().all(|(_, c)| c.abs() <= 1e-12));
    }
}

#[test]
fn csv_and_json_outputs_agree_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f.json");
    let csv = dir.path().join("f.csv");
    let args = ["forward", "--h", "arctan", "--m", "3", "--k", "1", "--grid", "4,5", "--rect", "0.2,1.1,0.3,0.9"];
    let run = |path: &Path, fmt: &str| {
        let mut a = args.to_vec();
        a.extend(["--format", fmt, "--out", path.to_str().unwrap()]);
        assert!(fueter(&a).status.success());
    };
    run(&json, "json");
    run(&csv, "csv");
    let from_json = GridFile::read_json(std::fs::File::open(&json).unwrap()).unwrap();
    let from_csv = GridFile::read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(from_json.meta, from_csv.meta);
    for (a, b) in from_json.points.iter().zip(&from_csv.points) {
        let (GridValue::Multivector(pa), GridValue::Multivector(pb)) = (&a.value, &b.value) else { panic!() };
        let va = fueter_core::Multivector::from_pairs(3, pa).unwrap();
        let vb = fueter_core::Multivector::from_pairs(3, pb).unwrap();
        assert_eq!((a.x0, a.r, va), (b.x0, b.r, vb));
    }
}

#[test]
fn invert_csv_writes_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("uv.csv");
    let o = fueter(&["invert", "--field", "cubic", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let grid = GridFile::read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(grid.points.len(), 100);
    let traj = std::fs::read_to_string(dir.path().join("uv.trajectories.csv")).unwrap();
    assert!(traj.starts_with("x0,alpha0,beta0\n"));
    assert_eq!(traj.lines().count(), 2050);
}

#[test]
fn tabulated_field_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.json");
    let mut points = Vec::new();
    for i in 0..21 {
        for j in 0..21 {
            let (x0, r) = (i as f64 / 20.0, 0.5 + j as f64 / 20.0);
            points.push(serde_json::json!({"x0": x0, "r": r, "value": [-12.0 * x0, -4.0 * r]}));
        }
    }
    let doc = serde_json::json!({"meta": {"m": 3, "k": 0, "rect": [0.0, 1.0, 0.5, 1.5], "nx0": 21, "nr": 21}, "points": points});
    std::fs::write(&table, doc.to_string()).unwrap();
    let o = fueter(&["invert", "--field", table.to_str().unwrap(), "--grid", "3,3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let grid: GridFile = serde_json::from_value(doc["grid"].clone()).unwrap();
    for p in grid.points {
        let GridValue::Pair([u, v]) = p.value else { panic!() };
        let z = Complex64::new(p.x0, p.r);
        let w = z * z * z + z * 0.25;
        assert!((u - w.re).abs() < 1e-8 && (v - w.im).abs() < 1e-8);
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "m = 5\nk = 0\nfield = \"example1\"\nrect = [0.0, 1.0, 0.5, 1.5]\ngrid = [4, 4]\n").unwrap();
    let o = fueter(&["--config", cfg.to_str().unwrap(), "invert", "--grid", "3,2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["grid"]["meta"]["m"], 5);
    assert_eq!(doc["grid"]["meta"]["nx0"], 3);
    assert_eq!(doc["grid"]["points"].as_array().unwrap().len(), 6);

    std::fs::write(&cfg, "m = 5\nbogus = 1\n").unwrap();
    assert_eq!(fueter(&["--config", cfg.to_str().unwrap(), "kernel"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let even = fueter(&["forward", "--h", "z^2", "--m", "4"]);
    assert_eq!(even.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&even.stderr).contains("odd"));
    assert_eq!(fueter(&["forward", "--m", "3"]).status.code(), Some(2));
    assert_eq!(fueter(&["invert", "--field", "cubic", "--init", "1,2,3"]).status.code(), Some(2));
    assert_eq!(fueter(&["kernel", "--format", "csv"]).status.code(), Some(2));
    // the grid hits the branch point z = i of arctan
    assert_eq!(fueter(&["forward", "--h", "arctan", "--grid", "3,3"]).status.code(), Some(3));
    assert_eq!(fueter_env(&["kernel"], &[("FUETER_THREADS", "zero")]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["forward", "--h", "recip", "--m", "5", "--k", "1", "--grid", "7,7"];
    let one = fueter_env(&args, &[("FUETER_THREADS", "1")]);
    let four = fueter_env(&args, &[("FUETER_THREADS", "4")]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn roundtrip_reports_small_residuals() {
    let o = fueter(&["roundtrip", "--field", "example2-nminus", "--rect", "0.3,1.2,0.3,0.8", "--grid", "4,4"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["roundtrip"]["forward"]["max"].as_f64().unwrap() < 1e-6);
    assert!(doc["roundtrip"]["cauchy_riemann"]["max"].as_f64().unwrap() < 1e-6);
    assert!(doc["construction_identity"]["max"].as_f64().unwrap() < 1e-5);
}

#[test]
fn selftest_passes() {
    let o = fueter(&["selftest"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
    let o = fueter(&["oracles"]);
    assert!(o.status.success());
}
