//! End-to-end behavior of the `thdist` binary: outputs, formats, config
//! handling, and the exit-code contract.

mod common;

use common::{bin, run, stdout, uniform_csv, write_grid_csv};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

#[test]
fn dist_of_a_density_with_itself_is_zero() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 64);
    let out = run(
        &["dist", a.to_str().unwrap(), a.to_str().unwrap()],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines() {
        let value: f64 = line.split(" = ").nth(1).unwrap().parse().unwrap();
        assert_eq!(value, 0.0, "nonzero metric in {line:?}");
    }
}

#[test]
fn dist_reports_log_two_for_the_uniform_pair() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "wide.csv", 0.0, 1.0, 256);
    let b = uniform_csv(dir.path(), "narrow.csv", 0.0, 0.5, 256);
    let out = run(
        &["dist", a.to_str().unwrap(), b.to_str().unwrap()],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let quantile_line = text
        .lines()
        .find(|l| l.starts_with("dist_h_quantile"))
        .unwrap();
    let value: f64 = quantile_line.split(" = ").nth(1).unwrap().parse().unwrap();
    assert!((value - 2f64.ln()).abs() < 1e-10);
}

#[test]
fn matrix_is_symmetric_with_zero_diagonal() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 64);
    let b = uniform_csv(dir.path(), "b.csv", 0.0, 0.5, 64);
    let c = write_grid_csv(dir.path(), "c.csv", 0.0, 1.0, 64, |x| 2.0 / 3.0 * (1.0 + x));
    let out_path = dir.path().join("m.csv");
    let out = run(
        &[
            "matrix",
            a.to_str().unwrap(),
            b.to_str().unwrap(),
            c.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    for i in 0..3 {
        assert_eq!(rows[i + 1][i + 1].parse::<f64>().unwrap(), 0.0);
        for j in 0..3 {
            assert_eq!(rows[i + 1][j + 1], rows[j + 1][i + 1]);
        }
    }
    // boltzmann entry for uniform[0,1] vs uniform[0,1/2] is ln 2
    let entry: f64 = rows[1][2].parse().unwrap();
    assert!((entry - 2f64.ln()).abs() < 1e-10);
}

#[test]
fn geodesic_csv_has_steps_times_quantiles_rows() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 64);
    let b = uniform_csv(dir.path(), "b.csv", 0.0, 0.5, 64);
    let out_path = dir.path().join("g.csv");
    let out = run(
        &[
            "geodesic",
            a.to_str().unwrap(),
            b.to_str().unwrap(),
            "--steps",
            "5",
            "--quantiles",
            "32",
            "--out",
            out_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,y,quantile,derivative");
    assert_eq!(lines.len(), 1 + 5 * 32);
    // first block is the start density (t = 0), uniform on [0, 1]
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert!((first[3].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    // last block is the end density, uniform on [0, 1/2]
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(last[0].parse::<f64>().unwrap(), 1.0);
    assert!((last[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn entropy_table_diff_column_is_tiny() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("t.csv");
    let out = run(
        &[
            "entropy-table",
            "--entropy",
            "reciprocal",
            "--out",
            out_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "y,h_closed,h_numeric,abs_diff");
    assert_eq!(lines.len(), 51);
    let max_diff = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse::<f64>().unwrap())
        .fold(0.0f64, f64::max);
    assert!(max_diff <= 1e-8, "max |closed - numeric| = {max_diff:e}");
}

#[test]
fn hessian_check_residuals_decrease() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 512);
    let out = run(&["hessian-check", a.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let residuals: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(residuals.len(), 3);
    assert!(residuals[0] > residuals[1] && residuals[1] > residuals[2]);
}

#[test]
fn samples_format_ingests_draws() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut text = String::from("sample\n");
    for _ in 0..10_000 {
        text.push_str(&format!("{:.16e}\n", rng.gen::<f64>()));
    }
    let path = dir.path().join("draws.csv");
    std::fs::write(&path, text).unwrap();
    let a = uniform_csv(dir.path(), "u.csv", 0.0, 1.0, 256);
    let out = run(
        &[
            "dist",
            path.to_str().unwrap(),
            a.to_str().unwrap(),
            "--format",
            "samples",
        ],
        dir.path(),
    );
    // a sample file next to a grid file cannot share one --format flag,
    // so both are parsed as samples here; the grid file must fail
    assert!(!out.status.success());

    let b = {
        let mut t = String::from("sample\n");
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10_000 {
            t.push_str(&format!("{:.16e}\n", rng.gen::<f64>()));
        }
        let p = dir.path().join("draws2.csv");
        std::fs::write(&p, t).unwrap();
        p
    };
    let out = run(
        &[
            "dist",
            path.to_str().unwrap(),
            b.to_str().unwrap(),
            "--format",
            "samples",
            "--grid",
            "128",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.starts_with("dist_h_quantile"))
        .unwrap();
    let d: f64 = line.split(" = ").nth(1).unwrap().parse().unwrap();
    // two near-uniform estimates sit close together
    assert!(d < 0.5, "distance between uniform estimates was {d}");
}

#[test]
fn config_file_supplies_values_and_flags_win() {
    let dir = TempDir::new().unwrap();
    uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 64);
    uniform_csv(dir.path(), "b.csv", 0.0, 0.5, 64);
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "entropy = \"quadratic\"\nquantiles = 64\ninputs = [\"a.csv\", \"b.csv\"]\n",
    )
    .unwrap();

    let out = run(&["dist", "--config", config.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let quadratic: f64 = stdout(&out)
        .lines()
        .find(|l| l.starts_with("dist_h_quantile"))
        .unwrap()
        .split(" = ")
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    // quadratic h: |h(1/2) - h(1)| = |2 - 2*sqrt(2) - 0| ... = 2(sqrt(2)-1)
    assert!((quadratic - 2.0 * (2f64.sqrt() - 1.0)).abs() < 1e-9);

    // the flag overrides the file's entropy choice
    let out = run(
        &[
            "dist",
            "--config",
            config.to_str().unwrap(),
            "--entropy",
            "boltzmann",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let boltzmann: f64 = stdout(&out)
        .lines()
        .find(|l| l.starts_with("dist_h_quantile"))
        .unwrap()
        .split(" = ")
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((boltzmann - 2f64.ln()).abs() < 1e-10);
}

#[test]
fn exit_codes_are_distinct_per_error_class() {
    let dir = TempDir::new().unwrap();
    let a = uniform_csv(dir.path(), "a.csv", 0.0, 1.0, 64);
    let a = a.to_str().unwrap();

    // missing file
    let out = run(&["dist", "missing.csv", a], dir.path());
    assert_eq!(out.status.code(), Some(10));

    // shuffled x column
    std::fs::write(
        dir.path().join("shuffled.csv"),
        "x,p\n0.0,1.0\n0.5,1.0\n0.25,1.0\n0.75,1.0\n1.0,1.0\n",
    )
    .unwrap();
    let out = run(&["dist", "shuffled.csv", a], dir.path());
    assert_eq!(out.status.code(), Some(11));

    // malformed float
    std::fs::write(dir.path().join("bad.csv"), "x,p\n0.0,one\n1.0,1.0\n").unwrap();
    let out = run(&["dist", "bad.csv", a], dir.path());
    assert_eq!(out.status.code(), Some(11));

    // nine nodes required
    std::fs::write(
        dir.path().join("tiny.csv"),
        "x,p\n0.0,1.0\n0.25,1.0\n0.5,1.0\n0.75,1.0\n1.0,1.0\n",
    )
    .unwrap();
    let out = run(&["dist", "tiny.csv", a], dir.path());
    assert_eq!(out.status.code(), Some(20));

    // density with a zero node
    std::fs::write(dir.path().join("zero.csv"), {
        let mut t = String::from("x,p\n");
        for i in 0..=16 {
            let x = i as f64 / 16.0;
            let p = if i == 8 { 0.0 } else { 1.0 };
            t.push_str(&format!("{x},{p}\n"));
        }
        t
    })
    .unwrap();
    let out = run(&["dist", "zero.csv", a], dir.path());
    assert_eq!(out.status.code(), Some(21));

    // degenerate gamma
    let out = run(&["entropy-table", "--entropy", "gamma:1"], dir.path());
    assert_eq!(out.status.code(), Some(27));

    // wrong input count
    let out = run(&["dist", a], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn version_and_help_work() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    for cmd in [
        "dist",
        "matrix",
        "geodesic",
        "hessian-check",
        "entropy-table",
    ] {
        assert!(text.contains(cmd), "help misses {cmd}");
    }
}
