//! Shared helpers for the CLI integration tests.
#![allow(dead_code)] // each test target uses a different subset

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thdist"))
}

pub fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Writes a grid CSV sampling `f` on `n + 1` uniform nodes of `[lo, hi]`.
pub fn write_grid_csv(
    dir: &Path,
    name: &str,
    lo: f64,
    hi: f64,
    n: usize,
    f: impl Fn(f64) -> f64,
) -> PathBuf {
    let mut text = String::from("x,p\n");
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        text.push_str(&format!("{x:.16e},{:.16e}\n", f(x)));
    }
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write grid csv");
    path
}

pub fn uniform_csv(dir: &Path, name: &str, lo: f64, hi: f64, n: usize) -> PathBuf {
    let height = 1.0 / (hi - lo);
    write_grid_csv(dir, name, lo, hi, n, |_| height)
}
