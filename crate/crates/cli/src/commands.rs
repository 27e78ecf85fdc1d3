//! Implementations of the CLI subcommands.

use log::debug;
use transport_hessian::{
    dist_h_map, dist_h_quantile, dist_hellinger, dist_wasserstein, geodesic, taylor_residual,
    GridDensity64, TangentPerturbation64,
};

use crate::config::RunConfig;
use crate::error::Result;
use crate::io::{fmt_real, load_input, write_output};

/// Step sizes probed by `hessian-check`, largest first.
const TAYLOR_EPS: [f64; 3] = [0.1, 0.05, 0.025];
/// Number of rows in the `entropy-table` output.
const TABLE_POINTS: usize = 50;

fn load_all(config: &RunConfig) -> Result<Vec<GridDensity64>> {
    config
        .inputs
        .iter()
        .map(|path| {
            debug!("loading {}", path.display());
            load_input(path, config.format, config.grid)
        })
        .collect()
}

/// `dist A B`: both Hessian formulations, their gap, and the comparison
/// distances.
pub fn dist(config: &RunConfig) -> Result<()> {
    config.expect_inputs(2, Some(2))?;
    let densities = load_all(config)?;
    let (a, b) = (&densities[0], &densities[1]);
    let e = &config.entropy;

    let d_quantile = dist_h_quantile(e, a, b, config.quantiles)?;
    let d_map = dist_h_map(e, a, b)?;
    let gap = (d_quantile - d_map).abs();
    let wasserstein = dist_wasserstein(a, b, config.quantiles)?;
    let hellinger = dist_hellinger(a, b);

    let rows: Vec<(&str, f64)> = vec![
        ("dist_h_quantile", d_quantile),
        ("dist_h_map", d_map),
        ("formulation_gap", gap),
        ("dist_wasserstein", wasserstein),
        ("dist_hellinger", hellinger),
    ];
    for (name, value) in &rows {
        println!("{name} = {}", fmt_real(*value));
    }
    if config.out.is_some() {
        let csv_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|(name, value)| vec![name.to_string(), fmt_real(*value)])
            .collect();
        write_output(&["metric", "value"], &csv_rows, config.out.as_deref())?;
    }
    Ok(())
}

/// `matrix A B C ...`: symmetric pairwise Hessian distance matrix with a
/// zero diagonal.
pub fn matrix(config: &RunConfig) -> Result<()> {
    config.expect_inputs(2, None)?;
    let densities = load_all(config)?;
    let k = densities.len();
    let e = &config.entropy;

    let mut dist = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let d = dist_h_quantile(e, &densities[i], &densities[j], config.quantiles)?;
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }

    let labels: Vec<String> = config
        .inputs
        .iter()
        .map(|p| p.display().to_string())
        .collect();
    let mut header: Vec<&str> = vec!["input"];
    header.extend(labels.iter().map(|s| s.as_str()));
    let rows: Vec<Vec<String>> = (0..k)
        .map(|i| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(labels[i].clone());
            row.extend(dist[i].iter().map(|&d| fmt_real(d)));
            row
        })
        .collect();
    write_output(&header, &rows, config.out.as_deref())
}

/// `geodesic A B`: quantile data of the Hessian geodesic from A (t = 0) to
/// B (t = 1) on a uniform time grid.
pub fn geodesic_cmd(config: &RunConfig) -> Result<()> {
    config.expect_inputs(2, Some(2))?;
    let densities = load_all(config)?;
    let (start, end) = (&densities[0], &densities[1]);

    let steps = config.steps;
    let t_grid: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let path = geodesic(&config.entropy, end, start, &t_grid, config.quantiles)?;

    let mut rows = Vec::with_capacity(steps * config.quantiles);
    for (k, t) in path.t_grid.iter().enumerate() {
        let qf = &path.quantiles[k];
        for j in 0..qf.len() {
            rows.push(vec![
                fmt_real(*t),
                fmt_real(qf.y_grid[j]),
                fmt_real(qf.values[j]),
                fmt_real(qf.derivative[j]),
            ]);
        }
    }
    write_output(
        &["t", "y", "quantile", "derivative"],
        &rows,
        config.out.as_deref(),
    )
}

/// `hessian-check A`: Taylor residuals of the Hessian bilinear form under
/// the default cosine perturbation.
pub fn hessian_check(config: &RunConfig) -> Result<()> {
    config.expect_inputs(1, Some(1))?;
    let densities = load_all(config)?;
    let p = &densities[0];
    let s = TangentPerturbation64::cosine(p);
    let residuals = taylor_residual(&config.entropy, p, &s, &TAYLOR_EPS)?;
    let rows: Vec<Vec<String>> = residuals
        .iter()
        .map(|&(eps, residual)| vec![fmt_real(eps), fmt_real(residual)])
        .collect();
    write_output(&["eps", "residual"], &rows, config.out.as_deref())
}

/// `entropy-table`: closed-form h against its quadrature on 50 log-spaced
/// points of [0.1, 10].
pub fn entropy_table(config: &RunConfig) -> Result<()> {
    config.expect_inputs(0, Some(0))?;
    let e = &config.entropy;
    let mut rows = Vec::with_capacity(TABLE_POINTS);
    for k in 0..TABLE_POINTS {
        let exponent = -1.0 + 2.0 * k as f64 / (TABLE_POINTS - 1) as f64;
        let y = 10f64.powf(exponent);
        let closed = e.h(y)?;
        let numeric = e.h_numeric(y)?;
        rows.push(vec![
            fmt_real(y),
            fmt_real(closed),
            fmt_real(numeric),
            fmt_real((closed - numeric).abs()),
        ]);
    }
    write_output(
        &["y", "h_closed", "h_numeric", "abs_diff"],
        &rows,
        config.out.as_deref(),
    )
}
