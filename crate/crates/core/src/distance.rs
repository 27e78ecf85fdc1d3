//! Transport information Hessian distances, classical comparison distances,
//! Monge maps, and geodesic interpolation.
//!
//! The Hessian distance is computed in two equivalent ways:
//!
//! * [`dist_h_quantile`] integrates `|h(d_p(y)) - h(d_q(y))|^2` over the
//!   shared midpoint y-grid, where `d` is the quantile derivative;
//! * [`dist_h_map`] integrates `|h(T'(x)/q(x)) - h(1/q(x))|^2 q(x)` over the
//!   source support, with `T` the monotone Monge map pushing `q` to `p`.
//!
//! All y-integrals use the midpoint rule (never touching the endpoint
//! singularities); all x-integrals use the trapezoid rule on the density's
//! own grid, matching the CDF construction.

use crate::density::{GridDensity, QuantileFunction};
use crate::entropy::EntropyModel;
use crate::error::{Error, Result};
use crate::scalar::{ksum, Kahan, Real};

/// The monotone transport map `T = F_p^{-1} o F_q` pushing `q` forward to
/// `p`, sampled on `q`'s grid.
#[derive(Debug, Clone)]
pub struct MongeMap<R: Real> {
    /// Grid nodes of the source density `q`.
    pub source_grid: Vec<R>,
    /// `T(x_i)`; non-decreasing.
    pub values: Vec<R>,
    /// `T'(x_i) = q(x_i) / p(T(x_i))`; the pushforward identity
    /// `p(T(x)) T'(x) = q(x)` holds by construction.
    pub derivative: Vec<R>,
}

/// A Hessian-metric geodesic sampled at a list of times, stored through the
/// quantile data of each intermediate density (the density itself is
/// `1/derivative` in quantile coordinates and intermediate supports may exit
/// the endpoints' interval, so no resampling is committed to).
#[derive(Debug, Clone)]
pub struct GeodesicPath<R: Real> {
    pub t_grid: Vec<R>,
    pub quantiles: Vec<QuantileFunction<R>>,
}

/// Solves the Monge map between two densities through their CDFs.
pub fn monge_map<R: Real>(p: &GridDensity<R>, q: &GridDensity<R>) -> MongeMap<R> {
    let cdf_p = p.cdf();
    let cdf_q = q.cdf();
    let values = cdf_p.invert_sorted(cdf_q.knots());
    let source_grid: Vec<R> = (0..q.num_nodes()).map(|i| q.node(i)).collect();
    let derivative = q
        .values()
        .iter()
        .zip(&values)
        .map(|(&qv, &t)| qv / p.eval(t))
        .collect();
    MongeMap {
        source_grid,
        values,
        derivative,
    }
}

/// Hessian distance between two quantile functions sampled on the same
/// midpoint grid. Exactly symmetric in its arguments.
pub fn dist_h_between<R: Real>(
    e: &EntropyModel<R>,
    a: &QuantileFunction<R>,
    b: &QuantileFunction<R>,
) -> Result<R> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut acc = Kahan::new();
    for j in 0..a.len() {
        let diff = e.h(a.derivative[j])? - e.h(b.derivative[j])?;
        acc.add(diff * diff);
    }
    Ok((acc.value() * a.dy()).sqrt())
}

/// Hessian distance in the inverse-CDF formulation: the root-mean-square of
/// `h(d_p) - h(d_q)` over `m` midpoints.
pub fn dist_h_quantile<R: Real>(
    e: &EntropyModel<R>,
    p: &GridDensity<R>,
    q: &GridDensity<R>,
    m: usize,
) -> Result<R> {
    dist_h_between(e, &p.quantile(m)?, &q.quantile(m)?)
}

/// Hessian distance in the mapping formulation, integrated on the source
/// density's grid.
pub fn dist_h_map<R: Real>(
    e: &EntropyModel<R>,
    p: &GridDensity<R>,
    q: &GridDensity<R>,
) -> Result<R> {
    let map = monge_map(p, q);
    let n = q.num_intervals();
    let half = R::of(0.5);
    let mut terms = Vec::with_capacity(n + 1);
    for (i, &qv) in q.values().iter().enumerate() {
        let diff = e.h(map.derivative[i] / qv)? - e.h(qv.recip())?;
        let w = if i == 0 || i == n { half } else { R::one() };
        terms.push(w * diff * diff * qv);
    }
    Ok((ksum(terms) * q.spacing()).sqrt())
}

/// L2-Wasserstein distance through inverse CDFs on `m` midpoints.
pub fn dist_wasserstein<R: Real>(p: &GridDensity<R>, q: &GridDensity<R>, m: usize) -> Result<R> {
    let qp = p.quantile(m)?;
    let qq = q.quantile(m)?;
    let mut acc = Kahan::new();
    for j in 0..m {
        let diff = qp.values[j] - qq.values[j];
        acc.add(diff * diff);
    }
    Ok((acc.value() * qp.dy()).sqrt())
}

/// Hellinger distance, integrated over the union of the two supports with
/// each density treated as zero outside its own.
pub fn dist_hellinger<R: Real>(p: &GridDensity<R>, q: &GridDensity<R>) -> R {
    let (p_lo, p_hi) = p.support();
    let (q_lo, q_hi) = q.support();

    // merged breakpoints: all grid nodes of both densities plus the four
    // support endpoints, so every sub-interval lies fully inside or outside
    // each support
    let mut xs: Vec<R> = Vec::with_capacity(p.num_nodes() + q.num_nodes() + 4);
    xs.extend((0..p.num_nodes()).map(|i| p.node(i)));
    xs.extend((0..q.num_nodes()).map(|i| q.node(i)));
    xs.extend([p_lo, p_hi, q_lo, q_hi]);
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
    xs.dedup();

    let eval = |x: R, lo: R, hi: R, inside: bool, d: &GridDensity<R>| -> R {
        if inside && x >= lo && x <= hi {
            d.eval(x)
        } else {
            R::zero()
        }
    };

    let two = R::of(2.0);
    let mut acc = Kahan::new();
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let mid = (a + b) / two;
        let p_in = mid >= p_lo && mid <= p_hi;
        let q_in = mid >= q_lo && mid <= q_hi;
        if !p_in && !q_in {
            continue;
        }
        let g = |x: R| {
            let d = eval(x, p_lo, p_hi, p_in, p).sqrt() - eval(x, q_lo, q_hi, q_in, q).sqrt();
            d * d
        };
        acc.add((g(a) + g(b)) * (b - a) / two);
    }
    acc.value().max(R::zero()).sqrt()
}

/// Geodesic of the Hessian metric: `h` of the quantile derivative is affine
/// in `t` between the endpoint values, and the quantile itself is rebuilt by
/// cumulative midpoint integration with its left end pinned to the linear
/// interpolation of the endpoint quantiles (extrapolated to `y = 0`).
///
/// `t = 0` reproduces `q`, `t = 1` reproduces `p`, exactly.
pub fn geodesic<R: Real>(
    e: &EntropyModel<R>,
    p: &GridDensity<R>,
    q: &GridDensity<R>,
    t_grid: &[R],
    m: usize,
) -> Result<GeodesicPath<R>> {
    let qf_p = p.quantile(m)?;
    let qf_q = q.quantile(m)?;
    let hp: Vec<R> = qf_p
        .derivative
        .iter()
        .map(|&d| e.h(d))
        .collect::<Result<_>>()?;
    let hq: Vec<R> = qf_q
        .derivative
        .iter()
        .map(|&d| e.h(d))
        .collect::<Result<_>>()?;

    let half_dy = qf_p.dy() * R::of(0.5);
    let left_p = qf_p.values[0] - qf_p.derivative[0] * half_dy;
    let left_q = qf_q.values[0] - qf_q.derivative[0] * half_dy;

    let one = R::one();
    let mut quantiles = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if t == R::zero() {
            quantiles.push(qf_q.clone());
            continue;
        }
        if t == one {
            quantiles.push(qf_p.clone());
            continue;
        }
        let mut derivative = Vec::with_capacity(m);
        for j in 0..m {
            let target = t * hp[j] + (one - t) * hq[j];
            derivative.push(e.h_invert(target)?);
        }
        let mut values = Vec::with_capacity(m);
        let mut acc = Kahan::new();
        acc.add(t * left_p + (one - t) * left_q);
        acc.add(derivative[0] * half_dy);
        values.push(acc.value());
        for j in 1..m {
            acc.add((derivative[j - 1] + derivative[j]) * half_dy);
            values.push(acc.value());
        }
        quantiles.push(QuantileFunction {
            y_grid: qf_p.y_grid.clone(),
            values,
            derivative,
        });
    }
    Ok(GeodesicPath {
        t_grid: t_grid.to_vec(),
        quantiles,
    })
}
