//! One-dimensional probability densities sampled on uniform grids, together
//! with their CDFs and quantile (inverse-CDF) machinery.
//!
//! A [`GridDensity`] lives on a compact support `[lo, hi]` with `N + 1`
//! uniformly spaced nodes and is strictly positive there. Strict positivity
//! keeps the CDF strictly increasing, so quantile inversion needs no
//! tie-breaking, and keeps every `1/p`-type quantity downstream finite.
//! Densities that touch zero anywhere on their support are rejected rather
//! than clipped.

use crate::error::{Error, Result};
use crate::scalar::{ksum, Kahan, Real};

/// Relative positivity floor: every node must be at least this fraction of
/// the mean node value.
const REL_FLOOR: f64 = 1e-12;
/// Window around 1 inside which [`GridDensity::new`] accepts the raw integral.
const NORMALIZATION_WINDOW: f64 = 1e-3;
/// Minimum node count (N >= 8 intervals).
const MIN_NODES: usize = 9;
/// Sample-ingestion floor relative to the histogram peak.
const SAMPLE_FLOOR: f64 = 1e-6;

/// A probability density sampled at the uniform nodes
/// `x_i = lo + i * (hi - lo) / N`.
#[derive(Debug, Clone)]
pub struct GridDensity<R: Real> {
    support_lo: R,
    support_hi: R,
    values: Vec<R>,
    p_min: R,
}

impl<R: Real> GridDensity<R> {
    /// Builds a density from node values whose trapezoid integral is already
    /// within `1e-3` of one; the result is renormalized to integrate to one
    /// exactly (up to rounding).
    pub fn new(values: Vec<R>, support_lo: R, support_hi: R) -> Result<Self> {
        Self::build(values, support_lo, support_hi, false)
    }

    /// Builds a density from non-negative node values with arbitrary positive
    /// integral, renormalizing it to one.
    pub fn normalized(values: Vec<R>, support_lo: R, support_hi: R) -> Result<Self> {
        Self::build(values, support_lo, support_hi, true)
    }

    /// The uniform density on `[lo, hi]` with `n` grid intervals.
    pub fn uniform(support_lo: R, support_hi: R, n: usize) -> Result<Self> {
        let span = support_hi - support_lo;
        Self::new(vec![span.recip(); n + 1], support_lo, support_hi)
    }

    fn build(values: Vec<R>, support_lo: R, support_hi: R, renormalize_any: bool) -> Result<Self> {
        if values.len() < MIN_NODES {
            return Err(Error::TooFewNodes { got: values.len() });
        }
        if !(support_lo.is_finite() && support_hi.is_finite() && support_lo < support_hi) {
            return Err(Error::NotNormalizable { integral: f64::NAN });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotNormalizable { integral: f64::NAN });
        }
        let n_nodes = R::from_usize(values.len()).unwrap();
        let mean = ksum(values.iter().copied()) / n_nodes;
        let floor = R::tol(REL_FLOOR) * mean;
        for (i, &v) in values.iter().enumerate() {
            if v < floor || v <= R::zero() {
                return Err(Error::NonPositiveDensity {
                    index: i,
                    value: v.view(),
                    floor: floor.view(),
                });
            }
        }
        let dx = (support_hi - support_lo) / R::from_usize(values.len() - 1).unwrap();
        let integral = trapezoid(&values, dx);
        if !(integral.is_finite() && integral > R::zero()) {
            return Err(Error::NotNormalizable {
                integral: integral.view(),
            });
        }
        if !renormalize_any && (integral - R::one()).abs() > R::tol(NORMALIZATION_WINDOW) {
            return Err(Error::NotNormalizable {
                integral: integral.view(),
            });
        }
        let values: Vec<R> = values.into_iter().map(|v| v / integral).collect();
        let p_min = values
            .iter()
            .copied()
            .fold(R::infinity(), |acc, v| acc.min(v));
        Ok(GridDensity {
            support_lo,
            support_hi,
            values,
            p_min,
        })
    }

    /// Ingests raw samples as a padded histogram density.
    ///
    /// The grid covers `[min - w, max + w]` where `w` is the bin width, with
    /// one node per bin edge; node values average the two adjacent bin
    /// heights, are floored at `1e-6` of the histogram peak, and the result
    /// is renormalized. Deterministic for a fixed input. `bins` defaults to
    /// `ceil(sqrt(n))`.
    pub fn from_samples(samples: &[R], bins: Option<usize>) -> Result<Self> {
        let n = samples.len();
        if n < 50 {
            return Err(Error::TooFewSamples { got: n });
        }
        for (i, &s) in samples.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::NonFiniteSample { index: i });
            }
        }
        let lo = samples.iter().copied().fold(R::infinity(), R::min);
        let hi = samples.iter().copied().fold(R::neg_infinity(), R::max);
        if lo == hi {
            return Err(Error::DegenerateSamples);
        }
        let bins = bins.unwrap_or_else(|| (n as f64).sqrt().ceil() as usize);
        if bins + 2 < MIN_NODES - 1 {
            return Err(Error::TooFewNodes { got: bins + 3 });
        }
        let width = (hi - lo) / R::from_usize(bins).unwrap();

        let mut counts = vec![0u64; bins];
        for &s in samples {
            let idx = ((s - lo) / width).floor().view() as usize;
            counts[idx.min(bins - 1)] += 1;
        }
        let mass = R::from_usize(n).unwrap() * width;
        // heights with one empty padding bin on each side
        let mut heights = Vec::with_capacity(bins + 2);
        heights.push(R::zero());
        heights.extend(counts.iter().map(|&c| R::from_u64(c).unwrap() / mass));
        heights.push(R::zero());

        let peak = heights.iter().copied().fold(R::zero(), R::max);
        let floor = R::of(SAMPLE_FLOOR) * peak;
        let n_edges = bins + 3;
        let values: Vec<R> = (0..n_edges)
            .map(|i| {
                let v = if i == 0 {
                    heights[0]
                } else if i == n_edges - 1 {
                    heights[bins + 1]
                } else {
                    (heights[i - 1] + heights[i]) * R::of(0.5)
                };
                v.max(floor)
            })
            .collect();
        Self::normalized(values, lo - width, hi + width)
    }

    /// Shifts the support by `c`; node values are untouched.
    pub fn translate(&self, c: R) -> Self {
        GridDensity {
            support_lo: self.support_lo + c,
            support_hi: self.support_hi + c,
            values: self.values.clone(),
            p_min: self.p_min,
        }
    }

    /// Linearly resamples onto a grid with `n` intervals over the same
    /// support, renormalizing.
    pub fn resample(&self, n: usize) -> Result<Self> {
        let dx = (self.support_hi - self.support_lo) / R::from_usize(n).unwrap();
        let values: Vec<R> = (0..=n)
            .map(|i| self.eval(self.support_lo + R::from_usize(i).unwrap() * dx))
            .collect();
        Self::normalized(values, self.support_lo, self.support_hi)
    }

    pub fn support(&self) -> (R, R) {
        (self.support_lo, self.support_hi)
    }

    /// Number of grid intervals N.
    pub fn num_intervals(&self) -> usize {
        self.values.len() - 1
    }

    /// Number of grid nodes N + 1.
    pub fn num_nodes(&self) -> usize {
        self.values.len()
    }

    pub fn spacing(&self) -> R {
        (self.support_hi - self.support_lo) / R::from_usize(self.num_intervals()).unwrap()
    }

    /// Coordinate of node `i`.
    pub fn node(&self, i: usize) -> R {
        self.support_lo + R::from_usize(i).unwrap() * self.spacing()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// Certified lower bound of the density on its support.
    pub fn p_min(&self) -> R {
        self.p_min
    }

    /// Piecewise-linear evaluation, clamped to the support.
    pub fn eval(&self, x: R) -> R {
        let n = self.num_intervals();
        let t = (x - self.support_lo) / self.spacing();
        let t = t.max(R::zero()).min(R::from_usize(n).unwrap());
        let i = (t.floor().view() as usize).min(n - 1);
        let frac = t - R::from_usize(i).unwrap();
        self.values[i] + frac * (self.values[i + 1] - self.values[i])
    }

    /// Trapezoid integral of the stored values (one up to rounding).
    pub fn integral(&self) -> R {
        trapezoid(&self.values, self.spacing())
    }

    /// Cumulative distribution function on the same grid.
    pub fn cdf(&self) -> CdfFunction<R> {
        let n = self.num_intervals();
        let dx = self.spacing();
        let mut knots = Vec::with_capacity(n + 1);
        let mut acc = Kahan::new();
        knots.push(R::zero());
        for i in 0..n {
            acc.add(dx * (self.values[i] + self.values[i + 1]) * R::of(0.5));
            knots.push(acc.value());
        }
        let total = knots[n];
        for k in knots.iter_mut() {
            *k /= total;
        }
        knots[n] = R::one();
        // guard exact ties from rounding in near-floor regions
        for i in 1..n {
            if knots[i] <= knots[i - 1] {
                knots[i] = knots[i - 1] + (knots[i - 1].abs() + R::one()) * R::epsilon();
            }
        }
        for i in (1..n).rev() {
            if knots[i] >= knots[i + 1] {
                knots[i] = knots[i + 1] - (knots[i + 1].abs() + R::one()) * R::epsilon();
            }
        }
        CdfFunction {
            support_lo: self.support_lo,
            support_hi: self.support_hi,
            knots,
        }
    }

    /// Quantile function on `m` midpoints `y_j = (j - 1/2) / m`.
    ///
    /// Values come from monotone piecewise-linear inversion of the CDF; the
    /// derivative uses the identity `d/dy F^{-1}(y) = 1 / p(F^{-1}(y))` with
    /// the density interpolated linearly, rather than finite differences of
    /// the inverted values.
    pub fn quantile(&self, m: usize) -> Result<QuantileFunction<R>> {
        if m < 16 {
            return Err(Error::TooFewQuantiles { got: m });
        }
        let cdf = self.cdf();
        let m_r = R::from_usize(m).unwrap();
        let y_grid: Vec<R> = (0..m)
            .map(|j| (R::from_usize(j).unwrap() + R::of(0.5)) / m_r)
            .collect();
        let values = cdf.invert_sorted(&y_grid);
        let derivative = values.iter().map(|&x| self.eval(x).recip()).collect();
        Ok(QuantileFunction {
            y_grid,
            values,
            derivative,
        })
    }
}

/// Trapezoid rule on a uniform grid.
pub(crate) fn trapezoid<R: Real>(values: &[R], dx: R) -> R {
    let n = values.len() - 1;
    let mut acc = Kahan::new();
    acc.add(values[0] * R::of(0.5));
    for &v in &values[1..n] {
        acc.add(v);
    }
    acc.add(values[n] * R::of(0.5));
    acc.value() * dx
}

/// A cumulative distribution function: strictly increasing knots on the
/// source density's grid, pinned to 0 and 1 at the support endpoints.
#[derive(Debug, Clone)]
pub struct CdfFunction<R: Real> {
    support_lo: R,
    support_hi: R,
    knots: Vec<R>,
}

impl<R: Real> CdfFunction<R> {
    pub fn knots(&self) -> &[R] {
        &self.knots
    }

    pub fn support(&self) -> (R, R) {
        (self.support_lo, self.support_hi)
    }

    fn spacing(&self) -> R {
        (self.support_hi - self.support_lo) / R::from_usize(self.knots.len() - 1).unwrap()
    }

    /// Piecewise-linear evaluation of F at `x`, clamped to the support.
    pub fn eval(&self, x: R) -> R {
        let n = self.knots.len() - 1;
        let t = (x - self.support_lo) / self.spacing();
        let t = t.max(R::zero()).min(R::from_usize(n).unwrap());
        let i = (t.floor().view() as usize).min(n - 1);
        let frac = t - R::from_usize(i).unwrap();
        self.knots[i] + frac * (self.knots[i + 1] - self.knots[i])
    }

    /// Piecewise-linear inversion of F at a single `y` in `[0, 1]`.
    pub fn invert(&self, y: R) -> R {
        let y = y.max(R::zero()).min(R::one());
        let n = self.knots.len() - 1;
        let i = match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&y).expect("knots are ordered"))
        {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        };
        self.segment_invert(i, y)
    }

    /// Inverts F at an ascending slice of targets with a single sweep.
    pub fn invert_sorted(&self, ys: &[R]) -> Vec<R> {
        let n = self.knots.len() - 1;
        let mut out = Vec::with_capacity(ys.len());
        let mut i = 0usize;
        for &y in ys {
            let y = y.max(R::zero()).min(R::one());
            while i + 1 < n && self.knots[i + 1] < y {
                i += 1;
            }
            out.push(self.segment_invert(i, y));
        }
        out
    }

    #[inline]
    fn segment_invert(&self, i: usize, y: R) -> R {
        let dx = self.spacing();
        let x_i = self.support_lo + R::from_usize(i).unwrap() * dx;
        let frac = (y - self.knots[i]) / (self.knots[i + 1] - self.knots[i]);
        x_i + frac * dx
    }
}

/// Inverse CDF sampled on the midpoint grid `y_j = (j - 1/2) / M`, together
/// with its y-derivative. Midpoints never touch `y = 0` or `y = 1`, where the
/// derivative can blow up for densities vanishing at the support endpoints.
#[derive(Debug, Clone)]
pub struct QuantileFunction<R: Real> {
    /// Midpoints in (0, 1).
    pub y_grid: Vec<R>,
    /// `F^{-1}(y_j)` in sample-space coordinates; non-decreasing.
    pub values: Vec<R>,
    /// `d/dy F^{-1}(y_j) = 1 / p(F^{-1}(y_j))`; strictly positive.
    pub derivative: Vec<R>,
}

impl<R: Real> QuantileFunction<R> {
    /// Number of midpoints M.
    pub fn len(&self) -> usize {
        self.y_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y_grid.is_empty()
    }

    /// y-spacing `1 / M`.
    pub fn dy(&self) -> R {
        R::from_usize(self.len()).unwrap().recip()
    }
}
