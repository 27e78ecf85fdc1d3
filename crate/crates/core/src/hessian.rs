//! The Hessian bilinear form realized through the one-dimensional elliptic
//! equation, and the Taylor-expansion check tying it back to the distance.
//!
//! In 1-D the elliptic pairing `sigma = -(p Phi')'` integrates exactly:
//! `p(x) Phi'(x) = -int_{lo}^{x} sigma`, and Neumann boundary values hold
//! automatically because the perturbation is mean-zero. The bilinear form is
//!
//! ```text
//! int |Phi''(x)|^2 f''(p(x)) p(x)^2 dx
//! ```
//!
//! and the distance satisfies `dist(p, p + eps*sigma)^2 / eps^2 -> form` as
//! `eps -> 0`.

use crate::density::GridDensity;
use crate::distance::dist_h_quantile;
use crate::entropy::EntropyModel;
use crate::error::{Error, Result};
use crate::scalar::{ksum, Kahan, Real};

/// Absolute tolerance on the trapezoid integral of a tangent perturbation.
const MEAN_ZERO_TOL: f64 = 1e-10;

/// A mean-zero tangent direction on a density's grid.
#[derive(Debug, Clone)]
pub struct TangentPerturbation<R: Real> {
    values: Vec<R>,
}

impl<R: Real> TangentPerturbation<R> {
    /// Validates length, finiteness, and the zero-mean constraint against the
    /// grid of `density`.
    pub fn new(values: Vec<R>, density: &GridDensity<R>) -> Result<Self> {
        if values.len() != density.num_nodes() {
            return Err(Error::GridMismatch {
                expected: density.num_nodes(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotMeanZero { integral: f64::NAN });
        }
        let integral = crate::density::trapezoid(&values, density.spacing());
        let scale = values
            .iter()
            .fold(R::zero(), |acc, &v| acc.max(v.abs()))
            .max(R::one());
        if integral.abs() > R::tol(MEAN_ZERO_TOL) * scale {
            return Err(Error::NotMeanZero {
                integral: integral.view(),
            });
        }
        Ok(TangentPerturbation { values })
    }

    /// Projects arbitrary values onto the tangent space by removing the mean.
    pub fn projected(values: Vec<R>, density: &GridDensity<R>) -> Result<Self> {
        if values.len() != density.num_nodes() {
            return Err(Error::GridMismatch {
                expected: density.num_nodes(),
                got: values.len(),
            });
        }
        let (lo, hi) = density.support();
        let mean = crate::density::trapezoid(&values, density.spacing()) / (hi - lo);
        Self::new(values.into_iter().map(|v| v - mean).collect(), density)
    }

    /// The default validation probe: `pi^2 cos(pi (x - lo) / L)` on the
    /// density's support. Mean-zero by symmetry and Neumann-compatible.
    pub fn cosine(density: &GridDensity<R>) -> Self {
        let (lo, hi) = density.support();
        let span = hi - lo;
        let pi = R::of(std::f64::consts::PI);
        let values = (0..density.num_nodes())
            .map(|i| pi * pi * ((density.node(i) - lo) / span * pi).cos())
            .collect();
        Self::new(values, density).expect("cosine probe is mean-zero")
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// Pointwise scaling; preserves the zero mean.
    pub fn scaled(&self, c: R) -> Self {
        TangentPerturbation {
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }
}

/// The potential paired with a perturbation by the elliptic equation, stored
/// through its derivatives (the potential itself is only determined up to a
/// constant and never needed).
#[derive(Debug, Clone)]
pub struct TangentPotential<R: Real> {
    /// `Phi'(x_i)`; vanishes at both support endpoints.
    pub gradient: Vec<R>,
    /// `Phi''(x_i)` by centered differences (one-sided 3-point stencils at
    /// the endpoints).
    pub hessian_diag: Vec<R>,
}

/// Solves `sigma = -(p Phi')'` with Neumann boundary by exact integration:
/// `gradient[i] = -(cumulative trapezoid of sigma up to x_i) / p(x_i)`.
pub fn solve_potential<R: Real>(
    p: &GridDensity<R>,
    s: &TangentPerturbation<R>,
) -> Result<TangentPotential<R>> {
    let n = p.num_intervals();
    if s.values().len() != n + 1 {
        return Err(Error::GridMismatch {
            expected: n + 1,
            got: s.values().len(),
        });
    }
    let dx = p.spacing();
    let half = R::of(0.5);
    let sv = s.values();

    let mut gradient = Vec::with_capacity(n + 1);
    gradient.push(R::zero());
    let mut acc = Kahan::new();
    for i in 1..=n {
        acc.add(dx * (sv[i - 1] + sv[i]) * half);
        gradient.push(-acc.value() / p.values()[i]);
    }

    let two_dx = R::of(2.0) * dx;
    let mut hessian_diag = Vec::with_capacity(n + 1);
    hessian_diag
        .push((-R::of(3.0) * gradient[0] + R::of(4.0) * gradient[1] - gradient[2]) / two_dx);
    for i in 1..n {
        hessian_diag.push((gradient[i + 1] - gradient[i - 1]) / two_dx);
    }
    hessian_diag
        .push((R::of(3.0) * gradient[n] - R::of(4.0) * gradient[n - 1] + gradient[n - 2]) / two_dx);

    Ok(TangentPotential {
        gradient,
        hessian_diag,
    })
}

/// The Hessian bilinear form of the entropy at `p` in direction `s`:
/// trapezoid integral of `Phi''^2 f''(p) p^2`.
pub fn hessian_form<R: Real>(
    e: &EntropyModel<R>,
    p: &GridDensity<R>,
    s: &TangentPerturbation<R>,
) -> Result<R> {
    let potential = solve_potential(p, s)?;
    let n = p.num_intervals();
    let half = R::of(0.5);
    let terms: Vec<R> = p
        .values()
        .iter()
        .zip(&potential.hessian_diag)
        .enumerate()
        .map(|(i, (&pv, &dd))| {
            let w = if i == 0 || i == n { half } else { R::one() };
            w * dd * dd * e.f_second(pv) * pv * pv
        })
        .collect();
    Ok(ksum(terms) * p.spacing())
}

/// Compares `dist(p, p + eps*s)^2 / eps^2` against the bilinear form for each
/// step size, largest first.
///
/// Returns `(eps, |dist^2/eps^2 - form|)` pairs; the residual vanishes with
/// `eps` when the distance really is the geodesic distance of this form.
pub fn taylor_residual<R: Real>(
    e: &EntropyModel<R>,
    p: &GridDensity<R>,
    s: &TangentPerturbation<R>,
    eps_list: &[R],
) -> Result<Vec<(R, R)>> {
    let form = hessian_form(e, p, s)?;
    let m = p.num_intervals().max(2048);
    let (lo, hi) = p.support();

    let mut eps_sorted = eps_list.to_vec();
    eps_sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite eps"));

    let mut out = Vec::with_capacity(eps_sorted.len());
    for &eps in &eps_sorted {
        if !(eps.is_finite() && eps > R::zero()) {
            return Err(Error::PerturbedDensityInvalid {
                eps: eps.view(),
                source: None,
            });
        }
        let perturbed: Vec<R> = p
            .values()
            .iter()
            .zip(s.values())
            .map(|(&pv, &sv)| pv + eps * sv)
            .collect();
        let perturbed =
            GridDensity::new(perturbed, lo, hi).map_err(|err| Error::PerturbedDensityInvalid {
                eps: eps.view(),
                source: Some(Box::new(err)),
            })?;
        let d = dist_h_quantile(e, p, &perturbed, m)?;
        let residual = (d * d / (eps * eps) - form).abs();
        out.push((eps, residual));
    }
    Ok(out)
}
