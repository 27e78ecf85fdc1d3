//! Adaptive Simpson quadrature with interval bisection.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bisection depth cap; bottoming out with a bad error estimate is reported
/// as divergence.
const MAX_DEPTH: u32 = 40;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub(crate) fn adaptive_simpson<R: Real, F: Fn(R) -> R>(f: &F, a: R, b: R, tol: R) -> Result<R> {
    if a == b {
        return Ok(R::zero());
    }
    let mid = (a + b) * R::of(0.5);
    let fa = f(a);
    let fm = f(mid);
    let fb = f(b);
    if !(fa.is_finite() && fm.is_finite() && fb.is_finite()) {
        return Err(Error::QuadratureDivergence);
    }
    let whole = simpson(a, b, fa, fm, fb);
    bisect(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[inline]
fn simpson<R: Real>(a: R, b: R, fa: R, fm: R, fb: R) -> R {
    (b - a) / R::of(6.0) * (fa + R::of(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn bisect<R: Real, F: Fn(R) -> R>(
    f: &F,
    a: R,
    b: R,
    fa: R,
    fm: R,
    fb: R,
    whole: R,
    tol: R,
    depth: u32,
) -> Result<R> {
    let mid = (a + b) * R::of(0.5);
    let lm = (a + mid) * R::of(0.5);
    let rm = (mid + b) * R::of(0.5);
    let flm = f(lm);
    let frm = f(rm);
    if !(flm.is_finite() && frm.is_finite()) {
        return Err(Error::QuadratureDivergence);
    }
    let left = simpson(a, mid, fa, flm, fm);
    let right = simpson(mid, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= R::of(15.0) * tol {
        // Richardson extrapolation of the two estimates
        return Ok(left + right + delta / R::of(15.0));
    }
    if depth == 0 {
        return Err(Error::QuadratureDivergence);
    }
    let half = tol * R::of(0.5);
    let l = bisect(f, a, mid, fa, flm, fm, left, half, depth - 1)?;
    let r = bisect(f, mid, b, fm, frm, fb, right, half, depth - 1)?;
    Ok(l + r)
}
