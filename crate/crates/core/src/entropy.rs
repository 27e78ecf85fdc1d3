//! f-entropies and their h-functions.
//!
//! An entropy is a strictly convex `f`; the induced distance depends on it
//! only through `f''`, folded into the strictly increasing function
//!
//! ```text
//! h(y) = integral from 1 to y of sqrt(f''(1/z)) * z^(-3/2) dz
//! ```
//!
//! with `h(1) = 0`. The named kinds carry closed forms for both `h` and its
//! inverse; every kind can also evaluate `h` by adaptive quadrature of the
//! defining integral, so the two routes cross-validate.

use std::fmt;
use std::sync::Arc;

use crate::density::GridDensity;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::scalar::{ksum, Real};

/// Absolute quadrature tolerance for the h integral.
const H_QUAD_TOL: f64 = 1e-10;
/// Bisection tolerance for h inversion of custom entropies.
const H_INVERT_TOL: f64 = 1e-12;

/// Shared scalar callable for custom entropies.
pub type ScalarFn<R> = Arc<dyn Fn(R) -> R + Send + Sync>;

/// The entropy family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropyKind<R: Real> {
    /// `f(p) = p log p`
    Boltzmann,
    /// `f(p) = p^2 / 2`
    Quadratic,
    /// `f(p) = -log p`
    Cross,
    /// `f(p) = 1 / (2p)`
    Reciprocal,
    /// `f(p) = p^(2-g) / ((1-g)(2-g))`, `g` outside {1, 2}
    Gamma(R),
    /// User-supplied `f''` (and optionally `f`)
    Custom,
}

impl<R: Real> fmt::Display for EntropyKind<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyKind::Boltzmann => write!(f, "boltzmann"),
            EntropyKind::Quadratic => write!(f, "quadratic"),
            EntropyKind::Cross => write!(f, "cross"),
            EntropyKind::Reciprocal => write!(f, "reciprocal"),
            EntropyKind::Gamma(g) => write!(f, "gamma:{:?}", g),
            EntropyKind::Custom => write!(f, "custom"),
        }
    }
}

/// A strictly convex f-entropy: `f`, `f''`, and the h-function.
#[derive(Clone)]
pub struct EntropyModel<R: Real> {
    kind: EntropyKind<R>,
    custom_f: Option<ScalarFn<R>>,
    custom_f_second: Option<ScalarFn<R>>,
}

impl<R: Real> fmt::Debug for EntropyModel<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EntropyModel({})", self.kind)
    }
}

impl<R: Real> EntropyModel<R> {
    pub fn boltzmann() -> Self {
        Self::named(EntropyKind::Boltzmann)
    }

    pub fn quadratic() -> Self {
        Self::named(EntropyKind::Quadratic)
    }

    pub fn cross() -> Self {
        Self::named(EntropyKind::Cross)
    }

    pub fn reciprocal() -> Self {
        Self::named(EntropyKind::Reciprocal)
    }

    /// The gamma family; `g` must avoid the degenerate exponents 1 and 2.
    pub fn gamma(g: R) -> Result<Self> {
        if !g.is_finite() || g == R::one() || g == R::of(2.0) {
            return Err(Error::InvalidGamma { gamma: g.view() });
        }
        Ok(Self::named(EntropyKind::Gamma(g)))
    }

    /// Builds a model for any non-custom kind.
    pub fn from_kind(kind: EntropyKind<R>) -> Result<Self> {
        match kind {
            EntropyKind::Gamma(g) => Self::gamma(g),
            EntropyKind::Custom => Err(Error::MissingEntropyFunction),
            k => Ok(Self::named(k)),
        }
    }

    fn named(kind: EntropyKind<R>) -> Self {
        EntropyModel {
            kind,
            custom_f: None,
            custom_f_second: None,
        }
    }

    /// A custom entropy given through `f''` (strict convexity is probed on
    /// log-spaced points of `[1e-8, 1e8]`) and, optionally, `f` itself, which
    /// is needed only by [`EntropyModel::f_entropy_value`].
    pub fn custom(f_second: ScalarFn<R>, f: Option<ScalarFn<R>>) -> Result<Self> {
        let probes = 33usize;
        for k in 0..probes {
            let t = -8.0 + 16.0 * k as f64 / (probes - 1) as f64;
            let z = R::of(10f64.powf(t));
            let v = f_second(z);
            if !(v.is_finite() && v > R::zero()) {
                return Err(Error::NonConvex {
                    z: z.view(),
                    value: v.view(),
                });
            }
        }
        Ok(EntropyModel {
            kind: EntropyKind::Custom,
            custom_f: f,
            custom_f_second: Some(f_second),
        })
    }

    pub fn kind(&self) -> EntropyKind<R> {
        self.kind
    }

    /// `f(z)` for `z > 0`.
    pub fn f(&self, z: R) -> Result<R> {
        let two = R::of(2.0);
        Ok(match self.kind {
            EntropyKind::Boltzmann => z * z.ln(),
            EntropyKind::Quadratic => z * z / two,
            EntropyKind::Cross => -z.ln(),
            EntropyKind::Reciprocal => (two * z).recip(),
            EntropyKind::Gamma(g) => z.powf(two - g) / ((R::one() - g) * (two - g)),
            EntropyKind::Custom => match &self.custom_f {
                Some(f) => f(z),
                None => return Err(Error::MissingEntropyFunction),
            },
        })
    }

    /// `f''(z)` for `z > 0`; strictly positive by convexity.
    pub fn f_second(&self, z: R) -> R {
        match self.kind {
            EntropyKind::Boltzmann => z.recip(),
            EntropyKind::Quadratic => R::one(),
            EntropyKind::Cross => (z * z).recip(),
            EntropyKind::Reciprocal => (z * z * z).recip(),
            EntropyKind::Gamma(g) => z.powf(-g),
            EntropyKind::Custom => (self.custom_f_second.as_ref().expect("custom f'' present"))(z),
        }
    }

    /// Closed-form `h(y)` when the kind has one.
    pub fn h_closed(&self, y: R) -> Option<R> {
        let one = R::one();
        let two = R::of(2.0);
        match self.kind {
            EntropyKind::Boltzmann => Some(y.ln()),
            EntropyKind::Quadratic => Some(-two * (y.sqrt().recip() - one)),
            EntropyKind::Cross => Some(two * (y.sqrt() - one)),
            EntropyKind::Reciprocal => Some(y - one),
            EntropyKind::Gamma(g) => Some(two / (g - one) * (y.powf((g - one) / two) - one)),
            EntropyKind::Custom => None,
        }
    }

    /// `h(y)`: closed form when available, quadrature otherwise.
    ///
    /// Negative for `y < 1`, zero at 1, positive for `y > 1`; strictly
    /// increasing since `h'(y) = sqrt(f''(1/y)) y^(-3/2) > 0`.
    pub fn h(&self, y: R) -> Result<R> {
        if !(y.is_finite() && y > R::zero()) {
            return Err(Error::DomainError { y: y.view() });
        }
        match self.h_closed(y) {
            Some(v) if v.is_finite() => Ok(v),
            Some(_) => Err(Error::DomainError { y: y.view() }),
            None => self.h_numeric(y),
        }
    }

    /// `h(y)` by adaptive quadrature of the defining integral.
    pub fn h_numeric(&self, y: R) -> Result<R> {
        h_numeric(|z| self.f_second(z), y)
    }

    /// Inverts `h`; closed-form per kind, monotone bisection for custom.
    pub fn h_invert(&self, target: R) -> Result<R> {
        if !target.is_finite() {
            return Err(Error::HInversionOutOfRange {
                target: target.view(),
            });
        }
        let one = R::one();
        let two = R::of(2.0);
        let out_of_range = || Error::HInversionOutOfRange {
            target: target.view(),
        };
        match self.kind {
            EntropyKind::Boltzmann => Ok(target.exp()),
            EntropyKind::Quadratic => {
                // h < 2
                if target >= two {
                    return Err(out_of_range());
                }
                let r = two / (two - target);
                Ok(r * r)
            }
            EntropyKind::Cross => {
                // h > -2
                if target <= -two {
                    return Err(out_of_range());
                }
                let r = one + target / two;
                Ok(r * r)
            }
            EntropyKind::Reciprocal => {
                // h > -1
                if target <= -one {
                    return Err(out_of_range());
                }
                Ok(target + one)
            }
            EntropyKind::Gamma(g) => {
                let base = one + target * (g - one) / two;
                if base <= R::zero() {
                    return Err(out_of_range());
                }
                Ok(base.powf(two / (g - one)))
            }
            EntropyKind::Custom => self.h_invert_bisect(target),
        }
    }

    fn h_invert_bisect(&self, target: R) -> Result<R> {
        let one = R::one();
        let two = R::of(2.0);
        let (mut lo, mut hi) = if target >= R::zero() {
            let mut hi = two;
            while self.h(hi)? < target {
                hi *= two;
                if hi > R::of(1e12) {
                    return Err(Error::HInversionOutOfRange {
                        target: target.view(),
                    });
                }
            }
            (one, hi)
        } else {
            let mut lo = R::of(0.5);
            while self.h(lo)? > target {
                lo *= R::of(0.5);
                if lo < R::of(1e-12) {
                    return Err(Error::HInversionOutOfRange {
                        target: target.view(),
                    });
                }
            }
            (lo, one)
        };
        let tol = R::tol(H_INVERT_TOL);
        while hi - lo > tol * lo.abs().max(one) {
            let mid = (lo + hi) * R::of(0.5);
            if self.h(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo + hi) * R::of(0.5))
    }

    /// The entropy functional: trapezoid integral of `f(p(x))` over the
    /// support.
    pub fn f_entropy_value(&self, p: &GridDensity<R>) -> Result<R> {
        let dx = p.spacing();
        let n = p.num_intervals();
        let half = R::of(0.5);
        let mut terms = Vec::with_capacity(n + 1);
        for (i, &v) in p.values().iter().enumerate() {
            let fv = self.f(v)?;
            let w = if i == 0 || i == n { half } else { R::one() };
            terms.push(w * fv);
        }
        Ok(ksum(terms) * dx)
    }
}

/// `h(y)` by adaptive Simpson quadrature of
/// `sqrt(f''(1/z)) * z^(-3/2)` over `[min(1, y), max(1, y)]`, signed so the
/// integral runs from 1 to `y`.
pub fn h_numeric<R: Real, F: Fn(R) -> R>(f_second: F, y: R) -> Result<R> {
    if !(y.is_finite() && y > R::zero()) {
        return Err(Error::DomainError { y: y.view() });
    }
    let one = R::one();
    if y == one {
        return Ok(R::zero());
    }
    let integrand = |z: R| {
        let fs = f_second(z.recip());
        fs.sqrt() * z.powf(R::of(-1.5))
    };
    let tol = R::tol(H_QUAD_TOL);
    if y > one {
        adaptive_simpson(&integrand, one, y, tol)
    } else {
        Ok(-adaptive_simpson(&integrand, y, one, tol)?)
    }
}
