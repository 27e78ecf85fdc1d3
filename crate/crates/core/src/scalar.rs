//! Scalar abstraction: the whole library is generic over the floating-point
//! type through [`Real`] (`f32` or `f64`).

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar (f32 or f64).
pub trait Real: Float + FromPrimitive + NumAssign + Debug + Send + Sync + 'static {
    /// Embeds an `f64` constant into the scalar type.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must embed into the scalar type")
    }

    /// Lossy view as `f64`, for diagnostics.
    #[inline]
    fn view(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Absolute tolerance `tol`, widened so f32 instantiations stay attainable.
    #[inline]
    fn tol(tol: f64) -> Self {
        Self::of(tol).max(Self::of(32.0) * Self::epsilon())
    }
}

impl<T> Real for T where T: Float + FromPrimitive + NumAssign + Debug + Send + Sync + 'static {}

/// Compensated (Kahan) accumulator; keeps long uniform-grid sums at a few ulps
/// independent of length.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Kahan<R: Real> {
    sum: R,
    carry: R,
}

impl<R: Real> Kahan<R> {
    pub fn new() -> Self {
        Kahan {
            sum: R::zero(),
            carry: R::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: R) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> R {
        self.sum
    }
}

/// Kahan sum of an iterator.
pub(crate) fn ksum<R: Real>(iter: impl IntoIterator<Item = R>) -> R {
    let mut acc = Kahan::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}
