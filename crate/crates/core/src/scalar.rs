//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Euclid, Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Besides the arithmetic bounds, each scalar carries its own default
/// tolerances, since `1e-12` is meaningful for `f64` but below `f32`
/// resolution.
pub trait Real:
    Float
    + Euclid
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Tolerance for exact algebraic identities (unitarity, idempotence, norms).
    fn algebraic_tol() -> Self;
    /// Tolerance for derived physics checks (formula vs. simulation agreement).
    fn physics_tol() -> Self;
    /// Lower bound accepted for eigenvalues of a density matrix.
    fn psd_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    fn algebraic_tol() -> Self {
        1e-12
    }
    fn physics_tol() -> Self {
        1e-9
    }
    fn psd_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn algebraic_tol() -> Self {
        1e-5
    }
    fn physics_tol() -> Self {
        1e-4
    }
    fn psd_tol() -> Self {
        1e-5
    }
}

/// Tolerance pair used by checks that accept overrides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub algebraic: T,
    pub physics: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            algebraic: T::algebraic_tol(),
            physics: T::physics_tol(),
        }
    }
}
