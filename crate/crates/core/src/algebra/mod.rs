//! Exact scalar and matrix arithmetic.

mod matrix;
mod poly;
mod random;
mod rational;

pub use matrix::{EchelonPivots, RingMatrix};
pub use poly::{Catalog, Coefficient, Monomial, Polynomial, QPoly, ZPoly};
pub use random::{random_specialization, DEFAULT_SPECIALIZATION_BOUND};
pub use rational::{rational, Rational};

use std::fmt::Debug;

use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic, as needed by the matrix routines.
///
/// Methods take references so that polynomial entries are not cloned on
/// every operation.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `q * rhs == self`, or `None` when `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Rings into which rationals embed.
pub trait RationalAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl RationalAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl<C: Coefficient> Ring for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Polynomial::div_exact(self, rhs)
    }
}

impl RationalAlgebra for QPoly {
    fn from_rational(q: &Rational) -> Self {
        Polynomial::constant(q.clone())
    }
}
