//! Exact base rings: rationals, orders of imaginary-quadratic fields, rational
//! quaternions with the Hurwitz order, and the residue field `O/℘ = F_4`.

mod f4;
mod ideal;
mod quad;
mod quaternion;
mod rational;

pub use f4::F4;
pub use ideal::IdealBasis;
pub use quad::{Quad, QuadField};
pub use quaternion::Quaternion;
pub use rational::{int, parse_rational, rat, ratio, sqrt_rational, Rational};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring element usable as a matrix entry.
///
/// Elements carry whatever parameter their ring needs (the field parameter of
/// a [`Quad`]), so neutral elements are produced from an existing element.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether multiplication commutes.
    const COMMUTATIVE: bool = true;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// The ring's involution (complex or quaternionic conjugation, identity on Q and Z).
    fn conj(&self) -> Self;
    /// Two-sided inverse, if it exists in the ring.
    fn inv(&self) -> Option<Self>;
    /// Integrality in the ring's maximal order (Z, O_K or the Hurwitz order).
    fn is_integral(&self) -> bool;
}

/// Scalars that form an algebra over the rationals.
pub trait RationalAlgebra: Scalar {
    fn from_rational_like(&self, r: &Rational) -> Self;
    /// Real part, i.e. half the reduced trace.
    fn re(&self) -> Rational;
    /// Multiplication by a rational scalar.
    fn scale(&self, r: &Rational) -> Self {
        self.clone() * self.from_rational_like(r)
    }
}

/// Marker for commutative rings, where the usual determinant exists.
pub trait Commutative: Scalar {}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl RationalAlgebra for Rational {
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn re(&self) -> Rational {
        self.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Commutative for Rational {}

impl Scalar for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl Commutative for BigInt {}

/// Squarefree test by trial division.
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}
