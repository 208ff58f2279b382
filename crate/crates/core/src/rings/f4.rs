use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Commutative, Quaternion, Scalar};
use crate::error::{Error, Result};

/// Residue class of `O/℘ ≅ F_4 = {0, 1, ω, ω̄}` with `ω̄ = ω² = ω + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum F4 {
    Zero,
    One,
    Omega,
    OmegaBar,
}

impl F4 {
    pub const ALL: [F4; 4] = [F4::Zero, F4::One, F4::Omega, F4::OmegaBar];

    /// Coordinates `(x, y)` of `x + yω` over F_2.
    fn bits(self) -> (u8, u8) {
        match self {
            F4::Zero => (0, 0),
            F4::One => (1, 0),
            F4::Omega => (0, 1),
            F4::OmegaBar => (1, 1),
        }
    }

    fn from_bits(x: u8, y: u8) -> F4 {
        match (x & 1, y & 1) {
            (0, 0) => F4::Zero,
            (1, 0) => F4::One,
            (0, 1) => F4::Omega,
            _ => F4::OmegaBar,
        }
    }

    /// Reduction of a Hurwitz quaternion modulo ℘. Since `1 ≡ i ≡ j mod ℘`,
    /// `c₁ + c₂i + c₃j + c₄ω ≡ (c₁+c₂+c₃) + c₄ω`.
    pub fn reduce(q: &Quaternion) -> Result<F4> {
        let h = q
            .hurwitz_int_coords()
            .ok_or_else(|| Error::Domain(format!("{q} is not a Hurwitz quaternion")))?;
        let x = (&h[0] + &h[1] + &h[2]).is_odd() as u8;
        let y = h[3].is_odd() as u8;
        Ok(F4::from_bits(x, y))
    }

    /// A fixed Hurwitz representative of the class.
    pub fn representative(self) -> Quaternion {
        match self {
            F4::Zero => Quaternion::zero(),
            F4::One => Quaternion::one(),
            F4::Omega => Quaternion::omega(),
            F4::OmegaBar => Quaternion::omega().conjugate(),
        }
    }

    pub fn inv(self) -> Option<F4> {
        match self {
            F4::Zero => None,
            F4::One => Some(F4::One),
            F4::Omega => Some(F4::OmegaBar),
            F4::OmegaBar => Some(F4::Omega),
        }
    }

    pub fn pow(self, e: u32) -> F4 {
        (0..e).fold(F4::One, |acc, _| acc * self)
    }

    pub fn from_int(n: &BigInt) -> F4 {
        if n.is_odd() {
            F4::One
        } else {
            F4::Zero
        }
    }
}

impl Add for F4 {
    type Output = F4;
    fn add(self, rhs: F4) -> F4 {
        let (a, b) = self.bits();
        let (c, d) = rhs.bits();
        F4::from_bits(a ^ c, b ^ d)
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, rhs: F4) -> F4 {
        // (a + bω)(c + dω) with ω² = ω + 1
        let (a, b) = self.bits();
        let (c, d) = rhs.bits();
        let bd = b & d;
        F4::from_bits((a & c) ^ bd, (a & d) ^ (b & c) ^ bd)
    }
}

impl Sub for F4 {
    type Output = F4;
    fn sub(self, rhs: F4) -> F4 {
        self + rhs
    }
}

impl Neg for F4 {
    type Output = F4;
    fn neg(self) -> F4 {
        self
    }
}

impl Scalar for F4 {
    fn zero_like(&self) -> Self {
        F4::Zero
    }
    fn one_like(&self) -> Self {
        F4::One
    }
    fn is_zero_elem(&self) -> bool {
        *self == F4::Zero
    }
    /// Quaternion conjugation induces the Frobenius `x ↦ x²` on `O/℘`.
    fn conj(&self) -> Self {
        *self * *self
    }
    fn inv(&self) -> Option<Self> {
        F4::inv(*self)
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl Commutative for F4 {}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            F4::Zero => "0",
            F4::One => "1",
            F4::Omega => "w",
            F4::OmegaBar => "wbar",
        };
        f.write_str(s)
    }
}
