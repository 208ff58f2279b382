use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{parse_rational, rat, ratio, Rational, RationalAlgebra, Scalar};
use crate::error::{Error, Result};

/// Rational quaternion `a₁ + a₂i + a₃j + a₄k` with `i² = j² = -1`, `k = ij = -ji`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub c: [Rational; 4],
}

impl Quaternion {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational) -> Self {
        Quaternion { c: [a1, a2, a3, a4] }
    }

    pub fn int(a1: i64, a2: i64, a3: i64, a4: i64) -> Self {
        Self::new(rat(a1), rat(a2), rat(a3), rat(a4))
    }

    pub fn zero() -> Self {
        Self::int(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::int(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::int(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::int(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::int(0, 0, 0, 1)
    }

    /// `ω = (1+i+j+k)/2`.
    pub fn omega() -> Self {
        let h = ratio(1, 2);
        Self::new(h.clone(), h.clone(), h.clone(), h)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// The Z-basis `1, i, j, ω` of the Hurwitz order.
    pub fn hurwitz_basis() -> [Quaternion; 4] {
        [Self::one(), Self::i(), Self::j(), Self::omega()]
    }

    /// Coordinates with respect to [`Quaternion::hurwitz_basis`].
    pub fn hurwitz_coords(&self) -> [Rational; 4] {
        let [a1, a2, a3, a4] = &self.c;
        [a1 - a4, a2 - a4, a3 - a4, rat(2) * a4]
    }

    pub fn from_hurwitz_coords(h: &[Rational; 4]) -> Self {
        let a4 = &h[3] / rat(2);
        Self::new(&h[0] + &a4, &h[1] + &a4, &h[2] + &a4, a4)
    }

    /// All coefficients in Z, or all in Z + ½.
    pub fn is_hurwitz(&self) -> bool {
        self.hurwitz_coords().iter().all(|x| x.is_integer())
    }

    /// Integer Hurwitz coordinates; `None` if not in the order.
    pub fn hurwitz_int_coords(&self) -> Option<[BigInt; 4]> {
        let h = self.hurwitz_coords();
        if h.iter().all(|x| x.is_integer()) {
            Some(h.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        let [a1, a2, a3, a4] = &self.c;
        Self::new(a1.clone(), -a2.clone(), -a3.clone(), -a4.clone())
    }

    /// Reduced norm `x x̄ = a₁² + a₂² + a₃² + a₄²`.
    pub fn norm(&self) -> Rational {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quaternion { c: self.c.clone().map(|x| x * r) }
    }

    /// The 24 units of the Hurwitz order in a fixed order:
    /// `±1, ±i, ±j, ±k`, then `(±1±i±j±k)/2` by sign pattern.
    pub fn hurwitz_units() -> Vec<Quaternion> {
        let mut out = Vec::with_capacity(24);
        for idx in 0..4 {
            for s in [1, -1] {
                let mut c = [0i64; 4];
                c[idx] = s;
                out.push(Self::int(c[0], c[1], c[2], c[3]));
            }
        }
        for bits in 0..16u32 {
            let sgn = |b: u32| if bits & (1 << (3 - b)) == 0 { ratio(1, 2) } else { ratio(-1, 2) };
            out.push(Self::new(sgn(0), sgn(1), sgn(2), sgn(3)));
        }
        out
    }

    /// Nearest Hurwitz quaternion: the better of the nearest Lipschitz point and
    /// the nearest point of `Z⁴ + (½,½,½,½)`; ties go to the lexicographically
    /// smaller coefficient vector.
    pub fn round_hurwitz(&self) -> Quaternion {
        let lip = Quaternion { c: self.c.clone().map(|x| round_half_down(&x)) };
        let h = ratio(1, 2);
        let half = Quaternion {
            c: self.c.clone().map(|x| round_half_down(&(x - &h)) + &h),
        };
        let dl = (self.clone() - lip.clone()).norm();
        let dh = (self.clone() - half.clone()).norm();
        match dl.cmp(&dh) {
            Ordering::Less => lip,
            Ordering::Greater => half,
            Ordering::Equal => {
                if lip.c <= half.c {
                    lip
                } else {
                    half
                }
            }
        }
    }

    /// `a = q·b + r` with `N(r) < N(b)`; `q` rounds `a b⁻¹`.
    pub fn div_rem_right(&self, b: &Quaternion) -> (Quaternion, Quaternion) {
        let q = (self.clone() * b.inv().expect("division by zero")).round_hurwitz();
        let r = self.clone() - q.clone() * b.clone();
        (q, r)
    }

    /// `a = b·q + r` with `N(r) < N(b)`; `q` rounds `b⁻¹ a`.
    pub fn div_rem_left(&self, b: &Quaternion) -> (Quaternion, Quaternion) {
        let q = (b.inv().expect("division by zero") * self.clone()).round_hurwitz();
        let r = self.clone() - b.clone() * q.clone();
        (q, r)
    }

    /// Parses `"[a1,a2,a3,a4]"` with rational components.
    pub fn parse(s: &str) -> Result<Quaternion> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("invalid quaternion '{s}'")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("invalid quaternion '{s}'")));
        }
        Ok(Self::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
            parse_rational(parts[3])?,
        ))
    }
}

/// Nearest integer, halves rounded towards -∞.
fn round_half_down(x: &Rational) -> Rational {
    let h = ratio(1, 2);
    let up = (x + &h).floor();
    if &up - x == h {
        up - Rational::one()
    } else {
        up
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        let [a1, a2, a3, a4] = self.c;
        let [b1, b2, b3, b4] = rhs.c;
        Quaternion::new(a1 + b1, a2 + b2, a3 + b3, a4 + b4)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        let [a1, a2, a3, a4] = self.c;
        let [b1, b2, b3, b4] = rhs.c;
        Quaternion::new(a1 - b1, a2 - b2, a3 - b3, a4 - b4)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let [a1, a2, a3, a4] = &self.c;
        let [b1, b2, b3, b4] = &rhs.c;
        Quaternion::new(
            a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
            a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
            a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
            a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion { c: self.c.map(|x| -x) }
    }
}

impl Scalar for Quaternion {
    const COMMUTATIVE: bool = false;

    fn zero_like(&self) -> Self {
        Quaternion::zero()
    }
    fn one_like(&self) -> Self {
        Quaternion::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            None
        } else {
            Some(self.conjugate().scale(&n.recip()))
        }
    }
    fn is_integral(&self) -> bool {
        self.is_hurwitz()
    }
}

impl RationalAlgebra for Quaternion {
    fn from_rational_like(&self, r: &Rational) -> Self {
        Quaternion::from_rational(r.clone())
    }
    fn re(&self) -> Rational {
        self.c[0].clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        Quaternion::scale(self, r)
    }
}

impl PartialOrd for Quaternion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quaternion {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}
