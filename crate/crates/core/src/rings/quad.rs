use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{is_squarefree, parse_rational, rat, ratio, Commutative, Rational, RationalAlgebra, Scalar};
use crate::error::{Error, Result};

/// The imaginary-quadratic field `Q(√-m)` with integral basis `1, ω_K` where
/// `ω_K = (m+√-m)/2` for `m ≡ 3 mod 4` and `ω_K = m+√-m` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    m: u32,
}

impl QuadField {
    pub fn new(m: u32) -> Result<Self> {
        if !is_squarefree(m as u64) {
            return Err(Error::Parameter(format!("m = {m} is not a positive squarefree integer")));
        }
        Ok(QuadField { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Whether `m ≡ 3 mod 4`, i.e. the discriminant `-m` is odd.
    pub fn disc_is_odd(&self) -> bool {
        self.m % 4 == 3
    }

    /// The field discriminant `d_K` (negative).
    pub fn discriminant(&self) -> i64 {
        if self.disc_is_odd() {
            -(self.m as i64)
        } else {
            -4 * self.m as i64
        }
    }

    /// `ω_K + ω̄_K = 2 Re ω_K`.
    pub fn omega_trace(&self) -> i64 {
        if self.disc_is_odd() {
            self.m as i64
        } else {
            2 * self.m as i64
        }
    }

    /// `ω_K ω̄_K = |ω_K|²`.
    pub fn omega_norm(&self) -> i64 {
        let m = self.m as i64;
        if self.disc_is_odd() {
            m * (m + 1) / 4
        } else {
            m * (m + 1)
        }
    }

    pub fn elem(&self, a: Rational, b: Rational) -> Quad {
        Quad { a, b, field: *self }
    }

    pub fn int(&self, a: i64, b: i64) -> Quad {
        self.elem(rat(a), rat(b))
    }

    pub fn zero(&self) -> Quad {
        self.int(0, 0)
    }

    pub fn one(&self) -> Quad {
        self.int(1, 0)
    }

    pub fn omega(&self) -> Quad {
        self.int(0, 1)
    }

    /// Units of `O_K`, in a fixed order.
    pub fn units(&self) -> Vec<Quad> {
        let mut out = vec![self.one(), -self.one()];
        match self.m {
            1 => {
                let i = self.gaussian_int(0, 1);
                out.push(i.clone());
                out.push(-i);
            }
            3 => {
                // ω_K = (3+√-3)/2; the primitive sixth roots are ±(ω_K - 1), ±(ω_K - 2)
                for u in [self.int(-1, 1), self.int(-2, 1)] {
                    out.push(u.clone());
                    out.push(-u);
                }
            }
            _ => {}
        }
        out
    }

    /// `x + y√-1`, only meaningful for `m = 1` where `ω_K = 1 + i`.
    pub fn gaussian(&self, re: Rational, im: Rational) -> Quad {
        debug_assert_eq!(self.m, 1);
        self.elem(&re - &im, im)
    }

    pub fn gaussian_int(&self, re: i64, im: i64) -> Quad {
        self.gaussian(rat(re), rat(im))
    }

    /// Parses `"a+b*w"`, `"a-b*w"`, `"a"` or `"b*w"`.
    pub fn parse(&self, s: &str) -> Result<Quad> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid quadratic integer '{s}'"));
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('w') {
            return Ok(self.elem(parse_rational(&t)?, Rational::zero()));
        }
        let body = &t[..t.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
        };
        Ok(self.elem(parse_rational(a_str).map_err(|_| bad())?, b))
    }
}

/// Element `a + b·ω_K` of `Q(√-m)`, stored in the `(1, ω_K)` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
    pub field: QuadField,
}

impl Quad {
    pub fn m(&self) -> u32 {
        self.field.m
    }

    fn same_field(&self, other: &Quad) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Parameter(format!(
                "mixed field parameters m = {} and m = {}",
                self.field.m, other.field.m
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Quad) -> Result<Quad> {
        self.same_field(other)?;
        Ok(self.field.elem(&self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &Quad) -> Result<Quad> {
        self.same_field(other)?;
        Ok(self.field.elem(&self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &Quad) -> Result<Quad> {
        self.same_field(other)?;
        // ω² = tω - n
        let t = rat(self.field.omega_trace());
        let n = rat(self.field.omega_norm());
        let bd = &self.b * &other.b;
        let a = &self.a * &other.a - &n * &bd;
        let b = &self.a * &other.b + &self.b * &other.a + &t * &bd;
        Ok(self.field.elem(a, b))
    }

    pub fn conjugate(&self) -> Quad {
        let t = rat(self.field.omega_trace());
        self.field.elem(&self.a + &t * &self.b, -self.b.clone())
    }

    pub fn norm(&self) -> Rational {
        let t = rat(self.field.omega_trace());
        let n = rat(self.field.omega_norm());
        &self.a * &self.a + &t * &self.a * &self.b + &n * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        rat(2) * &self.a + rat(self.field.omega_trace()) * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// Real part `a + b Re ω_K`.
    pub fn real_part(&self) -> Rational {
        &self.a + ratio(self.field.omega_trace(), 2) * &self.b
    }

    /// Imaginary part for `m = 1`, where `ω_K = 1 + i`.
    pub fn gaussian_im(&self) -> Rational {
        debug_assert_eq!(self.field.m, 1);
        self.b.clone()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b < Rational::zero() {
            write!(f, "{}-{}*w", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        self.checked_add(&rhs).expect("field mismatch")
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        self.checked_sub(&rhs).expect("field mismatch")
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        self.checked_mul(&rhs).expect("field mismatch")
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        self.field.elem(-self.a, -self.b)
    }
}

impl Scalar for Quad {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm().recip();
        let c = self.conjugate();
        Some(self.field.elem(c.a * &n, c.b * &n))
    }
    fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl RationalAlgebra for Quad {
    fn from_rational_like(&self, r: &Rational) -> Self {
        self.field.elem(r.clone(), Rational::zero())
    }
    fn re(&self) -> Rational {
        self.real_part()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.field.elem(&self.a * r, &self.b * r)
    }
}

impl Commutative for Quad {}
