//! Degree-2 symplectic modular groups over Z, O_K and the Hurwitz order:
//! membership, generators, seeded sampling and the Möbius action.

mod action;
mod elem;
mod generators;

pub use action::{cocycle, cocycle_vee, mobius, mobius_expanded, sample_point};
pub use elem::{symplectic_j, GroupElem, Membership};
pub use generators::{
    generators, lower_translation, point_rng, rotation, sample_word, sample_word_indexed, translation, Sampler, DEFAULT_WORD_CAP,
};

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::{rat, Quad, QuadField, Quaternion, Rational, RationalAlgebra, Scalar, F4};

/// The five groups: `Γ₂(Z)`, `Γ₂(O_K)`, `Sp₂(O)`, `Γ₂(O)` and `Γ₂*(O)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Siegel,
    Hermitian(QuadField),
    QuatSp,
    QuatSpecial,
    QuatExtended,
}

impl GroupKind {
    pub fn hermitian(m: u32) -> Result<Self> {
        Ok(GroupKind::Hermitian(QuadField::new(m)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::Siegel => "siegel",
            GroupKind::Hermitian(_) => "hermitian",
            GroupKind::QuatSp => "quat-sp",
            GroupKind::QuatSpecial => "quat-special",
            GroupKind::QuatExtended => "quat-extended",
        }
    }

    pub fn m(&self) -> Option<u32> {
        match self {
            GroupKind::Hermitian(f) => Some(f.m()),
            _ => None,
        }
    }

    pub fn parse(name: &str, m: Option<u32>) -> Result<Self> {
        match name {
            "siegel" => Ok(GroupKind::Siegel),
            "hermitian" => GroupKind::hermitian(m.ok_or_else(|| Error::Parse("hermitian kind needs m".into()))?),
            "quat-sp" => Ok(GroupKind::QuatSp),
            "quat-special" => Ok(GroupKind::QuatSpecial),
            "quat-extended" => Ok(GroupKind::QuatExtended),
            other => Err(Error::Parse(format!("unknown group kind '{other}'"))),
        }
    }

    pub fn is_quaternionic(&self) -> bool {
        matches!(self, GroupKind::QuatSp | GroupKind::QuatSpecial | GroupKind::QuatExtended)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Hermitian(k) => write!(f, "hermitian(m={})", k.m()),
            k => f.write_str(k.name()),
        }
    }
}

/// Coefficient rings of the modular groups. The order has a fixed Z-basis
/// `b₁, …, b_k` (`1`; `1, ω_K`; `1, i, j, ω`) spanning the off-diagonal
/// entries of Hermitian matrices.
pub trait ModularRing: RationalAlgebra + fmt::Display {
    /// A representative element for the kind, or a parameter error if the
    /// kind uses a different ring.
    fn proto_for(kind: &GroupKind) -> Result<Self>;

    fn order_basis(&self) -> Vec<Self>;

    /// Rational coordinates in [`ModularRing::order_basis`].
    fn order_coords(&self) -> Vec<Rational>;

    fn parse_like(&self, s: &str) -> Result<Self>;

    /// Pairs `(u₁, u₂)` for which `U = diag(u₁, u₂)` yields the generator `diag(U, Ū⁻ᵗ)`.
    fn diagonal_units(&self, kind: &GroupKind) -> Vec<(Self, Self)>;

    /// Conditions beyond `M̄ᵗJM = J`; returns the first violated one.
    fn extra_membership(_kind: &GroupKind, _m: &Mat<Self>) -> Option<String> {
        None
    }

    /// `λxλ⁻¹` for `λ = (1+i)/√2`; trivial for commutative rings.
    fn lambda_conj(&self) -> Self {
        self.clone()
    }

    /// `λ⁻¹xλ`.
    fn lambda_conj_inv(&self) -> Self {
        self.clone()
    }

    /// `λ²`.
    fn lambda_square(&self) -> Self {
        self.one_like()
    }

    fn from_coords(&self, c: &[Rational]) -> Self {
        self.order_basis()
            .iter()
            .zip(c)
            .fold(self.zero_like(), |acc, (b, x)| acc + b.scale(x))
    }

    /// `(b_ν b̄_μ + b_μ b̄_ν)`, the Gram matrix of the norm form on the basis.
    fn order_gram(&self) -> Mat<BigInt> {
        let b = self.order_basis();
        Mat::from_fn(b.len(), b.len(), |i, j| {
            let x = b[i].clone() * b[j].conj();
            (rat(2) * x.re()).to_integer()
        })
    }
}

impl ModularRing for Rational {
    fn proto_for(kind: &GroupKind) -> Result<Self> {
        match kind {
            GroupKind::Siegel => Ok(rat(0)),
            k => Err(Error::Parameter(format!("{k} does not have rational entries"))),
        }
    }
    fn order_basis(&self) -> Vec<Self> {
        vec![rat(1)]
    }
    fn order_coords(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
    fn parse_like(&self, s: &str) -> Result<Self> {
        crate::rings::parse_rational(s)
    }
    fn diagonal_units(&self, _kind: &GroupKind) -> Vec<(Self, Self)> {
        vec![(rat(-1), rat(1))]
    }
}

impl ModularRing for Quad {
    fn proto_for(kind: &GroupKind) -> Result<Self> {
        match kind {
            GroupKind::Hermitian(f) => Ok(f.zero()),
            k => Err(Error::Parameter(format!("{k} does not have entries in O_K"))),
        }
    }
    fn order_basis(&self) -> Vec<Self> {
        vec![self.field.one(), self.field.omega()]
    }
    fn order_coords(&self) -> Vec<Rational> {
        vec![self.a.clone(), self.b.clone()]
    }
    fn parse_like(&self, s: &str) -> Result<Self> {
        self.field.parse(s)
    }
    fn diagonal_units(&self, _kind: &GroupKind) -> Vec<(Self, Self)> {
        let mut out = vec![(-self.field.one(), self.field.one())];
        for u in self.field.units() {
            if !u.is_real() {
                let c = u.conjugate();
                out.push((u, c));
            }
        }
        out
    }
    fn extra_membership(_kind: &GroupKind, m: &Mat<Self>) -> Option<String> {
        match m.det() {
            Ok(d) if d == m.proto().one_like() => None,
            Ok(d) => Some(format!("det M = {d}, expected 1")),
            Err(e) => Some(e.to_string()),
        }
    }
}

impl ModularRing for Quaternion {
    fn proto_for(kind: &GroupKind) -> Result<Self> {
        if kind.is_quaternionic() {
            Ok(Quaternion::zero())
        } else {
            Err(Error::Parameter(format!("{kind} does not have quaternion entries")))
        }
    }
    fn order_basis(&self) -> Vec<Self> {
        Quaternion::hurwitz_basis().to_vec()
    }
    fn order_coords(&self) -> Vec<Rational> {
        self.hurwitz_coords().to_vec()
    }
    fn parse_like(&self, s: &str) -> Result<Self> {
        Quaternion::parse(s)
    }
    fn diagonal_units(&self, kind: &GroupKind) -> Vec<(Self, Self)> {
        let mut units = vec![Quaternion::i(), Quaternion::j()];
        if *kind != GroupKind::QuatSpecial {
            units.push(Quaternion::omega());
        }
        units.into_iter().map(|u| (u, Quaternion::one())).collect()
    }
    fn extra_membership(kind: &GroupKind, m: &Mat<Self>) -> Option<String> {
        if *kind != GroupKind::QuatSpecial {
            return None;
        }
        match det_mod_wp(m) {
            Ok(F4::One) => None,
            Ok(d) => Some(format!("det(M mod P) = {d}, expected 1")),
            Err(e) => Some(e.to_string()),
        }
    }
    fn lambda_conj(&self) -> Self {
        let p = Quaternion::int(1, 1, 0, 0);
        (p.clone() * self.clone() * p.conjugate()).scale(&crate::rings::ratio(1, 2))
    }
    fn lambda_conj_inv(&self) -> Self {
        let p = Quaternion::int(1, 1, 0, 0);
        (p.conjugate() * self.clone() * p).scale(&crate::rings::ratio(1, 2))
    }
    fn lambda_square(&self) -> Self {
        Quaternion::i()
    }
}

/// Determinant of the reduction of a Hurwitz matrix modulo ℘, in `F₄`.
pub fn det_mod_wp(m: &Mat<Quaternion>) -> Result<F4> {
    m.try_map(F4::reduce)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_of_the_order_bases() {
        assert_eq!(rat(0).order_gram(), Mat::<BigInt>::from_i64(&[vec![2]]));
        let k = QuadField::new(1).unwrap();
        assert_eq!(k.zero().order_gram(), Mat::<BigInt>::from_i64(&[vec![2, 2], vec![2, 4]]));
        let k = QuadField::new(3).unwrap();
        assert_eq!(k.zero().order_gram(), Mat::<BigInt>::from_i64(&[vec![2, 3], vec![3, 6]]));
        assert_eq!(
            Quaternion::zero().order_gram(),
            Mat::<BigInt>::from_i64(&[vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 2, 1], vec![1, 1, 1, 2]])
        );
    }

    #[test]
    fn half_turn_conjugation_preserves_the_order() {
        for b in Quaternion::hurwitz_basis() {
            assert!(b.lambda_conj().is_hurwitz());
            assert_eq!(b.lambda_conj().lambda_conj_inv(), b);
        }
        assert_eq!(Quaternion::j().lambda_conj(), Quaternion::k());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in [GroupKind::Siegel, GroupKind::hermitian(7).unwrap(), GroupKind::QuatSp, GroupKind::QuatSpecial, GroupKind::QuatExtended] {
            assert_eq!(GroupKind::parse(k.name(), k.m()).unwrap(), k);
        }
        assert!(GroupKind::parse("hermitian", Some(4)).is_err());
    }
}
