use std::fmt;

use super::{GroupKind, ModularRing};
use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::Scalar;

/// `J = [[0, I], [-I, 0]]`.
pub fn symplectic_j<T: Scalar>(proto: &T) -> Mat<T> {
    let (z, o) = (proto.zero_like(), proto.one_like());
    Mat::from_fn(4, 4, |i, j| {
        if j == i + 2 {
            o.clone()
        } else if i == j + 2 {
            -o.clone()
        } else {
            z.clone()
        }
    })
}

/// Result of a membership test; `diagnostic` names the first violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

impl Membership {
    fn pass() -> Self {
        Membership { ok: true, diagnostic: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Membership { ok: false, diagnostic: Some(msg.into()) }
    }
}

/// A group element `λ^h · M` with `λ = (1+i)/√2` and `h ∈ {0, 1}`; `h = 1`
/// only occurs for [`GroupKind::QuatExtended`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem<T> {
    pub kind: GroupKind,
    pub half_turn: bool,
    pub m: Mat<T>,
}

impl<T: ModularRing> GroupElem<T> {
    /// Validated constructor.
    pub fn new(kind: GroupKind, m: Mat<T>, half_turn: bool) -> Result<Self> {
        let check = Self::is_member(&kind, &m, half_turn);
        if !check.ok {
            return Err(Error::Domain(format!("not in {kind}: {}", check.diagnostic.unwrap_or_default())));
        }
        Ok(GroupElem { kind, half_turn, m })
    }

    pub(crate) fn unchecked(kind: GroupKind, m: Mat<T>, half_turn: bool) -> Self {
        GroupElem { kind, half_turn, m }
    }

    pub fn identity(kind: GroupKind) -> Result<Self> {
        let p = T::proto_for(&kind)?;
        Ok(GroupElem { kind, half_turn: false, m: Mat::identity_like(4, &p) })
    }

    pub fn is_member(kind: &GroupKind, m: &Mat<T>, half_turn: bool) -> Membership {
        let proto = match T::proto_for(kind) {
            Ok(p) => p,
            Err(e) => return Membership::fail(e.to_string()),
        };
        if m.rows() != 4 || m.cols() != 4 {
            return Membership::fail(format!("matrix is {}x{}, expected 4x4", m.rows(), m.cols()));
        }
        if m.entries().iter().any(|x| x.zero_like() != proto) {
            return Membership::fail("entries live in a different ring");
        }
        if half_turn && *kind != GroupKind::QuatExtended {
            return Membership::fail("half turn is only allowed in the extended group");
        }
        if let Some((i, j)) = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).find(|&p| !m[p].is_integral()) {
            return Membership::fail(format!("entry ({},{}) = {} is not integral", i + 1, j + 1, m[(i, j)]));
        }
        let j = symplectic_j(&proto);
        if &(&m.adjoint_transpose() * &j) * m != j {
            return Membership::fail("conj(M)^t J M != J");
        }
        if let Some(msg) = T::extra_membership(kind, m) {
            return Membership::fail(msg);
        }
        Membership::pass()
    }

    pub fn proto(&self) -> &T {
        self.m.proto()
    }

    /// Blocks `A, B, C, D`.
    pub fn blocks(&self) -> [Mat<T>; 4] {
        self.m.quarters()
    }

    /// `(λ^{h₁}M₁)(λ^{h₂}M₂) = λ^{h₁+h₂} (λ^{-h₂}M₁λ^{h₂}) M₂`, with `λ² = i`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let left = if rhs.half_turn { self.m.map(|x| x.lambda_conj_inv()) } else { self.m.clone() };
        let mut m = &left * &rhs.m;
        if self.half_turn && rhs.half_turn {
            m = m.left_scale(&self.proto().lambda_square());
        }
        GroupElem { kind: self.kind, half_turn: self.half_turn ^ rhs.half_turn, m }
    }

    /// `M⁻¹ = J⁻¹ M̄ᵗ J`, and `(λM)⁻¹ = λ · λ⁻¹(M⁻¹λ⁻²)λ`.
    pub fn inverse(&self) -> Self {
        let j = symplectic_j(self.proto());
        let jinv = -&j;
        let inv = &(&jinv * &self.m.adjoint_transpose()) * &j;
        if !self.half_turn {
            return GroupElem { kind: self.kind, half_turn: false, m: inv };
        }
        let minus_i = -self.proto().lambda_square();
        let m = inv.right_scale(&minus_i).map(|x| x.lambda_conj_inv());
        GroupElem { kind: self.kind, half_turn: true, m }
    }

    pub fn neg(&self) -> Self {
        GroupElem { kind: self.kind, half_turn: self.half_turn, m: -&self.m }
    }

    pub fn pow(&self, e: u32) -> Self {
        let id = GroupElem { kind: self.kind, half_turn: false, m: Mat::identity_like(4, self.proto()) };
        (0..e).fold(id, |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        !self.half_turn && self.m.is_identity()
    }

    /// `±I`.
    pub fn is_central_sign(&self) -> bool {
        !self.half_turn && (self.m.is_identity() || (-&self.m).is_identity())
    }

    /// Projective equality: equal up to `±I`.
    pub fn eq_projective(&self, other: &Self) -> bool {
        self.half_turn == other.half_turn && (self.m == other.m || self.m == -&other.m)
    }

    /// Same element with its matrix relabelled as another kind over the same ring.
    pub fn with_kind(&self, kind: GroupKind) -> Self {
        GroupElem { kind, half_turn: self.half_turn, m: self.m.clone() }
    }
}

impl<T: ModularRing> fmt::Display for GroupElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_turn {
            write!(f, "lambda * ")?;
        }
        write!(f, "{}", self.m)
    }
}
