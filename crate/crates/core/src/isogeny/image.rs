use num_bigint::BigInt;
use serde_json::json;

use super::{is_positive_leading, unit_like};
use crate::forms::{hyperbolic_sum, mat_json, EvenForm};
use crate::matrices::Mat;
use crate::rings::Rational;
use crate::symplectic::GroupKind;

/// An integral matrix `M̃` in the layout
/// `[[α, aᵗS₀, β], [b, K, c], [γ, dᵗS₀, δ]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthImage {
    kind: GroupKind,
    s0: Mat<BigInt>,
    m: Mat<BigInt>,
}

/// The named blocks of an [`OrthImage`]; `a` and `d` are recovered through `S₀⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthBlocks {
    pub alpha: Rational,
    pub a: Vec<Rational>,
    pub beta: Rational,
    pub b: Vec<Rational>,
    pub k: Mat<Rational>,
    pub c: Vec<Rational>,
    pub gamma: Rational,
    pub d: Vec<Rational>,
    pub delta: Rational,
}

impl OrthImage {
    pub(crate) fn from_parts(kind: GroupKind, s0: Mat<BigInt>, m: Mat<BigInt>) -> Self {
        OrthImage { kind, s0, m }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn matrix(&self) -> &Mat<BigInt> {
        &self.m
    }

    pub fn s0(&self) -> &Mat<BigInt> {
        &self.s0
    }

    /// `S₁ = U(1) ⊕ S₀`.
    pub fn s1(&self) -> Mat<BigInt> {
        hyperbolic_sum(&BigInt::from(1), &self.s0)
    }

    pub fn s1_form(&self) -> EvenForm {
        EvenForm::new(format!("S1({})", self.kind.name()), self.s1()).expect("S1 is even and non-degenerate")
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn identity(kind: GroupKind, s0: Mat<BigInt>) -> Self {
        let n = s0.rows() + 2;
        OrthImage { kind, s0, m: unit_like(n) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        OrthImage { kind: self.kind, s0: self.s0.clone(), m: &self.m * &rhs.m }
    }

    pub fn neg(&self) -> Self {
        OrthImage { kind: self.kind, s0: self.s0.clone(), m: -&self.m }
    }

    /// The representative of `±M̃` whose first nonzero entry is positive.
    pub fn normalized(&self) -> Self {
        if is_positive_leading(&self.m) {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn eq_projective(&self, other: &Self) -> bool {
        self.m == other.m || self.m == -&other.m
    }

    pub fn blocks(&self) -> OrthBlocks {
        let n = self.dim() - 2;
        let m = self.m.to_rational();
        let s0inv = self.s0.to_rational().inverse().expect("S0 is invertible");
        let row = |i: usize| (1..=n).map(|j| m[(i, j)].clone()).collect::<Vec<_>>();
        let col = |j: usize| (1..=n).map(|i| m[(i, j)].clone()).collect::<Vec<_>>();
        let solve = |v: Vec<Rational>| {
            (0..n).map(|i| (0..n).map(|j| s0inv[(i, j)].clone() * v[j].clone()).sum()).collect::<Vec<Rational>>()
        };
        OrthBlocks {
            alpha: m[(0, 0)].clone(),
            a: solve(row(0)),
            beta: m[(0, n + 1)].clone(),
            b: col(0),
            k: m.block(1, 1, n, n),
            c: col(n + 1),
            gamma: m[(n + 1, 0)].clone(),
            d: solve(row(n + 1)),
            delta: m[(n + 1, n + 1)].clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let b = self.blocks();
        let v = |x: &[Rational]| x.iter().map(|r| json!(r.to_string())).collect::<Vec<_>>();
        let k: Vec<Vec<String>> = b.k.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        json!({
            "kind": self.kind.name(),
            "m": self.kind.m(),
            "matrix": mat_json(&self.m),
            "blocks": {
                "alpha": b.alpha.to_string(),
                "a": v(&b.a),
                "beta": b.beta.to_string(),
                "b": v(&b.b),
                "K": k,
                "c": v(&b.c),
                "gamma": b.gamma.to_string(),
                "d": v(&b.d),
                "delta": b.delta.to_string(),
            },
        })
    }
}
