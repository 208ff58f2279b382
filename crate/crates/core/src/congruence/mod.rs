//! Congruence subgroups of the modular groups, their paired discriminant
//! kernels, and a seeded harness checking both inclusions.

mod members;
mod verify;

pub use members::{construct_member, eps_diagonal, wp_conjugator};
pub use verify::{default_grid, verify_theorem, FailureDump, TheoremId, VerifyReport};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::element::AnyElem;
use crate::error::{Error, Result};
use crate::forms::{
    build_form, conjugated_kernel_test, diagonal_conjugator, in_discriminant_kernel, in_kernel_variant23, FormSpec, Orientation,
};
use crate::isogeny::OrthImage;
use crate::matrices::Mat;
use crate::rings::{is_squarefree, rat, IdealBasis, Quad, QuadField, Quaternion, Rational, F4};
use crate::symplectic::{GroupElem, GroupKind, ModularRing};

/// A congruence subgroup together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupSpec {
    /// `M ≡ εI mod N` in `Γ₂(Z)`.
    PrincipalSiegel { level: u32 },
    /// The nine congruences with moduli `n`, `N` and `Nn` in `Γ₂(Z)`.
    SiegelLevel { n: u32, level: u32 },
    /// `M ≡ εI mod N·O_K`, `ε ∈ Z`.
    PrincipalHermitian { m: u32, level: u32 },
    /// The Hermitian analogue of [`SubgroupSpec::SiegelLevel`] with `ε ∈ O_K`.
    HermitianLevel { m: u32, n: u32, level: u32 },
    /// `M ≡ εI mod 𝓘_N` for a squarefree `N | d_K`.
    IdealPrincipal { m: u32, level: u32 },
    /// `M ≡ εI mod N` in `Γ₂(O)`, plus the `N℘` condition for even `N`.
    QuatLevel { level: u32 },
    /// `M ≡ εI mod ℘`, `ε ∈ {1, ω, ω̄}`, in `Sp₂(O)`.
    WpPrincipal,
}

/// The unit `ε` found for a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Int(BigInt),
    Quad(Quad),
    F4(F4),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Int(x) => write!(f, "{x}"),
            Witness::Quad(x) => write!(f, "{x}"),
            Witness::F4(x) => write!(f, "{x}"),
        }
    }
}

/// Outcome of [`in_subgroup`]: the witness for members, the first violated
/// congruence otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCheck {
    pub member: bool,
    pub witness: Option<Witness>,
    pub violated: Option<String>,
}

impl SubgroupCheck {
    fn pass(w: Witness) -> Self {
        SubgroupCheck { member: true, witness: Some(w), violated: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        SubgroupCheck { member: false, witness: None, violated: Some(msg.into()) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "member": self.member,
            "epsilon": self.witness.as_ref().map(|w| w.to_string()),
            "violated": self.violated,
        })
    }
}

fn positive(x: u32, what: &str) -> Result<()> {
    if x == 0 {
        return Err(Error::Parameter(format!("{what} must be positive")));
    }
    Ok(())
}

fn divides(n: u32, level: u32) -> Result<()> {
    positive(n, "n")?;
    positive(level, "N")?;
    if level % n != 0 {
        return Err(Error::Parameter(format!("n = {n} must divide N = {level}")));
    }
    Ok(())
}

impl SubgroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SubgroupSpec::PrincipalSiegel { level } | SubgroupSpec::QuatLevel { level } => positive(level, "N"),
            SubgroupSpec::SiegelLevel { n, level } => divides(n, level),
            SubgroupSpec::PrincipalHermitian { m, level } => {
                QuadField::new(m)?;
                positive(level, "N")
            }
            SubgroupSpec::HermitianLevel { m, n, level } => {
                QuadField::new(m)?;
                divides(n, level)
            }
            SubgroupSpec::IdealPrincipal { m, level } => {
                let k = QuadField::new(m)?;
                positive(level, "N")?;
                if !is_squarefree(level as u64) || k.discriminant() % level as i64 != 0 {
                    return Err(Error::Parameter(format!(
                        "N = {level} must be a squarefree divisor of d_K = {}",
                        k.discriminant()
                    )));
                }
                Ok(())
            }
            SubgroupSpec::WpPrincipal => Ok(()),
        }
    }

    /// The group the subgroup lives in.
    pub fn ambient(&self) -> Result<GroupKind> {
        Ok(match *self {
            SubgroupSpec::PrincipalSiegel { .. } | SubgroupSpec::SiegelLevel { .. } => GroupKind::Siegel,
            SubgroupSpec::PrincipalHermitian { m, .. }
            | SubgroupSpec::HermitianLevel { m, .. }
            | SubgroupSpec::IdealPrincipal { m, .. } => GroupKind::hermitian(m)?,
            SubgroupSpec::QuatLevel { .. } => GroupKind::QuatSpecial,
            SubgroupSpec::WpPrincipal => GroupKind::QuatSp,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SubgroupSpec::PrincipalSiegel { .. } => "principal-siegel",
            SubgroupSpec::SiegelLevel { .. } => "siegel-level",
            SubgroupSpec::PrincipalHermitian { .. } => "principal-hermitian",
            SubgroupSpec::HermitianLevel { .. } => "hermitian-level",
            SubgroupSpec::IdealPrincipal { .. } => "ideal-principal",
            SubgroupSpec::QuatLevel { .. } => "quat-level",
            SubgroupSpec::WpPrincipal => "wp-principal",
        }
    }

    pub fn parse(name: &str, m: Option<u32>, n: Option<u32>, level: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| Error::Parse(format!("subgroup '{name}' needs --{flag}")));
        let spec = match name {
            "principal-siegel" => SubgroupSpec::PrincipalSiegel { level: need(level, "N")? },
            "siegel-level" => SubgroupSpec::SiegelLevel { n: need(n, "n")?, level: need(level, "N")? },
            "principal-hermitian" => SubgroupSpec::PrincipalHermitian { m: need(m, "m")?, level: need(level, "N")? },
            "hermitian-level" => SubgroupSpec::HermitianLevel { m: need(m, "m")?, n: need(n, "n")?, level: need(level, "N")? },
            "ideal-principal" => SubgroupSpec::IdealPrincipal { m: need(m, "m")?, level: need(level, "N")? },
            "quat-level" => SubgroupSpec::QuatLevel { level: need(level, "N")? },
            "wp-principal" => SubgroupSpec::WpPrincipal,
            other => return Err(Error::Parse(format!("unknown subgroup '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "spec": self.name() });
        let obj = v.as_object_mut().expect("object");
        let (m, n, level) = match *self {
            SubgroupSpec::PrincipalSiegel { level } | SubgroupSpec::QuatLevel { level } => (None, None, Some(level)),
            SubgroupSpec::SiegelLevel { n, level } => (None, Some(n), Some(level)),
            SubgroupSpec::PrincipalHermitian { m, level } | SubgroupSpec::IdealPrincipal { m, level } => (Some(m), None, Some(level)),
            SubgroupSpec::HermitianLevel { m, n, level } => (Some(m), Some(n), Some(level)),
            SubgroupSpec::WpPrincipal => (None, None, None),
        };
        for (k, x) in [("m", m), ("n", n), ("N", level)] {
            if let Some(x) = x {
                obj.insert(k.into(), json!(x));
            }
        }
        v
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// `x ∈ n·O` for the maximal order `O` of the ring.
fn in_multiple<T: ModularRing>(x: &T, n: i64) -> bool {
    x.order_coords().iter().all(|c| c.is_integer() && c.to_integer().is_multiple_of(&BigInt::from(n)))
}

/// First entry `(i, j)` with `m_ij − εδ_ij ∉ ideal`.
fn scalar_violation<T: ModularRing>(m: &Mat<T>, eps: &T, in_ideal: impl Fn(&T) -> bool) -> Option<(usize, usize)> {
    (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).find(|&(i, j)| {
        let x = if i == j { m[(i, j)].clone() - eps.clone() } else { m[(i, j)].clone() };
        !in_ideal(&x)
    })
}

/// `ε ∈ {0, …, N−1}` with `ε² ≡ 1 mod N`.
pub fn integer_units(level: u32) -> Vec<i64> {
    let n = level as i64;
    (0..n).filter(|e| (e * e - 1).rem_euclid(n) == 0).collect()
}

/// Searches `ε ∈ Z/N`, `ε² ≡ 1`, with `M ≡ εI` modulo the ideal.
fn principal<T: ModularRing>(m: &Mat<T>, level: u32, ideal: &str, in_ideal: impl Fn(&T) -> bool) -> SubgroupCheck {
    let p = m.proto();
    for e in integer_units(level) {
        if scalar_violation(m, &p.from_rational_like(&rat(e)), &in_ideal).is_none() {
            return SubgroupCheck::pass(Witness::Int(BigInt::from(e)));
        }
    }
    SubgroupCheck::fail(format!("M is not congruent to eps*I mod {ideal} for any eps with eps^2 = 1 mod {level}"))
}

/// The congruences shared by the Siegel and Hermitian level-`(n, N)` groups,
/// after the diagonal condition.
fn level_tail<T: ModularRing>(m: &Mat<T>, n: u32, level: u32) -> Option<String> {
    let (n, nn) = (n as i64, level as i64);
    let [a, _, _, d] = m.quarters();
    let one = m.proto().one_like();
    let at = |i: usize, j: usize| &m[(i, j)];
    let det2 = |x: &Mat<T>| x[(0, 0)].clone() * x[(1, 1)].clone() - x[(0, 1)].clone() * x[(1, 0)].clone();
    let checks: [(&str, T, i64); 9] = [
        ("det A = 1 mod N", det2(&a) - one.clone(), nn),
        ("det D = 1 mod N", det2(&d) - one, nn),
        ("a21 = 0 mod n", at(1, 0).clone(), n),
        ("b22 = 0 mod n", at(1, 3).clone(), n),
        ("d12 = 0 mod n", at(2, 3).clone(), n),
        ("c11 = 0 mod Nn", at(2, 0).clone(), nn * n),
        ("c12 = 0 mod N", at(2, 1).clone(), nn),
        ("c21 = 0 mod N", at(3, 0).clone(), nn),
        ("c22 = 0 mod N", at(3, 1).clone(), nn),
    ];
    checks.into_iter().find(|(_, x, md)| !in_multiple(x, *md)).map(|(what, _, _)| what.to_string())
}

fn siegel_level(m: &Mat<Rational>, n: u32, level: u32) -> SubgroupCheck {
    let diag = [m[(0, 0)].clone(), m[(1, 1)].clone(), m[(2, 2)].clone(), m[(3, 3)].clone()];
    let eps = integer_units(n).into_iter().find(|&e| diag.iter().all(|x| in_multiple(&(x.clone() - rat(e)), n as i64)));
    let Some(e) = eps else {
        return SubgroupCheck::fail("a11 = a22 = d11 = d22 = eps mod n fails for every eps with eps^2 = 1 mod n");
    };
    match level_tail(m, n, level) {
        Some(v) => SubgroupCheck::fail(v),
        None => SubgroupCheck::pass(Witness::Int(BigInt::from(e))),
    }
}

fn hermitian_level(m: &Mat<Quad>, n: u32, level: u32) -> SubgroupCheck {
    let field = m.proto().field;
    let k = n as i64;
    let diag = [m[(0, 0)].clone(), m[(2, 2)].clone(), m[(1, 1)].conjugate(), m[(3, 3)].conjugate()];
    let eps = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).map(|(a, b)| field.int(a, b)).find(|e| {
        in_multiple(&(e.clone() * e.conjugate() - field.one()), k) && diag.iter().all(|x| in_multiple(&(x.clone() - e.clone()), k))
    });
    let Some(e) = eps else {
        return SubgroupCheck::fail("a11 = d11 = conj(a22) = conj(d22) = eps mod n fails for every eps with eps*conj(eps) = 1 mod n");
    };
    match level_tail(m, n, level) {
        Some(v) => SubgroupCheck::fail(v),
        None => SubgroupCheck::pass(Witness::Quad(e)),
    }
}

fn quat_level(m: &Mat<Quaternion>, level: u32) -> SubgroupCheck {
    let base = principal(m, level, &format!("{level}O"), |x| in_multiple(x, level as i64));
    if !base.member || level % 2 == 1 {
        return base;
    }
    let Some(Witness::Int(e)) = &base.witness else { unreachable!("integer witness") };
    let eps = Quaternion::from_rational(Rational::from_integer(e.clone()));
    let lhs = eps.clone() * (m[(0, 0)].clone() + m[(1, 1)].clone()) - eps.clone() * eps - Quaternion::one();
    match IdealBasis::wp_multiple(level as i64).contains_quat(&lhs) {
        Ok(true) => base,
        _ => SubgroupCheck::fail(format!("eps*(a11+a22) = eps^2+1 mod {level}P fails for eps = {e}")),
    }
}

fn wp_principal(m: &Mat<Quaternion>) -> SubgroupCheck {
    let Ok(r) = m.try_map(F4::reduce) else {
        return SubgroupCheck::fail("entries are not Hurwitz quaternions");
    };
    for eps in [F4::One, F4::Omega, F4::OmegaBar] {
        if (0..4).all(|i| (0..4).all(|j| r[(i, j)] == if i == j { eps } else { F4::Zero })) {
            return SubgroupCheck::pass(Witness::F4(eps));
        }
    }
    SubgroupCheck::fail("M is not congruent to eps*I mod P for eps in {1, w, wbar}")
}

fn ambient_check<T: ModularRing>(spec: &SubgroupSpec, g: &GroupElem<T>) -> Result<Option<SubgroupCheck>> {
    let kind = spec.ambient()?;
    let ok = GroupElem::is_member(&kind, &g.m, g.half_turn);
    if !ok.ok {
        return Ok(Some(SubgroupCheck::fail(format!("not in {kind}: {}", ok.diagnostic.unwrap_or_default()))));
    }
    if g.half_turn {
        return Ok(Some(SubgroupCheck::fail("half-turn elements are not in the subgroup")));
    }
    Ok(None)
}

fn ring_mismatch(spec: &SubgroupSpec, e: &AnyElem) -> Error {
    Error::Parameter(format!("{} is not an element of the ambient group of {}", e.kind(), spec.name()))
}

/// Membership of `M` in the subgroup, with the witness `ε`.
pub fn in_subgroup(spec: &SubgroupSpec, elem: &AnyElem) -> Result<SubgroupCheck> {
    spec.validate()?;
    if matches!((spec.ambient()?, elem.kind()), (GroupKind::Hermitian(a), GroupKind::Hermitian(b)) if a != b) {
        return Err(ring_mismatch(spec, elem));
    }
    let out = match (spec, elem) {
        (SubgroupSpec::PrincipalSiegel { level }, AnyElem::Siegel(g)) => ambient_check(spec, g)?
            .unwrap_or_else(|| principal(&g.m, *level, &level.to_string(), |x| in_multiple(x, *level as i64))),
        (SubgroupSpec::SiegelLevel { n, level }, AnyElem::Siegel(g)) => {
            ambient_check(spec, g)?.unwrap_or_else(|| siegel_level(&g.m, *n, *level))
        }
        (SubgroupSpec::PrincipalHermitian { level, .. }, AnyElem::Hermitian(g)) => ambient_check(spec, g)?
            .unwrap_or_else(|| principal(&g.m, *level, &format!("{level}O_K"), |x| in_multiple(x, *level as i64))),
        (SubgroupSpec::HermitianLevel { n, level, .. }, AnyElem::Hermitian(g)) => {
            ambient_check(spec, g)?.unwrap_or_else(|| hermitian_level(&g.m, *n, *level))
        }
        (SubgroupSpec::IdealPrincipal { level, .. }, AnyElem::Hermitian(g)) => match ambient_check(spec, g)? {
            Some(c) => c,
            None => {
                let ideal = IdealBasis::quad_ideal_of_norm(g.proto().field, *level as i64)?;
                principal(&g.m, *level, ideal.name(), |x| ideal.contains_quad(x).unwrap_or(false))
            }
        },
        (SubgroupSpec::QuatLevel { level }, AnyElem::Quat(g)) => ambient_check(spec, g)?.unwrap_or_else(|| quat_level(&g.m, *level)),
        (SubgroupSpec::WpPrincipal, AnyElem::Quat(g)) => ambient_check(spec, g)?.unwrap_or_else(|| wp_principal(&g.m)),
        _ => return Err(ring_mismatch(spec, elem)),
    };
    Ok(out)
}

/// The orthogonal-side test paired with the subgroup: a (conjugated) discriminant
/// kernel or the odd-`ρ` kernel variant.
pub fn paired_kernel_test(spec: &SubgroupSpec, mt: &OrthImage) -> Result<bool> {
    spec.validate()?;
    let s1 = mt.s1_form();
    match *spec {
        SubgroupSpec::PrincipalSiegel { level } | SubgroupSpec::PrincipalHermitian { level, .. } => {
            in_discriminant_kernel(mt.matrix(), &s1, &BigInt::from(level))
        }
        SubgroupSpec::SiegelLevel { n, level } => conjugated_kernel_test(
            mt.matrix(),
            &build_form(&FormSpec::SiegelLevel { n, level })?,
            &diagonal_conjugator(&[1, 1, 1, n as i64, level as i64]),
            Orientation::Conjugate,
        ),
        SubgroupSpec::HermitianLevel { m, n, level } => conjugated_kernel_test(
            mt.matrix(),
            &build_form(&FormSpec::HermitianLevel { m, n, level })?,
            &diagonal_conjugator(&[1, 1, 1, 1, n as i64, level as i64]),
            Orientation::Conjugate,
        ),
        SubgroupSpec::IdealPrincipal { m, level } => conjugated_kernel_test(
            mt.matrix(),
            &build_form(&FormSpec::IdealLevel { m, level })?,
            &diagonal_conjugator(&[1, 1, 1, level as i64, 1, 1]),
            Orientation::InverseConjugate,
        ),
        SubgroupSpec::QuatLevel { level } => Ok(in_kernel_variant23(mt.matrix(), &s1, &BigInt::from(level))?.is_some()),
        SubgroupSpec::WpPrincipal => {
            let p = &wp_conjugator() * &diagonal_conjugator(&[1, 1, 1, 1, 1, 1, 2, 2]);
            conjugated_kernel_test(mt.matrix(), &build_form(&FormSpec::HurwitzWp)?, &p, Orientation::Conjugate)
        }
    }
}
