use num_traits::Zero;
use rayon::prelude::*;

use super::{lift, phi, Liftable, OrthImage};
use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::{ratio, Quad, Quaternion, Rational, RationalAlgebra};
use crate::symplectic::{cocycle, cocycle_vee, mobius, sample_point, sample_word_indexed, GroupElem, GroupKind};

fn check_len(mt: &OrthImage, z: &[Rational]) -> Result<()> {
    if z.len() + 2 != mt.dim() {
        return Err(Error::Domain(format!("expected {} coordinates, got {}", mt.dim() - 2, z.len())));
    }
    Ok(())
}

fn half_norm(mt: &OrthImage, z: &[Rational]) -> Rational {
    let s0 = mt.s0();
    let mut acc = Rational::zero();
    for i in 0..z.len() {
        for j in 0..z.len() {
            acc += z[i].clone() * Rational::from_integer(s0[(i, j)].clone()) * z[j].clone();
        }
    }
    acc * ratio(1, 2)
}

/// `M̃{z} = −½zᵗS₀z·γ + dᵗS₀z + δ`.
pub fn orth_factor(mt: &OrthImage, z: &[Rational]) -> Result<Rational> {
    check_len(mt, z)?;
    let m = mt.matrix();
    let last = mt.dim() - 1;
    let q = half_norm(mt, z);
    let mut f = Rational::from_integer(m[(last, last)].clone()) - q * Rational::from_integer(m[(last, 0)].clone());
    for (j, x) in z.iter().enumerate() {
        f += Rational::from_integer(m[(last, j + 1)].clone()) * x.clone();
    }
    Ok(f)
}

/// `M̃⟨z⟩ = (−½zᵗS₀z·b + Kz + c) / M̃{z}`.
pub fn orth_action(mt: &OrthImage, z: &[Rational]) -> Result<Vec<Rational>> {
    let f = orth_factor(mt, z)?;
    if f.is_zero() {
        return Err(Error::NotInvertible("orthogonal factor vanishes".into()));
    }
    let m = mt.matrix();
    let (n, last) = (z.len(), mt.dim() - 1);
    let q = half_norm(mt, z);
    Ok((1..=n)
        .map(|i| {
            let mut acc = Rational::from_integer(m[(i, last)].clone()) - q.clone() * Rational::from_integer(m[(i, 0)].clone());
            for (j, x) in z.iter().enumerate() {
                acc += Rational::from_integer(m[(i, j + 1)].clone()) * x.clone();
            }
            acc / f.clone()
        })
        .collect())
}

/// Rings with a cocycle identity relating `M̃{φ(Z)}` and `CZ+D`.
pub trait CocycleRing: Liftable {
    /// Siegel and Hermitian: `M̃{φ(Z)} = det(CZ+D)`; quaternionic:
    /// `(M̃{φ(Z)})² = det(CZ+D)∨`.
    fn cocycle_matches(g: &GroupElem<Self>, z: &Mat<Self>, factor: &Rational) -> Result<bool>;
}

impl CocycleRing for Rational {
    fn cocycle_matches(g: &GroupElem<Self>, z: &Mat<Self>, factor: &Rational) -> Result<bool> {
        Ok(cocycle(g, z)? == *factor)
    }
}

impl CocycleRing for Quad {
    fn cocycle_matches(g: &GroupElem<Self>, z: &Mat<Self>, factor: &Rational) -> Result<bool> {
        Ok(cocycle(g, z)? == z.proto().from_rational_like(factor))
    }
}

impl CocycleRing for Quaternion {
    fn cocycle_matches(g: &GroupElem<Self>, z: &Mat<Self>, factor: &Rational) -> Result<bool> {
        Ok(cocycle_vee(g, z)? == factor.clone() * factor.clone())
    }
}

/// Result of checking `φ(M⟨Z⟩) = M̃⟨φ(Z)⟩` and the cocycle identity at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatOutcome {
    Checked { lemma1: bool, cocycle: bool },
    Skipped(String),
}

impl CompatOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CompatOutcome::Checked { lemma1: true, cocycle: true })
    }
}

pub fn compat_check<T: CocycleRing>(g: &GroupElem<T>, z: &Mat<T>) -> Result<CompatOutcome> {
    let w = match mobius(g, z) {
        Ok(w) => w,
        Err(Error::NotInvertible(msg)) => return Ok(CompatOutcome::Skipped(msg)),
        Err(e) => return Err(e),
    };
    let mt = lift(g)?;
    let zc = phi(z)?;
    let factor = orth_factor(&mt, &zc)?;
    if factor.is_zero() {
        return Ok(CompatOutcome::Skipped("orthogonal factor vanishes".into()));
    }
    let lemma1 = phi(&w)? == orth_action(&mt, &zc)?;
    let cocycle = T::cocycle_matches(g, z, &factor)?;
    Ok(CompatOutcome::Checked { lemma1, cocycle })
}

/// Aggregate of [`compat_check`] over seeded samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatSummary {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

/// Checks `count` seeded pairs `(M, Z)` with words of length `word_len` and
/// sample points with entries bounded by 6.
pub fn compat_suite<T: CocycleRing + Send + Sync>(kind: &GroupKind, count: usize, seed: u64, word_len: usize) -> Result<CompatSummary> {
    let proto = T::proto_for(kind)?;
    let outcomes: Vec<Result<(usize, CompatOutcome)>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let g = sample_word_indexed::<T>(kind, word_len, seed, i)?;
            let mut rng = crate::symplectic::point_rng(seed, i);
            let z = sample_point(&proto, &mut rng, 6);
            Ok((i as usize, compat_check(&g, &z)?))
        })
        .collect();
    let mut summary = CompatSummary::default();
    for o in outcomes {
        match o {
            Ok((_, CompatOutcome::Skipped(_))) => summary.skipped += 1,
            Ok((i, out)) => {
                summary.checked += 1;
                if !out.passed() {
                    summary.failures.push(format!("sample {i}: {out:?}"));
                }
            }
            Err(e) => summary.failures.push(e.to_string()),
        }
    }
    Ok(summary)
}
