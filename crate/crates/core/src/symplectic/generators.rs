use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{symplectic_j, GroupElem, GroupKind, ModularRing};
use crate::error::Result;
use crate::matrices::Mat;

/// Default word length cap for sampled elements.
pub const DEFAULT_WORD_CAP: usize = 40;

pub fn translation<T: ModularRing>(s: &Mat<T>) -> Mat<T> {
    let p = s.proto();
    let (i, z) = (Mat::identity_like(2, p), Mat::zeros_like(2, 2, p));
    Mat::from_blocks(&i, s, &z, &i)
}

pub fn lower_translation<T: ModularRing>(s: &Mat<T>) -> Mat<T> {
    let p = s.proto();
    let (i, z) = (Mat::identity_like(2, p), Mat::zeros_like(2, 2, p));
    Mat::from_blocks(&i, &z, s, &i)
}

/// `diag(U, Ū⁻ᵗ)`; `U` must be invertible over the order.
pub fn rotation<T: ModularRing>(u: &Mat<T>) -> Mat<T> {
    let z = Mat::zeros_like(2, 2, u.proto());
    let d = u.adjoint_transpose().inverse().expect("invertible block");
    Mat::from_blocks(u, &z, &z, &d)
}

/// The Hermitian matrices `E₁₁`, `E₂₂` and `[[0, b], [b̄, 0]]` for the order basis `b`.
pub(crate) fn hermitian_basis<T: ModularRing>(proto: &T) -> Vec<Mat<T>> {
    let (z, o) = (proto.zero_like(), proto.one_like());
    let mut out = vec![Mat::diag(&[o.clone(), z.clone()]), Mat::diag(&[z.clone(), o])];
    for b in proto.order_basis() {
        out.push(Mat::from_rows(vec![vec![z.clone(), b.clone()], vec![b.conj(), z.clone()]]));
    }
    out
}

/// `J`, translations by the Hermitian basis, `diag(U, Ū⁻ᵗ)` for elementary and
/// diagonal unit `U`, and for the extended group the half turn `λI`.
pub fn generators<T: ModularRing>(kind: &GroupKind) -> Result<Vec<GroupElem<T>>> {
    let p = T::proto_for(kind)?;
    let (z, o) = (p.zero_like(), p.one_like());
    let mut mats = vec![symplectic_j(&p)];
    for s in hermitian_basis(&p) {
        mats.push(translation(&s));
    }
    for b in p.order_basis() {
        mats.push(rotation(&Mat::from_rows(vec![vec![o.clone(), b.clone()], vec![z.clone(), o.clone()]])));
        mats.push(rotation(&Mat::from_rows(vec![vec![o.clone(), z.clone()], vec![b.clone(), o.clone()]])));
    }
    for (u1, u2) in p.diagonal_units(kind) {
        mats.push(rotation(&Mat::diag(&[u1, u2])));
    }
    let mut out: Vec<GroupElem<T>> = mats.into_iter().map(|m| GroupElem::unchecked(*kind, m, false)).collect();
    if *kind == GroupKind::QuatExtended {
        out.push(GroupElem::unchecked(*kind, Mat::identity_like(4, &p), true));
    }
    debug_assert!(out.iter().all(|g| GroupElem::is_member(kind, &g.m, g.half_turn).ok));
    Ok(out)
}

/// Seeded random words in the generators and their inverses.
#[derive(Clone, Debug)]
pub struct Sampler<T> {
    kind: GroupKind,
    alphabet: Vec<GroupElem<T>>,
}

impl<T: ModularRing> Sampler<T> {
    pub fn new(kind: &GroupKind) -> Result<Self> {
        let gens = generators::<T>(kind)?;
        let mut alphabet = gens.clone();
        alphabet.extend(gens.iter().map(|g| g.inverse()));
        Ok(Sampler { kind: *kind, alphabet })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &[GroupElem<T>] {
        &self.alphabet
    }

    pub fn word(&self, length: usize, rng: &mut impl Rng) -> GroupElem<T> {
        let mut acc = GroupElem::identity(self.kind).expect("kind matches ring");
        for _ in 0..length {
            let g = &self.alphabet[rng.gen_range(0..self.alphabet.len())];
            acc = acc.mul(g);
        }
        acc
    }
}

/// The random stream for sample `index` under `seed`.
pub(crate) fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The random stream for sample points, disjoint from the word stream.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_9017_a11c_e5e5);
    rng.set_stream(index);
    rng
}

pub fn sample_word<T: ModularRing>(kind: &GroupKind, length: usize, seed: u64) -> Result<GroupElem<T>> {
    sample_word_indexed(kind, length, seed, 0)
}

pub fn sample_word_indexed<T: ModularRing>(kind: &GroupKind, length: usize, seed: u64, index: u64) -> Result<GroupElem<T>> {
    Ok(Sampler::new(kind)?.word(length, &mut rng_for(seed, index)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Quad, Quaternion, Rational};
    use crate::symplectic::det_mod_wp;
    use crate::rings::F4;

    #[test]
    fn all_generators_are_members() {
        for g in generators::<Rational>(&GroupKind::Siegel).unwrap() {
            assert!(GroupElem::is_member(&g.kind, &g.m, false).ok);
        }
        for m in [1, 2, 3, 5, 7, 11, 15] {
            let kind = GroupKind::hermitian(m).unwrap();
            for g in generators::<Quad>(&kind).unwrap() {
                let r = GroupElem::is_member(&kind, &g.m, false);
                assert!(r.ok, "m={m}: {r:?}\n{}", g.m);
            }
        }
        for kind in [GroupKind::QuatSp, GroupKind::QuatSpecial, GroupKind::QuatExtended] {
            for g in generators::<Quaternion>(&kind).unwrap() {
                assert!(GroupElem::is_member(&kind, &g.m, g.half_turn).ok, "{kind}");
            }
        }
    }

    #[test]
    fn special_generators_have_unit_residue_determinant() {
        for g in generators::<Quaternion>(&GroupKind::QuatSpecial).unwrap() {
            assert_eq!(det_mod_wp(&g.m).unwrap(), F4::One);
        }
    }

    #[test]
    fn hermitian_off_diagonal_translation() {
        let kind = GroupKind::hermitian(1).unwrap();
        let GroupKind::Hermitian(k) = kind else { unreachable!() };
        let s = Mat::from_rows(vec![vec![k.zero(), k.omega()], vec![k.omega().conjugate(), k.zero()]]);
        assert!(GroupElem::is_member(&kind, &translation(&s), false).ok);
    }

    #[test]
    fn words_are_deterministic_members() {
        assert!(sample_word::<Rational>(&GroupKind::Siegel, 0, 5).unwrap().is_identity());
        let a = sample_word::<Quaternion>(&GroupKind::QuatExtended, 12, 99).unwrap();
        let b = sample_word::<Quaternion>(&GroupKind::QuatExtended, 12, 99).unwrap();
        assert_eq!(a, b);
        assert!(GroupElem::is_member(&a.kind, &a.m, a.half_turn).ok);
        for i in 0..50 {
            let w = sample_word_indexed::<Rational>(&GroupKind::Siegel, 20, 7, i).unwrap();
            assert!(GroupElem::is_member(&w.kind, &w.m, false).ok);
        }
    }
}
