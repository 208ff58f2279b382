use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{in_subgroup, integer_units, SubgroupSpec};
use crate::element::ElemRing;
use crate::error::{Error, Result};
use crate::isogeny::{phi, phi_basis};
use crate::matrices::Mat;
use crate::rings::{rat, Quaternion, Rational};
use crate::symplectic::{lower_translation, rotation, translation, GroupElem, GroupKind, ModularRing, Sampler};

/// An integral `U = [[a, N], [c, d]]` of determinant 1 with `U ≡ εI mod N` and
/// `U⁻ᵗ ≡ εI mod N`; `k` selects `a = ε + kN`.
pub fn eps_diagonal(level: i64, eps: i64, k: i64) -> Result<[[i64; 2]; 2]> {
    if level < 1 || (eps * eps - 1).rem_euclid(level) != 0 {
        return Err(Error::Parameter(format!("eps = {eps} is not a unit square root of 1 mod {level}")));
    }
    let sq = level * level;
    let a = eps + k * level;
    let g = a.extended_gcd(&sq);
    if g.gcd.abs() != 1 {
        return Err(Error::Parameter(format!("a = {a} is not invertible mod {sq}")));
    }
    let d = (g.x * g.gcd).rem_euclid(sq);
    let c = (a * d - 1) / level;
    Ok([[a, level], [c, d]])
}

/// `blockdiag(2, K′, 1)` where `K′` is the matrix of `Z ↦ AZD⁻¹` for
/// `A = diag(1+i, 1)`, `D = diag((1+i)/2, 1)`; the orthogonal counterpart of
/// conjugation by `diag(A, D)`.
pub fn wp_conjugator() -> Mat<Rational> {
    let p = Quaternion::zero();
    let a = Mat::diag(&[Quaternion::int(1, 1, 0, 0), Quaternion::one()]);
    let dinv = Mat::diag(&[Quaternion::int(1, -1, 0, 0), Quaternion::one()]);
    let cols: Vec<Vec<Rational>> = phi_basis(&p).iter().map(|z| phi(&(&(&a * z) * &dinv)).expect("Hermitian image")).collect();
    let n = cols.len() + 2;
    Mat::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => rat(2),
        (i, j) if i == n - 1 && j == n - 1 => rat(1),
        (0, _) | (_, 0) => rat(0),
        (i, j) if i == n - 1 || j == n - 1 => rat(0),
        (i, j) => cols[j - 1][i - 1].clone(),
    })
}

fn scalar<T: ModularRing>(p: &T, x: i64) -> T {
    p.from_rational_like(&rat(x))
}

fn int_mat<T: ModularRing>(p: &T, u: [[i64; 2]; 2]) -> Mat<T> {
    Mat::from_rows(u.iter().map(|r| r.iter().map(|&x| scalar(p, x)).collect()).collect())
}

/// `[[0, b], [b̄, 0]]`.
fn off_diagonal<T: ModularRing>(b: &T) -> Mat<T> {
    let z = b.zero_like();
    Mat::from_rows(vec![vec![z.clone(), b.clone()], vec![b.conj(), z]])
}

fn e11<T: ModularRing>(p: &T, x: i64) -> Mat<T> {
    Mat::diag(&[scalar(p, x), p.zero_like()])
}

fn e22<T: ModularRing>(p: &T, x: i64) -> Mat<T> {
    Mat::diag(&[p.zero_like(), scalar(p, x)])
}

/// Upper and lower translations by each Hermitian matrix.
fn both_translations<T: ModularRing>(hs: &[Mat<T>]) -> Vec<Mat<T>> {
    hs.iter().flat_map(|h| [translation(h), lower_translation(h)]).collect()
}

/// `N` times the Hermitian basis.
fn scaled_hermitian<T: ModularRing>(p: &T, level: i64) -> Vec<Mat<T>> {
    let mut hs = vec![e11(p, level), e22(p, level)];
    hs.extend(p.order_basis().iter().map(|b| off_diagonal(&b.scale(&rat(level)))));
    hs
}

fn eps_rotations<T: ModularRing>(p: &T, level: u32) -> Vec<Mat<T>> {
    let mut out = Vec::new();
    for e in integer_units(level) {
        for k in 0..2 {
            if let Ok(u) = eps_diagonal(level as i64, e, k) {
                out.push(rotation(&int_mat(p, u)));
            }
        }
    }
    out
}

/// Generators of a subgroup: `core` elements are conjugated by ambient words,
/// `local` ones are used as they are. `relaxed` generates `M ≡ εI mod N`
/// without the even-level Hurwitz condition and equals `core` elsewhere.
#[derive(Clone, Debug)]
pub(crate) struct MemberFactory<T> {
    pub(crate) spec: SubgroupSpec,
    core: Vec<GroupElem<T>>,
    relaxed: Vec<GroupElem<T>>,
    local: Vec<GroupElem<T>>,
    pub(crate) sampler: Sampler<T>,
}

impl<T: ElemRing> MemberFactory<T> {
    pub(crate) fn new(spec: &SubgroupSpec) -> Result<Self> {
        spec.validate()?;
        let kind = spec.ambient()?;
        let p = T::proto_for(&kind)?;
        let mut relaxed = Vec::new();
        let (core, local) = match *spec {
            SubgroupSpec::PrincipalSiegel { level } | SubgroupSpec::PrincipalHermitian { level, .. } => {
                let mut core = both_translations(&scaled_hermitian(&p, level as i64));
                core.extend(eps_rotations(&p, level));
                (core, Vec::new())
            }
            SubgroupSpec::IdealPrincipal { level, .. } => {
                let n = level as i64;
                let hs = vec![e11(&p, n), e22(&p, n), off_diagonal(&scalar(&p, n)), off_diagonal(&p.order_basis()[1])];
                let mut core = both_translations(&hs);
                core.extend(eps_rotations(&p, level));
                (core, Vec::new())
            }
            SubgroupSpec::SiegelLevel { n, level } | SubgroupSpec::HermitianLevel { n, level, .. } => {
                let (k, nn) = (n as i64, level as i64);
                let core = both_translations(&scaled_hermitian(&p, k * nn));
                let basis = p.order_basis();
                let (z, o) = (p.zero_like(), p.one_like());
                let mut local = vec![translation(&e11(&p, 1)), translation(&e22(&p, k))];
                local.push(lower_translation(&e11(&p, k * nn)));
                local.push(lower_translation(&e22(&p, nn)));
                for b in &basis {
                    local.push(translation(&off_diagonal(b)));
                    local.push(lower_translation(&off_diagonal(&b.scale(&rat(nn)))));
                    local.push(rotation(&Mat::from_rows(vec![vec![o.clone(), b.clone()], vec![z.clone(), o.clone()]])));
                    local.push(rotation(&Mat::from_rows(vec![vec![o.clone(), z.clone()], vec![b.scale(&rat(k)), o.clone()]])));
                }
                local.extend(eps_rotations(&p, n));
                for (u, _) in p.diagonal_units(&kind) {
                    local.push(rotation(&Mat::diag(&[u.clone(), u.conj()])));
                }
                (core, local)
            }
            SubgroupSpec::QuatLevel { level } => {
                let step = if level % 2 == 0 { 2 * level } else { level };
                let mut core = both_translations(&scaled_hermitian(&p, step as i64));
                core.extend(eps_rotations(&p, level));
                relaxed = both_translations(&scaled_hermitian(&p, level as i64));
                relaxed.extend(eps_rotations(&p, level));
                (core, Vec::new())
            }
            SubgroupSpec::WpPrincipal => {
                let mut hs = vec![e11(&p, 2), e22(&p, 2), off_diagonal(&scalar(&p, 2))];
                for q in [Quaternion::int(1, 1, 0, 0), Quaternion::int(1, 0, 1, 0), Quaternion::int(1, 0, 0, 1)] {
                    hs.push(off_diagonal(&p.from_coords(&q.hurwitz_coords())));
                }
                let mut core = both_translations(&hs);
                let w = p.from_coords(&Quaternion::omega().hurwitz_coords());
                core.push(rotation(&Mat::diag(&[w.clone(), w])));
                (core, Vec::new())
            }
        };
        let wrap = |ms: Vec<Mat<T>>| -> Result<Vec<GroupElem<T>>> {
            let mut out = Vec::new();
            for m in ms {
                let g = GroupElem::new(kind, m, false)?;
                // even-level Hurwitz diagonals need the extra congruence
                if !matches!(spec, SubgroupSpec::QuatLevel { .. }) || in_subgroup(spec, &T::wrap(g.clone()))?.member {
                    out.push(g);
                }
            }
            Ok(out)
        };
        let relaxed = relaxed.into_iter().map(|m| GroupElem::new(kind, m, false)).collect::<Result<Vec<_>>>()?;
        let (core, local) = (wrap(core)?, wrap(local)?);
        let relaxed = if relaxed.is_empty() { core.clone() } else { relaxed };
        if core.is_empty() {
            return Err(Error::Parameter(format!("no generators for {spec}")));
        }
        Ok(MemberFactory { spec: *spec, core, relaxed, local, sampler: Sampler::new(&kind)? })
    }

    fn kind(&self) -> GroupKind {
        *self.sampler.kind()
    }

    fn pick(&self, pool: &[GroupElem<T>], rng: &mut impl Rng) -> GroupElem<T> {
        let g = &pool[rng.gen_range(0..pool.len())];
        if rng.gen_bool(0.5) {
            g.inverse()
        } else {
            g.clone()
        }
    }

    /// A product of two to four factors `V·T·V⁻¹` (and local generators).
    pub(crate) fn member(&self, rng: &mut impl Rng) -> GroupElem<T> {
        self.product(&self.core, rng)
    }

    pub(crate) fn relaxed_member(&self, rng: &mut impl Rng) -> GroupElem<T> {
        self.product(&self.relaxed, rng)
    }

    fn product(&self, core: &[GroupElem<T>], rng: &mut impl Rng) -> GroupElem<T> {
        let mut acc = GroupElem::identity(self.kind()).expect("kind matches ring");
        let factors = rng.gen_range(2..=4);
        for _ in 0..factors {
            let f = if !self.local.is_empty() && rng.gen_bool(0.5) {
                self.pick(&self.local, rng)
            } else {
                let t = self.pick(core, rng);
                let v = self.sampler.word(rng.gen_range(0..=3), rng);
                v.mul(&t).mul(&v.inverse())
            };
            acc = acc.mul(&f);
        }
        acc
    }
}

pub(crate) fn member_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_11e9_0e5a_3b1d);
    rng.set_stream(stream);
    rng
}

/// The `index`-th constructed member of the subgroup under `seed`.
pub fn construct_member<T: ElemRing>(spec: &SubgroupSpec, seed: u64, index: u64) -> Result<GroupElem<T>> {
    Ok(MemberFactory::<T>::new(spec)?.member(&mut member_rng(seed, index)))
}
