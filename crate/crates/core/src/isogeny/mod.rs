//! The coordinate map `φ`, the lift `±M ↦ ±M̃` into `SO₀(S₁; Z)`, and the
//! orthogonal action on coordinate vectors.

mod action;
mod image;

pub use action::{compat_check, compat_suite, orth_action, orth_factor, CocycleRing, CompatOutcome, CompatSummary};
pub use image::{OrthBlocks, OrthImage};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::s0_of;
use crate::matrices::{adjoint2, det_vee, sqrt_det_vee, Mat};
use crate::rings::{rat, Commutative, Quad, Quaternion, Rational};
use crate::symplectic::{translation, GroupElem, GroupKind, ModularRing};

/// Coordinates of a Hermitian `2×2` matrix in the basis `E₁₁`,
/// `[[0, b_ν], [b̄_ν, 0]]`, `E₂₂`.
pub fn phi<T: ModularRing>(z: &Mat<T>) -> Result<Vec<Rational>> {
    if z.rows() != 2 || z.cols() != 2 || !z.is_hermitian() {
        return Err(Error::Domain("phi needs a Hermitian 2x2 matrix".into()));
    }
    let mut v = vec![z[(0, 0)].re()];
    v.extend(z[(0, 1)].order_coords());
    v.push(z[(1, 1)].re());
    Ok(v)
}

pub fn phi_inv<T: ModularRing>(v: &[Rational], proto: &T) -> Result<Mat<T>> {
    let k = proto.order_basis().len();
    if v.len() != k + 2 {
        return Err(Error::Domain(format!("expected {} coordinates, got {}", k + 2, v.len())));
    }
    let x12 = proto.from_coords(&v[1..=k]);
    Ok(Mat::from_rows(vec![
        vec![proto.from_rational_like(&v[0]), x12.clone()],
        vec![x12.conj(), proto.from_rational_like(&v[k + 1])],
    ]))
}

/// The `φ`-basis of Hermitian matrices.
pub fn phi_basis<T: ModularRing>(proto: &T) -> Vec<Mat<T>> {
    let n = proto.order_basis().len() + 2;
    (0..n)
        .map(|i| {
            let e: Vec<Rational> = (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect();
            phi_inv(&e, proto).expect("basis length")
        })
        .collect()
}

/// `S₀` of the kind's order.
pub fn s0_for<T: ModularRing>(proto: &T) -> Mat<BigInt> {
    s0_of(&proto.order_gram())
}

/// The matrix of a linear map on Hermitian matrices in the `φ`-basis.
fn matrix_of<T: ModularRing>(proto: &T, f: impl Fn(&Mat<T>) -> Result<Mat<T>>) -> Result<Mat<Rational>> {
    let cols = phi_basis(proto).iter().map(|z| phi(&f(z)?)).collect::<Result<Vec<_>>>()?;
    let n = cols.len();
    Ok(Mat::from_fn(n, n, |i, j| cols[j][i].clone()))
}

fn real_scalar<T: ModularRing>(x: &T, what: &str) -> Result<Rational> {
    let r = x.re();
    if x.from_rational_like(&r) != *x {
        return Err(Error::Domain(format!("{what} = {x} is not real")));
    }
    Ok(r)
}

fn qform(s0: &Mat<Rational>, x: &[Rational], y: &[Rational]) -> Rational {
    let n = x.len();
    let mut acc = rat(0);
    for i in 0..n {
        for j in 0..n {
            acc += x[i].clone() * s0[(i, j)].clone() * y[j].clone();
        }
    }
    acc
}

fn mat_vec(m: &Mat<Rational>, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].clone() * v[j].clone()).sum()).collect()
}

/// The blocks `α, a, β, b, K, c, γ, d, δ` before assembly.
struct Parts {
    alpha: Rational,
    a: Vec<Rational>,
    beta: Rational,
    b: Vec<Rational>,
    k: Mat<Rational>,
    c: Vec<Rational>,
    gamma: Rational,
    d: Vec<Rational>,
    delta: Rational,
}

fn assemble(kind: GroupKind, s0: Mat<BigInt>, p: Parts) -> Result<OrthImage> {
    let n = p.k.rows();
    let s0r = s0.to_rational();
    let (top, bottom) = (mat_vec(&s0r, &p.a), mat_vec(&s0r, &p.d));
    let m = Mat::from_fn(n + 2, n + 2, |i, j| match (i, j) {
        (0, 0) => p.alpha.clone(),
        (0, j) if j == n + 1 => p.beta.clone(),
        (0, j) => top[j - 1].clone(),
        (i, 0) if i == n + 1 => p.gamma.clone(),
        (i, j) if i == n + 1 && j == n + 1 => p.delta.clone(),
        (i, j) if i == n + 1 => bottom[j - 1].clone(),
        (i, 0) => p.b[i - 1].clone(),
        (i, j) if j == n + 1 => p.c[i - 1].clone(),
        (i, j) => p.k[(i - 1, j - 1)].clone(),
    });
    let m = m.to_int().ok_or_else(|| Error::Domain(format!("lifted matrix is not integral:\n{m}")))?;
    Ok(OrthImage::from_parts(kind, s0, m))
}

/// Rings whose modular groups lift to `SO₀(S₁; Z)`.
pub trait Liftable: ModularRing {
    /// The matrix `K` of `f_M` in the `φ`-basis.
    fn k_matrix(g: &GroupElem<Self>) -> Result<Mat<Rational>>;

    fn lift(g: &GroupElem<Self>) -> Result<OrthImage>;
}

fn commutative_k<T: ModularRing + Commutative>(g: &GroupElem<T>) -> Result<Mat<Rational>> {
    let [a, b, c, d] = g.blocks();
    let (cs, ds) = (adjoint2(&c)?, adjoint2(&d)?);
    matrix_of(g.proto(), |z| Ok(&(&(&a * z) * &ds) + &(&(&b * &adjoint2(z)?) * &cs)))
}

/// `α = det A, β = −det B, γ = −det C, δ = det D`,
/// `a = −φ(A♯B), b = −φ(AC♯), c = φ(BD♯), d = φ(C♯D)`.
fn commutative_lift<T: ModularRing + Commutative>(g: &GroupElem<T>) -> Result<OrthImage> {
    let [a, b, c, d] = g.blocks();
    let (as_, cs, ds) = (adjoint2(&a)?, adjoint2(&c)?, adjoint2(&d)?);
    let neg = |v: Vec<Rational>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
    let parts = Parts {
        alpha: real_scalar(&a.det()?, "det A")?,
        beta: -real_scalar(&b.det()?, "det B")?,
        gamma: -real_scalar(&c.det()?, "det C")?,
        delta: real_scalar(&d.det()?, "det D")?,
        a: neg(phi(&(&as_ * &b))?),
        b: neg(phi(&(&a * &cs))?),
        c: phi(&(&b * &ds))?,
        d: phi(&(&cs * &d))?,
        k: commutative_k(g)?,
    };
    assemble(g.kind, s0_for(g.proto()), parts)
}

impl Liftable for Rational {
    fn k_matrix(g: &GroupElem<Self>) -> Result<Mat<Rational>> {
        commutative_k(g)
    }
    fn lift(g: &GroupElem<Self>) -> Result<OrthImage> {
        commutative_lift(g)
    }
}

impl Liftable for Quad {
    fn k_matrix(g: &GroupElem<Self>) -> Result<Mat<Rational>> {
        commutative_k(g)
    }
    fn lift(g: &GroupElem<Self>) -> Result<OrthImage> {
        commutative_lift(g)
    }
}

/// `K_λ`, the matrix of `Z ↦ λZλ⁻¹`.
fn half_turn_k() -> Mat<Rational> {
    matrix_of(&Quaternion::zero(), |z| Ok(z.map(|x| x.lambda_conj()))).expect("Hermitian basis")
}

/// `f_M(Z) = δAZD⁻¹ + BZ♯(D⁻¹C)♯δD⁻¹` for an element without half turn.
fn quaternion_k(m: &Mat<Quaternion>, delta: &Rational) -> Result<Mat<Rational>> {
    let [a, b, c, d] = m.quarters();
    let dinv = d.inverse().map_err(|_| Error::SingularBlock)?;
    let xs = adjoint2(&(&dinv * &c))?;
    let tail = &xs * &dinv.scale(delta);
    matrix_of(&Quaternion::zero(), |z| Ok(&(&(&a * z) * &dinv).scale(delta) + &(&(&b * &adjoint2(z)?) * &tail)))
}

/// The lift anchored at `δ = √det D∨`, with the remaining blocks solved from
/// `M̃ᵗS₁M̃ = S₁`.
fn quaternion_lift_anchored(kind: GroupKind, m: &Mat<Quaternion>) -> Result<OrthImage> {
    let [_, b, c, d] = m.quarters();
    if det_vee(&d)?.is_zero() {
        return Err(Error::SingularBlock);
    }
    let delta = Rational::from_integer(sqrt_det_vee(&d)?);
    let dinv = d.inverse().map_err(|_| Error::SingularBlock)?;
    let cv = phi(&(&b * &dinv).scale(&delta))?;
    let dv = phi(&adjoint2(&(&dinv * &c))?.scale(&delta))?;
    let k = quaternion_k(m, &delta)?;
    let s0 = s0_for(&Quaternion::zero());
    let s0r = s0.to_rational();
    let half = crate::rings::ratio(1, 2);
    let gamma = -(half.clone() * qform(&s0r, &dv, &dv)) / delta.clone();
    let beta = -(half * qform(&s0r, &cv, &cv)) / delta.clone();
    let kd = mat_vec(&k, &dv);
    let bv: Vec<Rational> = (0..cv.len()).map(|i| -(gamma.clone() * cv[i].clone() + kd[i].clone()) / delta.clone()).collect();
    let kt_s0c = mat_vec(&k.transpose(), &mat_vec(&s0r, &cv));
    let s0inv = s0r.inverse()?;
    let w = mat_vec(&s0inv, &kt_s0c);
    let av: Vec<Rational> = (0..cv.len()).map(|i| -(beta.clone() * dv[i].clone() + w[i].clone()) / delta.clone()).collect();
    let alpha = (rat(1) - gamma.clone() * beta.clone() - qform(&s0r, &bv, &cv)) / delta.clone();
    let parts = Parts { alpha, a: av, beta, b: bv, k, c: cv, gamma, d: dv, delta };
    Ok(assemble(kind, s0, parts)?.normalized())
}

/// Translations `[[I, S], [0, I]]` with `φ(S)` in `[-2, 2]⁶`, by increasing size.
fn fallback_translations() -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut v = [0i64; 6];
    fn rec(i: usize, v: &mut [i64; 6], out: &mut Vec<Vec<i64>>) {
        if i == 6 {
            if v.iter().any(|&x| x != 0) {
                out.push(v.to_vec());
            }
            return;
        }
        for x in -2..=2 {
            v[i] = x;
            rec(i + 1, v, out);
        }
    }
    rec(0, &mut v, &mut out);
    out.sort_by_key(|s| (s.iter().map(|x| x.abs()).sum::<i64>(), s.iter().map(|x| -x).collect::<Vec<_>>()));
    out.into_iter().map(|s| s.into_iter().map(rat).collect()).collect()
}

fn quaternion_lift_plain(kind: GroupKind, m: &Mat<Quaternion>) -> Result<OrthImage> {
    match quaternion_lift_anchored(kind, m) {
        Err(Error::SingularBlock) => {}
        other => return other,
    }
    let proto = Quaternion::zero();
    for s in fallback_translations() {
        let sm = phi_inv(&s, &proto)?;
        let t = translation(&sm);
        let mt = m * &t;
        let [_, _, _, d] = mt.quarters();
        if det_vee(&d)?.is_zero() {
            continue;
        }
        let left = quaternion_lift_anchored(kind, &mt)?;
        let right = quaternion_lift_anchored(kind, &translation(&-&sm))?;
        return Ok(left.mul(&right).normalized());
    }
    Err(Error::DegenerateLift)
}

impl Liftable for Quaternion {
    fn k_matrix(g: &GroupElem<Self>) -> Result<Mat<Rational>> {
        let [_, _, _, d] = g.blocks();
        if det_vee(&d)?.is_zero() {
            return Err(Error::SingularBlock);
        }
        let delta = Rational::from_integer(sqrt_det_vee(&d)?);
        let k = quaternion_k(&g.m, &delta)?;
        Ok(if g.half_turn { &half_turn_k() * &k } else { k })
    }

    fn lift(g: &GroupElem<Self>) -> Result<OrthImage> {
        let base = quaternion_lift_plain(g.kind, &g.m)?;
        if !g.half_turn {
            return Ok(base);
        }
        let n = base.dim();
        let kl = half_turn_k();
        let h = Mat::from_fn(n, n, |i, j| {
            if i == 0 || i == n - 1 || j == 0 || j == n - 1 {
                if i == j {
                    rat(1)
                } else {
                    rat(0)
                }
            } else {
                kl[(i - 1, j - 1)].clone()
            }
        });
        let m = (&h * &base.matrix().to_rational()).to_int().ok_or_else(|| Error::Domain("half-turn lift is not integral".into()))?;
        Ok(OrthImage::from_parts(g.kind, base.s0().clone(), m).normalized())
    }
}

pub fn k_matrix<T: Liftable>(g: &GroupElem<T>) -> Result<Mat<Rational>> {
    T::k_matrix(g)
}

/// `±M ↦ ±M̃`. Siegel and Hermitian images are given literally; quaternionic
/// images are normalized so that the first nonzero entry is positive.
pub fn lift<T: Liftable>(g: &GroupElem<T>) -> Result<OrthImage> {
    T::lift(g)
}

pub(crate) fn is_positive_leading(m: &Mat<BigInt>) -> bool {
    m.entries().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

pub(crate) fn unit_like(n: usize) -> Mat<BigInt> {
    Mat::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
}
