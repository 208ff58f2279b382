//! An independent reconstruction of the orthogonal image from the Möbius
//! action alone: `M̃·v(Z) = c·v(M⟨Z⟩)` with `v(z) = (−½zᵗS₀z, z, 1)` is a
//! homogeneous linear system in the entries of `M̃` and the scalars `c`.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthomod::isogeny::{phi, s0_for};
use orthomod::matrices::Mat;
use orthomod::rings::{ratio, sqrt_rational, Rational};
use orthomod::symplectic::{mobius, sample_point, GroupElem, ModularRing};

fn cone_vector(s0: &Mat<Rational>, z: &[Rational]) -> Vec<Rational> {
    let mut q = Rational::zero();
    for i in 0..z.len() {
        for j in 0..z.len() {
            q += z[i].clone() * s0[(i, j)].clone() * z[j].clone();
        }
    }
    let mut v = vec![-q * ratio(1, 2)];
    v.extend(z.iter().cloned());
    v.push(Rational::one());
    v
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let d = f.clone() * rows[r][j].clone();
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// `M̃` up to sign, or `None` if the points do not pin it down.
pub fn oracle_lift<T: ModularRing>(g: &GroupElem<T>, seed: u64) -> Option<Mat<Rational>> {
    let proto = T::proto_for(&g.kind).ok()?;
    let s0 = s0_for(&proto);
    let s0q = s0.to_rational();
    let n = s0.rows();
    let d = n + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    while pairs.len() < 3 * d {
        let z = sample_point(&proto, &mut rng, 6);
        if let Ok(w) = mobius(g, &z) {
            pairs.push((cone_vector(&s0q, &phi(&z).ok()?), cone_vector(&s0q, &phi(&w).ok()?)));
        }
    }
    let k = pairs.len();
    let cols = d * d + k;
    let mut rows = Vec::with_capacity(d * k);
    for (p, (v, w)) in pairs.iter().enumerate() {
        for i in 0..d {
            let mut row = vec![Rational::zero(); cols];
            for j in 0..d {
                row[i * d + j] = v[j].clone();
            }
            row[d * d + p] = -w[i].clone();
            rows.push(row);
        }
    }
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut x = vec![Rational::zero(); cols];
    x[f] = Rational::one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -rows[r][f].clone();
    }
    let l = Mat::from_fn(d, d, |i, j| x[i * d + j].clone());
    normalize(&l, &s1_of(&s0q))
}

fn s1_of(s0: &Mat<Rational>) -> Mat<Rational> {
    let n = s0.rows() + 2;
    Mat::from_fn(n, n, |i, j| match (i, j) {
        (0, j) if j == n - 1 => Rational::one(),
        (i, 0) if i == n - 1 => Rational::one(),
        (0, _) | (_, 0) => Rational::zero(),
        (i, j) if i == n - 1 || j == n - 1 => Rational::zero(),
        (i, j) => s0[(i - 1, j - 1)].clone(),
    })
}

/// Rescales `L` with `LᵗS₁L = λ²S₁` to an isometry.
fn normalize(l: &Mat<Rational>, s1: &Mat<Rational>) -> Option<Mat<Rational>> {
    let t = &(&l.transpose() * s1) * l;
    let lambda2 = t.entries().iter().zip(s1.entries()).find(|(_, s)| !s.is_zero()).map(|(a, s)| a.clone() / s.clone())?;
    if t != s1.scale(&lambda2) {
        return None;
    }
    let lambda = sqrt_rational(&lambda2)?;
    Some(l.scale(&(Rational::one() / lambda)))
}

/// `a = ±b`.
pub fn equal_up_to_sign(a: &Mat<Rational>, b: &Mat<BigInt>) -> bool {
    let b = b.to_rational();
    *a == b || *a == b.scale(&-Rational::one())
}

pub mod strategies {
    use proptest::prelude::*;

    use orthomod::rings::{rat, ratio, Quad, QuadField, Quaternion};

    pub fn hurwitz(bound: i64) -> impl Strategy<Value = Quaternion> {
        proptest::array::uniform4(-bound..=bound).prop_map(|c| Quaternion::from_hurwitz_coords(&c.map(rat)))
    }

    pub fn rational_quaternion() -> impl Strategy<Value = Quaternion> {
        (proptest::array::uniform4(-12i64..=12), 1i64..=6)
            .prop_map(|(c, d)| Quaternion::new(ratio(c[0], d), ratio(c[1], d), ratio(c[2], d), ratio(c[3], d)))
    }

    pub fn quad(field: QuadField, bound: i64) -> impl Strategy<Value = Quad> {
        (-bound..=bound, -bound..=bound).prop_map(move |(a, b)| field.int(a, b))
    }

    /// Squarefree `m` of the Hermitian families.
    pub fn field() -> impl Strategy<Value = QuadField> {
        prop::sample::select(vec![1u32, 2, 3, 5, 7, 11, 15]).prop_map(|m| QuadField::new(m).unwrap())
    }
}
