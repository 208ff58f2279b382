use rand::Rng;

use super::{GroupElem, ModularRing};
use crate::error::{Error, Result};
use crate::matrices::{adjoint2, det_vee, Mat};
use crate::rings::{ratio, Commutative, Quaternion, Rational};

fn check_point<T: ModularRing>(z: &Mat<T>) -> Result<()> {
    if z.rows() != 2 || z.cols() != 2 || !z.is_hermitian() {
        return Err(Error::Domain("sample point must be a Hermitian 2x2 matrix".into()));
    }
    Ok(())
}

/// `M⟨Z⟩ = (AZ+B)(CZ+D)⁻¹`; for `λM` the result is conjugated by `λ`.
pub fn mobius<T: ModularRing>(g: &GroupElem<T>, z: &Mat<T>) -> Result<Mat<T>> {
    check_point(z)?;
    let [a, b, c, d] = g.blocks();
    let den = &(&c * z) + &d;
    let inv = den.inverse().map_err(|_| Error::NotInvertible("CZ+D is singular".into()))?;
    let w = &(&(&a * z) + &b) * &inv;
    Ok(if g.half_turn { w.map(|x| x.lambda_conj()) } else { w })
}

/// `(det Z·AC♯ + AZD♯ + BZ♯C♯ + BD♯) / det(CZ+D)`.
pub fn mobius_expanded<T: ModularRing + Commutative>(g: &GroupElem<T>, z: &Mat<T>) -> Result<Mat<T>> {
    check_point(z)?;
    let [a, b, c, d] = g.blocks();
    let (cs, ds, zs) = (adjoint2(&c)?, adjoint2(&d)?, adjoint2(z)?);
    let det_z = z.det()?;
    let num = &(&(&(&a * &cs).left_scale(&det_z) + &(&(&a * z) * &ds)) + &(&(&b * &zs) * &cs)) + &(&b * &ds);
    let den = cocycle(g, z)?;
    let inv = den.inv().ok_or_else(|| Error::NotInvertible("det(CZ+D) = 0".into()))?;
    Ok(num.left_scale(&inv))
}

/// `det M{Z} = det(CZ+D)`, checked against `det Z·det C + tr(Z♯C♯D) + det D`.
pub fn cocycle<T: ModularRing + Commutative>(g: &GroupElem<T>, z: &Mat<T>) -> Result<T> {
    check_point(z)?;
    let [_, _, c, d] = g.blocks();
    let direct = (&(&c * z) + &d).det()?;
    let expanded = z.det()? * c.det()? + (&(&adjoint2(z)? * &adjoint2(&c)?) * &d).trace() + d.det()?;
    if direct != expanded {
        return Err(Error::Domain(format!("cocycle expansion mismatch: {direct} vs {expanded}")));
    }
    Ok(direct)
}

/// `det(CZ+D)∨` for the quaternionic groups.
pub fn cocycle_vee(g: &GroupElem<Quaternion>, z: &Mat<Quaternion>) -> Result<Rational> {
    check_point(z)?;
    let [_, _, c, d] = g.blocks();
    det_vee(&(&(&c * z) + &d))
}

fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=4))
}

/// A random Hermitian rational matrix with small entries.
pub fn sample_point<T: ModularRing>(proto: &T, rng: &mut impl Rng, bound: i64) -> Mat<T> {
    let k = proto.order_basis().len();
    let x11 = proto.from_rational_like(&small_rational(rng, bound));
    let x22 = proto.from_rational_like(&small_rational(rng, bound));
    let coords: Vec<Rational> = (0..k).map(|_| small_rational(rng, bound)).collect();
    let x12 = proto.from_coords(&coords);
    let x21 = x12.conj();
    Mat::from_rows(vec![vec![x11, x12], vec![x21, x22]])
}
