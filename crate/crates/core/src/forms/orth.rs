use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{int_det, EvenForm};
use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::Rational;

fn check_size(u: &Mat<BigInt>, form: &EvenForm) -> Result<()> {
    if u.rows() != form.rank() || u.cols() != form.rank() {
        return Err(Error::Parameter(format!(
            "matrix is {}x{}, form {} has rank {}",
            u.rows(),
            u.cols(),
            form.name(),
            form.rank()
        )));
    }
    Ok(())
}

/// `UᵗSU = S` and `det U = 1`.
pub fn is_orthogonal(u: &Mat<BigInt>, form: &EvenForm) -> Result<bool> {
    check_size(u, form)?;
    if &(&u.transpose() * form.gram()) * u != *form.gram() {
        return Ok(false);
    }
    Ok(int_det(u)?.is_one())
}

/// Orthogonal and orientation-preserving on the fixed positive plane.
pub fn is_so0(u: &Mat<BigInt>, form: &EvenForm) -> Result<bool> {
    if !is_orthogonal(u, form)? {
        return Ok(false);
    }
    let (p, q) = form.signature();
    if p == 0 || q == 0 {
        return Ok(true);
    }
    let [v1, v2] = form
        .positive_plane()
        .filter(|_| p == 2)
        .ok_or_else(|| Error::Parameter(format!("{} has no fixed positive plane", form.name())))?;
    let apply = |v: &[BigInt]| -> Vec<BigInt> {
        (0..u.rows()).map(|i| (0..u.cols()).map(|j| &u[(i, j)] * &v[j]).sum()).collect()
    };
    let (u1, u2) = (apply(&v1), apply(&v2));
    let d = form.bilinear(&u1, &v1) * form.bilinear(&u2, &v2) - form.bilinear(&u1, &v2) * form.bilinear(&u2, &v1);
    Ok(d.is_positive())
}

/// `U ∈ ρI + Z^{m×m}·(scale·S)`, tested as `(U − ρI)·adj(S) ≡ 0 mod scale·det S`.
pub fn kernel_congruence(u: &Mat<BigInt>, form: &EvenForm, scale: &BigInt, rho: &BigInt) -> bool {
    if u.rows() != form.rank() || u.cols() != form.rank() {
        return false;
    }
    let modulus = (scale * form.det()).abs();
    let mut shifted = u.clone();
    for i in 0..u.rows() {
        shifted[(i, i)] -= rho;
    }
    (&shifted * form.adjugate()).entries().iter().all(|x| x.is_multiple_of(&modulus))
}

/// `U ∈ 𝒟(scale·S; Z)`.
pub fn in_discriminant_kernel(u: &Mat<BigInt>, form: &EvenForm, scale: &BigInt) -> Result<bool> {
    Ok(is_so0(u, form)? && kernel_congruence(u, form, scale, &BigInt::one()))
}

/// `U ∈ SO₀(S) ∩ (ρI + Z^{m×m}·N·S)` for some odd `ρ` with `ρ² ≡ 1 mod N`;
/// returns the least such `ρ ≥ 0`.
pub fn in_kernel_variant23(u: &Mat<BigInt>, form: &EvenForm, level: &BigInt) -> Result<Option<BigInt>> {
    if !level.is_positive() {
        return Err(Error::Parameter("level must be positive".into()));
    }
    if !is_so0(u, form)? {
        return Ok(None);
    }
    // ρ only matters modulo the exponent of Z^m / (N·S)Z^m
    let modulus = (level * form.det()).abs();
    let e = form.adjugate().entries().iter().fold(BigInt::one(), |acc, a| {
        let den = &modulus / modulus.gcd(a);
        acc.lcm(&den)
    });
    let range = if e.is_odd() { &e * 2 } else { e };
    let mut rho = BigInt::one();
    while rho < range {
        if ((&rho * &rho) - 1u32).is_multiple_of(level) && kernel_congruence(u, form, level, &rho) {
            return Ok(Some(rho));
        }
        rho += 2;
    }
    Ok(None)
}

/// Which side the conjugator sits on: `P·𝒟·P⁻¹` or `P⁻¹·𝒟·P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Conjugate,
    InverseConjugate,
}

/// `U ∈ P·𝒟(S; Z)·P⁻¹` (resp. `P⁻¹·𝒟(S; Z)·P`) for a rational conjugator `P`.
pub fn conjugated_kernel_test(u: &Mat<BigInt>, form: &EvenForm, p: &Mat<Rational>, orientation: Orientation) -> Result<bool> {
    check_size(u, form)?;
    if p.rows() != form.rank() || !p.is_square() {
        return Err(Error::Parameter("conjugator size does not match the form".into()));
    }
    let pinv = p.inverse()?;
    let ur = u.to_rational();
    let v = match orientation {
        Orientation::Conjugate => &(&pinv * &ur) * p,
        Orientation::InverseConjugate => &(p * &ur) * &pinv,
    };
    match v.to_int() {
        Some(v) => in_discriminant_kernel(&v, form, &BigInt::one()),
        None => Ok(false),
    }
}

/// `diag(d₁, …, d_k)` as a rational conjugator.
pub fn diagonal_conjugator(d: &[i64]) -> Mat<Rational> {
    Mat::diag(&d.iter().map(|&x| crate::rings::rat(x)).collect::<Vec<_>>())
}
