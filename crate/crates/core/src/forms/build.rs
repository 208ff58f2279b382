use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::EvenForm;
use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::{is_squarefree, QuadField, Quaternion};
use crate::symplectic::ModularRing;

/// `U(N) ⊕ T = [[0, 0, N], [0, T, 0], [N, 0, 0]]`.
pub fn hyperbolic_sum(level: &BigInt, t: &Mat<BigInt>) -> Mat<BigInt> {
    let k = t.rows();
    let n = k + 2;
    Mat::from_fn(n, n, |i, j| {
        if (i == 0 && j == n - 1) || (i == n - 1 && j == 0) {
            level.clone()
        } else if i >= 1 && i <= k && j >= 1 && j <= k {
            t[(i - 1, j - 1)].clone()
        } else {
            BigInt::zero()
        }
    })
}

/// `S₀ = U(1) ⊕ (−S)`.
pub fn s0_of(s: &Mat<BigInt>) -> Mat<BigInt> {
    hyperbolic_sum(&BigInt::from(1), &-s)
}

/// `S₁ = U(1) ⊕ S₀`.
pub fn s1_of(s: &Mat<BigInt>) -> Mat<BigInt> {
    hyperbolic_sum(&BigInt::from(1), &s0_of(s))
}

/// Every quadratic form used by the isomorphisms and congruence theorems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// `(2)`, the norm form of `Z`.
    SiegelS,
    SiegelS0,
    SiegelS1,
    /// `S_K = [[2, tr ω_K], [tr ω_K, 2|ω_K|²]]`.
    HermitianS { m: u32 },
    HermitianS0 { m: u32 },
    HermitianS1 { m: u32 },
    /// `[[2N, tr ω_K], [tr ω_K, 2|ω_K|²/N]]` for squarefree `N | d_K`.
    IdealT { m: u32, level: u32 },
    /// The norm form of the Hurwitz order in the basis `1, i, j, ω`.
    HurwitzS,
    HurwitzS0,
    HurwitzS1,
    /// `U(N) ⊕ U(n) ⊕ (−2)`.
    SiegelLevel { n: u32, level: u32 },
    /// `U(N) ⊕ U(n) ⊕ (−S_K)`.
    HermitianLevel { m: u32, n: u32, level: u32 },
    /// `U(N) ⊕ U(N) ⊕ (−T)`.
    IdealLevel { m: u32, level: u32 },
    /// `U(N) ⊕ U(N) ⊕ diag(−2N, −2m/N)` for even `d_K` and `N | m`.
    IdealDiagonal { m: u32, level: u32 },
    /// `U(2) ⊕ U(2) ⊕ (−S)` with the Hurwitz `S`.
    HurwitzWp,
}

fn quad_s(m: u32) -> Result<Mat<BigInt>> {
    Ok(QuadField::new(m)?.zero().order_gram())
}

fn hurwitz_s() -> Mat<BigInt> {
    Quaternion::zero().order_gram()
}

fn ideal_t(m: u32, level: u32) -> Result<Mat<BigInt>> {
    let k = QuadField::new(m)?;
    let d = k.discriminant().unsigned_abs();
    if level == 0 || !is_squarefree(level as u64) || d % level as u64 != 0 {
        return Err(Error::Parameter(format!("N = {level} is not a squarefree divisor of d_K = {}", k.discriminant())));
    }
    let (t, n) = (BigInt::from(k.omega_trace()), BigInt::from(k.omega_norm()));
    let lv = BigInt::from(level);
    let (q, r) = (BigInt::from(2) * n).div_rem(&lv);
    if !r.is_zero() {
        return Err(Error::Parameter(format!("N = {level} does not divide 2|omega_K|^2")));
    }
    Ok(Mat::from_rows(vec![vec![BigInt::from(2) * &lv, t.clone()], vec![t, q]]))
}

fn positive(v: u32, what: &str) -> Result<BigInt> {
    if v == 0 {
        return Err(Error::Parameter(format!("{what} must be positive")));
    }
    Ok(BigInt::from(v))
}

fn two_planes(level: &BigInt, n: &BigInt, inner: &Mat<BigInt>) -> Mat<BigInt> {
    hyperbolic_sum(level, &hyperbolic_sum(n, &-inner))
}

impl FormSpec {
    pub fn name(&self) -> String {
        match self {
            FormSpec::SiegelS => "S(siegel)".into(),
            FormSpec::SiegelS0 => "S0(siegel)".into(),
            FormSpec::SiegelS1 => "S1(siegel)".into(),
            FormSpec::HermitianS { m } => format!("S_K(m={m})"),
            FormSpec::HermitianS0 { m } => format!("S0(m={m})"),
            FormSpec::HermitianS1 { m } => format!("S1(m={m})"),
            FormSpec::IdealT { m, level } => format!("T(m={m},N={level})"),
            FormSpec::HurwitzS => "S(hurwitz)".into(),
            FormSpec::HurwitzS0 => "S0(hurwitz)".into(),
            FormSpec::HurwitzS1 => "S1(hurwitz)".into(),
            FormSpec::SiegelLevel { n, level } => format!("U({level})+U({n})+(-2)"),
            FormSpec::HermitianLevel { m, n, level } => format!("U({level})+U({n})+(-S_K(m={m}))"),
            FormSpec::IdealLevel { m, level } => format!("U({level})+U({level})+(-T(m={m},N={level}))"),
            FormSpec::IdealDiagonal { m, level } => format!("U({level})+U({level})+diag(-2N,-2m/N)(m={m})"),
            FormSpec::HurwitzWp => "U(2)+U(2)+(-S(hurwitz))".into(),
        }
    }

    /// Parses the names accepted on the command line.
    pub fn parse(name: &str, m: Option<u32>, n: Option<u32>, level: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| Error::Parse(format!("form '{name}' needs --{flag}")));
        Ok(match name {
            "siegel-s" => FormSpec::SiegelS,
            "siegel-s0" => FormSpec::SiegelS0,
            "siegel-s1" => FormSpec::SiegelS1,
            "SK" | "sk" | "hermitian-s" => FormSpec::HermitianS { m: need(m, "m")? },
            "hermitian-s0" => FormSpec::HermitianS0 { m: need(m, "m")? },
            "hermitian-s1" => FormSpec::HermitianS1 { m: need(m, "m")? },
            "T" | "t" | "ideal-t" => FormSpec::IdealT { m: need(m, "m")?, level: need(level, "N")? },
            "hurwitz-s" => FormSpec::HurwitzS,
            "hurwitz-s0" => FormSpec::HurwitzS0,
            "hurwitz-s1" => FormSpec::HurwitzS1,
            "siegel-level" => FormSpec::SiegelLevel { n: need(n, "n")?, level: need(level, "N")? },
            "hermitian-level" => FormSpec::HermitianLevel { m: need(m, "m")?, n: need(n, "n")?, level: need(level, "N")? },
            "ideal-level" => FormSpec::IdealLevel { m: need(m, "m")?, level: need(level, "N")? },
            "ideal-diagonal" => FormSpec::IdealDiagonal { m: need(m, "m")?, level: need(level, "N")? },
            "hurwitz-wp" => FormSpec::HurwitzWp,
            other => return Err(Error::Parse(format!("unknown form '{other}'"))),
        })
    }

    fn gram(&self) -> Result<Mat<BigInt>> {
        let two = Mat::<BigInt>::from_i64(&[vec![2]]);
        Ok(match self {
            FormSpec::SiegelS => two,
            FormSpec::SiegelS0 => s0_of(&two),
            FormSpec::SiegelS1 => s1_of(&two),
            FormSpec::HermitianS { m } => quad_s(*m)?,
            FormSpec::HermitianS0 { m } => s0_of(&quad_s(*m)?),
            FormSpec::HermitianS1 { m } => s1_of(&quad_s(*m)?),
            FormSpec::IdealT { m, level } => ideal_t(*m, *level)?,
            FormSpec::HurwitzS => hurwitz_s(),
            FormSpec::HurwitzS0 => s0_of(&hurwitz_s()),
            FormSpec::HurwitzS1 => s1_of(&hurwitz_s()),
            FormSpec::SiegelLevel { n, level } => {
                two_planes(&positive(*level, "N")?, &positive(*n, "n")?, &two)
            }
            FormSpec::HermitianLevel { m, n, level } => {
                two_planes(&positive(*level, "N")?, &positive(*n, "n")?, &quad_s(*m)?)
            }
            FormSpec::IdealLevel { m, level } => {
                let lv = positive(*level, "N")?;
                two_planes(&lv, &lv, &ideal_t(*m, *level)?)
            }
            FormSpec::IdealDiagonal { m, level } => {
                let k = QuadField::new(*m)?;
                if k.disc_is_odd() || *level == 0 || m % level != 0 {
                    return Err(Error::Parameter(format!("need even d_K and N | m, got m = {m}, N = {level}")));
                }
                let lv = BigInt::from(*level);
                let inner = Mat::diag(&[BigInt::from(2) * &lv, BigInt::from(2 * (m / level))]);
                two_planes(&lv, &lv, &inner)
            }
            FormSpec::HurwitzWp => {
                let two = BigInt::from(2);
                two_planes(&two, &two, &hurwitz_s())
            }
        })
    }
}

pub fn build_form(spec: &FormSpec) -> Result<EvenForm> {
    EvenForm::new(spec.name(), spec.gram()?)
}
