//! 2×2 adjoints and determinants, the ∨-embedding, content and the
//! elementary-divisor form of Hurwitz matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Mat;
use crate::error::{Error, Result};
use crate::rings::{Quad, QuadField, Quaternion, Rational, Scalar};

/// The adjoint `[[a,b],[c,d]]♯ = [[d,-b],[-c,a]]`. Over the quaternions it is
/// only defined for Hermitian input.
pub fn adjoint2<T: Scalar>(x: &Mat<T>) -> Result<Mat<T>> {
    if x.rows() != 2 || x.cols() != 2 {
        return Err(Error::Parameter("adjoint2 needs a 2x2 matrix".into()));
    }
    if !T::COMMUTATIVE && !x.is_hermitian() {
        return Err(Error::Domain("the quaternionic adjoint needs a Hermitian matrix".into()));
    }
    Ok(Mat::from_rows(vec![
        vec![x[(1, 1)].clone(), -x[(0, 1)].clone()],
        vec![-x[(1, 0)].clone(), x[(0, 0)].clone()],
    ]))
}

/// `ad - bc` for commutative entries; `x₁₁x₂₂ - x₁₂x̄₁₂` for Hermitian
/// quaternionic ones.
pub fn det2<T: Scalar>(x: &Mat<T>) -> Result<T> {
    if x.rows() != 2 || x.cols() != 2 {
        return Err(Error::Parameter("det2 needs a 2x2 matrix".into()));
    }
    if T::COMMUTATIVE {
        return Ok(x[(0, 0)].clone() * x[(1, 1)].clone() - x[(0, 1)].clone() * x[(1, 0)].clone());
    }
    if !x.is_hermitian() {
        return Err(Error::Domain("the quaternionic determinant needs a Hermitian matrix".into()));
    }
    Ok(x[(0, 0)].clone() * x[(1, 1)].clone() - x[(0, 1)].clone() * x[(0, 1)].conj())
}

fn gaussian_field() -> QuadField {
    QuadField::new(1).expect("1 is squarefree")
}

/// `a₁+a₂i+a₃j+a₄k ↦ [[a₁+a₂i, a₃+a₄i], [-a₃+a₄i, a₁-a₂i]]` over `Q(i)`.
pub fn vee(q: &Quaternion) -> Mat<Quad> {
    let g = gaussian_field();
    let [a1, a2, a3, a4] = &q.c;
    Mat::from_rows(vec![
        vec![g.gaussian(a1.clone(), a2.clone()), g.gaussian(a3.clone(), a4.clone())],
        vec![g.gaussian(-a3.clone(), a4.clone()), g.gaussian(a1.clone(), -a2.clone())],
    ])
}

/// Entrywise ∨-embedding of an `r×c` quaternionic matrix into `2r×2c`.
pub fn vee_mat(x: &Mat<Quaternion>) -> Mat<Quad> {
    let blocks: Vec<Vec<Mat<Quad>>> = (0..x.rows()).map(|i| (0..x.cols()).map(|j| vee(&x[(i, j)])).collect()).collect();
    Mat::from_fn(2 * x.rows(), 2 * x.cols(), |r, c| blocks[r / 2][c / 2][(r % 2, c % 2)].clone())
}

/// `det X∨`, a nonnegative rational.
pub fn det_vee(x: &Mat<Quaternion>) -> Result<Rational> {
    if !x.is_square() {
        return Err(Error::Parameter("det_vee needs a square matrix".into()));
    }
    let d = vee_mat(x).det()?;
    debug_assert!(d.is_real(), "det X∨ is real");
    Ok(d.real_part())
}

/// The integer `√det X∨` for a Hurwitz matrix `X`.
pub fn sqrt_det_vee(x: &Mat<Quaternion>) -> Result<BigInt> {
    if !x.is_integral() {
        return Err(Error::Domain("sqrt_det_vee needs Hurwitz entries".into()));
    }
    let d = det_vee(x)?;
    if d.is_zero() {
        return Err(Error::Domain("det X∨ = 0".into()));
    }
    let n = d.to_integer();
    let r = n.sqrt();
    if &r * &r != n {
        return Err(Error::NotLemmaTwoBlock(n.to_string()));
    }
    Ok(r)
}

/// `ρ(X)`: the largest `ℓ` with `X/ℓ` Hurwitz-integral, i.e. the gcd of all
/// Hurwitz coordinates.
pub fn content_rho(x: &Mat<Quaternion>) -> Result<BigInt> {
    let mut g = BigInt::zero();
    for q in x.entries() {
        let c = q
            .hurwitz_int_coords()
            .ok_or_else(|| Error::Domain(format!("{q} is not a Hurwitz quaternion")))?;
        for v in &c {
            g = g.gcd(v);
        }
    }
    if g.is_zero() {
        return Err(Error::Domain("content of the zero matrix".into()));
    }
    Ok(g)
}

/// Shape of a Hurwitz diagonal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape")]
pub enum ElemDivShape {
    /// `diag(m, mn)`.
    #[serde(rename = "diag(m, mn)")]
    Plain { m: String, n: String },
    /// `diag(m(1+i), mn(1+i))` with `n` odd.
    #[serde(rename = "diag(m(1+i), mn(1+i))")]
    OnePlusI { m: String, n: String },
    /// Any other diagonal form (possible only for inputs that are not blocks
    /// of symplectic matrices).
    #[serde(rename = "other")]
    Other,
}

impl ElemDivShape {
    pub fn tag(&self) -> &'static str {
        match self {
            ElemDivShape::Plain { .. } => "diag(m, mn)",
            ElemDivShape::OnePlusI { .. } => "diag(m(1+i), mn(1+i))",
            ElemDivShape::Other => "other",
        }
    }

    pub fn m(&self) -> Option<BigInt> {
        match self {
            ElemDivShape::Plain { m, .. } | ElemDivShape::OnePlusI { m, .. } => m.parse().ok(),
            ElemDivShape::Other => None,
        }
    }

    pub fn n(&self) -> Option<BigInt> {
        match self {
            ElemDivShape::Plain { n, .. } | ElemDivShape::OnePlusI { n, .. } => n.parse().ok(),
            ElemDivShape::Other => None,
        }
    }
}

/// `U·X·V = D` with `U`, `V` invertible over the Hurwitz order.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemDivResult {
    pub u: Mat<Quaternion>,
    pub v: Mat<Quaternion>,
    pub d: Mat<Quaternion>,
    pub shape: ElemDivShape,
}

/// `x ∈ Z_{>0}`: returns the integer.
fn positive_integer(x: &Quaternion) -> Option<BigInt> {
    if x.is_real() && x.c[0].is_integer() && x.c[0].is_positive() {
        Some(x.c[0].to_integer())
    } else {
        None
    }
}

/// `x ∈ Z_{>0}·(1+i)`: returns the integer factor.
fn positive_times_one_plus_i(x: &Quaternion) -> Option<BigInt> {
    let [a1, a2, a3, a4] = &x.c;
    if a1 == a2 && a3.is_zero() && a4.is_zero() && a1.is_integer() && a1.is_positive() {
        Some(a1.to_integer())
    } else {
        None
    }
}

fn divides_left(d: &Quaternion, x: &Quaternion) -> bool {
    // x ∈ d·O
    (d.inv().expect("nonzero divisor") * x.clone()).is_hurwitz()
}

fn divides_right(d: &Quaternion, x: &Quaternion) -> bool {
    // x ∈ O·d
    (x.clone() * d.inv().expect("nonzero divisor")).is_hurwitz()
}

const MAX_STEPS: usize = 10_000;

/// Diagonalizes a nonsingular 2×2 Hurwitz matrix by norm-Euclidean row and
/// column reduction, then forces total divisibility `O·d₂·O ⊆ d₁·O ∩ O·d₁`
/// and normalizes each diagonal entry by a right unit factor.
pub fn hurwitz_elementary_divisors(x: &Mat<Quaternion>) -> Result<ElemDivResult> {
    if x.rows() != 2 || x.cols() != 2 {
        return Err(Error::Parameter("elementary divisors are implemented for 2x2 matrices".into()));
    }
    if !x.is_integral() {
        return Err(Error::Domain("elementary divisors need Hurwitz entries".into()));
    }
    if det_vee(x)?.is_zero() {
        return Err(Error::Domain("singular matrix: det X∨ = 0".into()));
    }
    let one = Quaternion::one();
    let mut a = x.clone();
    let mut u = Mat::identity_like(2, &one);
    let mut v = Mat::identity_like(2, &one);
    let dirs = Quaternion::hurwitz_basis();

    let mut steps = 0;
    'outer: loop {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Domain("elementary-divisor reduction did not terminate".into()));
        }
        // pivot: nonzero entry of least norm, first in row-major order
        let (pr, pc) = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by(|&p, &q| a[p].norm().cmp(&a[q].norm()))
            .expect("nonsingular matrix has a nonzero entry");
        a.swap_rows(0, pr);
        u.swap_rows(0, pr);
        a.swap_cols(0, pc);
        v.swap_cols(0, pc);

        let p = a[(0, 0)].clone();
        if !a[(1, 0)].is_zero() {
            let (q, _) = a[(1, 0)].div_rem_right(&p);
            a.sub_left_multiple(1, 0, &q);
            u.sub_left_multiple(1, 0, &q);
        }
        if !a[(0, 1)].is_zero() {
            let (q, _) = a[(0, 1)].div_rem_left(&p);
            a.sub_right_multiple(1, 0, &q);
            v.sub_right_multiple(1, 0, &q);
        }
        if !a[(1, 0)].is_zero() || !a[(0, 1)].is_zero() {
            continue;
        }

        let d1 = a[(0, 0)].clone();
        let d2 = a[(1, 1)].clone();
        for t in &dirs {
            if !divides_left(&d1, &(t.clone() * d2.clone())) {
                // row₀ += t·row₁
                let f = -t.clone();
                a.sub_left_multiple(0, 1, &f);
                u.sub_left_multiple(0, 1, &f);
                continue 'outer;
            }
            if !divides_right(&d1, &(d2.clone() * t.clone())) {
                // col₀ += col₁·t
                let f = -t.clone();
                a.sub_right_multiple(0, 1, &f);
                v.sub_right_multiple(0, 1, &f);
                continue 'outer;
            }
        }
        break;
    }

    let units = Quaternion::hurwitz_units();
    for k in 0..2 {
        let dk = a[(k, k)].clone();
        if let Some(w) = units.iter().find(|w| {
            let y = dk.clone() * (*w).clone();
            positive_integer(&y).is_some() || positive_times_one_plus_i(&y).is_some()
        }) {
            a.right_mul_col(k, w);
            v.right_mul_col(k, w);
        }
    }

    let shape = classify(&a[(0, 0)], &a[(1, 1)]);
    Ok(ElemDivResult { u, v, d: a, shape })
}

fn classify(d1: &Quaternion, d2: &Quaternion) -> ElemDivShape {
    if let (Some(m), Some(mn)) = (positive_integer(d1), positive_integer(d2)) {
        if mn.is_multiple_of(&m) {
            return ElemDivShape::Plain { m: m.to_string(), n: (&mn / &m).to_string() };
        }
    }
    if let (Some(m), Some(mn)) = (positive_times_one_plus_i(d1), positive_times_one_plus_i(d2)) {
        if mn.is_multiple_of(&m) && (&mn / &m).is_odd() {
            return ElemDivShape::OnePlusI { m: m.to_string(), n: (&mn / &m).to_string() };
        }
    }
    ElemDivShape::Other
}

/// Outcome of the three assertions of the block lemma for one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub sqrt_det: String,
    /// `√det X∨ ∈ N`.
    pub a: bool,
    /// `√det X∨ · X⁻¹` is Hurwitz-integral.
    pub b: bool,
    /// `ρ(X) = ρ(√det X∨ · X⁻¹) = m`.
    pub c: bool,
    pub rho: String,
    pub rho_adjugate: String,
    pub shape: String,
    pub m: Option<String>,
    /// `U·X·V = D` holds exactly with unimodular `U`, `V`.
    pub reconstructs: bool,
}

impl Lemma2Report {
    pub fn passed(&self) -> bool {
        self.a && self.b && self.c && self.reconstructs
    }
}

pub fn lemma2_checks(x: &Mat<Quaternion>) -> Result<Lemma2Report> {
    let s = sqrt_det_vee(x)?;
    let y = x.inverse()?.scale(&Rational::from(s.clone()));
    let b = y.is_integral();
    let rho = content_rho(x)?;
    let rho_adj = if b { content_rho(&y)? } else { BigInt::zero() };
    let ed = hurwitz_elementary_divisors(x)?;
    let m = ed.shape.m();
    let c = b && m.as_ref() == Some(&rho) && rho_adj == rho;
    let reconstructs = is_unimodular(&ed.u) && is_unimodular(&ed.v) && &(&ed.u * x) * &ed.v == ed.d;
    Ok(Lemma2Report {
        sqrt_det: s.to_string(),
        a: s.is_positive(),
        b,
        c,
        rho: rho.to_string(),
        rho_adjugate: rho_adj.to_string(),
        shape: ed.shape.tag().into(),
        m: m.map(|m| m.to_string()),
        reconstructs,
    })
}

/// Hurwitz entries with a Hurwitz inverse.
pub(crate) fn is_unimodular(u: &Mat<Quaternion>) -> bool {
    u.is_integral() && u.inverse().map(|w| w.is_integral()).unwrap_or(false)
}
