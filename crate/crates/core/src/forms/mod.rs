//! Even quadratic forms, orthogonal and discriminant-kernel membership, and
//! enumeration of finite orthogonal groups.

mod aut;
mod build;
mod orth;

pub use aut::{enumerate_aut, is_closed_group};
pub use build::{build_form, hyperbolic_sum, s0_of, s1_of, FormSpec};
pub use orth::{
    conjugated_kernel_test, diagonal_conjugator, in_discriminant_kernel, in_kernel_variant23, is_orthogonal, is_so0, kernel_congruence,
    Orientation,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrices::Mat;
use crate::rings::Rational;

/// Determinant of an integer matrix.
pub fn int_det(m: &Mat<BigInt>) -> Result<BigInt> {
    Ok(m.to_rational().det()?.to_integer())
}

/// Signature `(p, q)` of a symmetric rational matrix and its nullity, by
/// symmetric Gaussian elimination.
fn inertia(m: &Mat<Rational>) -> (usize, usize, usize) {
    let mut a = m.clone();
    let n = a.rows();
    let (mut p, mut q) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            if let Some(r) = (k + 1..n).find(|&r| !a[(r, r)].is_zero()) {
                a.swap_rows(k, r);
                a.swap_cols(k, r);
            } else if let Some(r) = (k + 1..n).find(|&r| !a[(k, r)].is_zero()) {
                // e_k -> e_k + e_r makes the pivot 2 a_kr
                for c in 0..n {
                    let v = a[(r, c)].clone();
                    a[(k, c)] += v;
                }
                for c in 0..n {
                    let v = a[(c, r)].clone();
                    a[(c, k)] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let piv = a[(k, k)].clone();
        if piv.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        for r in k + 1..n {
            if !a[(r, k)].is_zero() {
                let f = a[(r, k)].clone() / piv.clone();
                for c in k..n {
                    let v = f.clone() * a[(k, c)].clone();
                    a[(r, c)] -= v;
                }
                for c in k..n {
                    let v = f.clone() * a[(c, k)].clone();
                    a[(c, r)] -= v;
                }
            }
        }
        k += 1;
    }
    (p, q, n - p - q)
}

/// A non-degenerate symmetric even integral Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenForm {
    name: String,
    gram: Mat<BigInt>,
    signature: (usize, usize),
    det: BigInt,
    adj: Mat<BigInt>,
}

impl EvenForm {
    pub fn new(name: impl Into<String>, gram: Mat<BigInt>) -> Result<Self> {
        let name = name.into();
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::Parameter(format!("{name}: Gram matrix must be square and non-empty")));
        }
        if gram.transpose() != gram {
            return Err(Error::Parameter(format!("{name}: Gram matrix is not symmetric")));
        }
        if let Some(i) = (0..gram.rows()).find(|&i| gram[(i, i)].is_odd()) {
            return Err(Error::Parameter(format!("{name}: diagonal entry {} is odd", i + 1)));
        }
        let r = gram.to_rational();
        let (p, q, z) = inertia(&r);
        if z > 0 {
            return Err(Error::Parameter(format!("{name}: Gram matrix is degenerate")));
        }
        let det = r.det()?.to_integer();
        let det_r = Rational::from_integer(det.clone());
        let adj = r.inverse()?.map(|x| x * det_r.clone()).to_int().expect("adjugate is integral");
        Ok(EvenForm { name, gram, signature: (p, q), det, adj })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gram(&self) -> &Mat<BigInt> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `det(S)·S⁻¹`.
    pub fn adjugate(&self) -> &Mat<BigInt> {
        &self.adj
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    /// `k·S`.
    pub fn scaled(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::Parameter("scale must be nonzero".into()));
        }
        let name = if k.is_one() { self.name.clone() } else { format!("{k}*{}", self.name) };
        EvenForm::new(name, self.gram.map(|x| x * k))
    }

    /// `xᵗ S y`.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut acc = BigInt::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                row += &self.gram[(i, j)] * &y[j];
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// The plane spanned by `e₁ + e_last` and `e₂ + e_{last-1}` when it is
    /// positive definite.
    pub fn positive_plane(&self) -> Option<[Vec<BigInt>; 2]> {
        let n = self.rank();
        if n < 4 {
            return None;
        }
        let unit = |a: usize, b: usize| {
            let mut v = vec![BigInt::zero(); n];
            v[a] = BigInt::one();
            v[b] += 1;
            v
        };
        let (v1, v2) = (unit(0, n - 1), unit(1, n - 2));
        let (g11, g22, g12) = (self.bilinear(&v1, &v1), self.bilinear(&v2, &v2), self.bilinear(&v1, &v2));
        (g11.is_positive() && g22.is_positive() && (&g11 * &g22 - &g12 * &g12).is_positive()).then_some([v1, v2])
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "gram": mat_json(&self.gram),
            "signature": [self.signature.0, self.signature.1],
            "det": self.det.to_string(),
        })
    }
}

impl fmt::Display for EvenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (signature {:?})\n{}", self.name, self.signature, self.gram)
    }
}

/// Integer matrix as nested JSON arrays of integers.
pub fn mat_json(m: &Mat<BigInt>) -> serde_json::Value {
    serde_json::Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| {
                serde_json::Value::Array(
                    r.iter()
                        .map(|x| match i64::try_from(x) {
                            Ok(v) => json!(v),
                            Err(_) => json!(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}
