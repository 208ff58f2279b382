//! Images `(Z^k)·S` of integer matrices as unions of cosets of a box lattice.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Mat, ZLattice};

/// The row lattice of `diag(left)·S·diag(right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeImage {
    pub lattice: ZLattice,
    /// Smallest `dᵢ` with `dᵢ·eᵢ` in the lattice, so `⊕ dᵢZ` is a sublattice.
    pub periods: Vec<BigInt>,
    /// Representatives in `∏ [0, dᵢ)` of the cosets of `⊕ dᵢZ` making up the lattice;
    /// the zero vector comes first. Empty if the box is too large to enumerate.
    pub cosets: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
struct Summary {
    basis: Vec<Vec<String>>,
    periods: Vec<String>,
    cosets: Vec<Vec<String>>,
    image: String,
}

const MAX_BOX: u64 = 1 << 20;

pub fn z_lattice_image(s: &Mat<BigInt>, left: Option<&[BigInt]>, right: Option<&[BigInt]>) -> LatticeImage {
    let k = s.cols();
    let rows: Vec<Vec<BigInt>> = (0..s.rows())
        .map(|i| {
            (0..k)
                .map(|j| {
                    let l = left.map_or_else(BigInt::one, |d| d[i].clone());
                    let r = right.map_or_else(BigInt::one, |d| d[j].clone());
                    l * &s[(i, j)] * r
                })
                .collect()
        })
        .collect();
    let lattice = ZLattice::from_generators(&rows, k);
    let Some(periods) = lattice.axis_periods() else {
        return LatticeImage { lattice, periods: Vec::new(), cosets: Vec::new() };
    };
    let volume: BigInt = periods.iter().product();
    let cosets = if volume <= BigInt::from(MAX_BOX) { box_cosets(&lattice, &periods) } else { Vec::new() };
    LatticeImage { lattice, periods, cosets }
}

fn box_cosets(lattice: &ZLattice, periods: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut v = vec![BigInt::zero(); periods.len()];
    loop {
        if lattice.contains(&v) {
            out.push(v.clone());
        }
        // odometer step, last coordinate fastest
        let mut i = periods.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < periods[i] {
                break;
            }
            v[i] = BigInt::zero();
        }
    }
}

fn factor(d: &BigInt) -> String {
    if d.is_one() {
        "Z".into()
    } else {
        format!("{d}Z")
    }
}

impl LatticeImage {
    pub fn is_box(&self) -> bool {
        self.cosets.len() == 1
    }

    /// `"Z x 3Z"`, or `"(2Z x 2Z x 2Z x Z) ∪ (1,1,1,0)+(2Z x 2Z x 2Z x Z)"` for a union.
    pub fn description(&self) -> String {
        if self.periods.is_empty() {
            return format!("{}", self.lattice);
        }
        let b = self.periods.iter().map(factor).collect::<Vec<_>>().join(" x ");
        if self.cosets.len() <= 1 {
            return b;
        }
        let mut parts = vec![format!("({b})")];
        for r in self.cosets.iter().skip(1) {
            let r = r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            parts.push(format!("({r})+({b})"));
        }
        parts.join(" ∪ ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strs = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        serde_json::to_value(Summary {
            basis: self.lattice.basis().iter().map(|r| strs(r)).collect(),
            periods: strs(&self.periods),
            cosets: self.cosets.iter().map(|r| strs(r)).collect(),
            image: self.description(),
        })
        .expect("plain data serializes")
    }
}
