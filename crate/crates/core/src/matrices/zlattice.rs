//! Sublattices of `Z^k` in row Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sublattice of `Z^dim`, stored as the nonzero rows of its Hermite normal
/// form: row-echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl ZLattice {
    pub fn from_generators(gens: &[Vec<BigInt>], dim: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        for r in &rows {
            assert_eq!(r.len(), dim, "generator length mismatch");
        }
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            if top == rows.len() {
                break;
            }
            // gcd-combine every row below `top` into the pivot row
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let a = rows[top][col].clone();
                let b = rows[r][col].clone();
                let g = a.extended_gcd(&b);
                let (x, y) = (g.x, g.y);
                let (ag, bg) = (&a / &g.gcd, &b / &g.gcd);
                let new_top: Vec<BigInt> = (0..dim).map(|c| &x * &rows[top][c] + &y * &rows[r][c]).collect();
                let new_r: Vec<BigInt> = (0..dim).map(|c| &ag * &rows[r][c] - &bg * &rows[top][c]).collect();
                rows[top] = new_top;
                rows[r] = new_r;
            }
            if rows[top][col].is_zero() {
                if let Some(r) = (top + 1..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                    rows.swap(top, r);
                } else {
                    continue;
                }
            }
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -x.clone();
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut lat = ZLattice { dim, rows, pivots };
        lat.reduce_above_pivots();
        lat
    }

    fn reduce_above_pivots(&mut self) {
        for (i, &p) in self.pivots.clone().iter().enumerate() {
            let piv = self.rows[i][p].clone();
            for r in 0..i {
                let q = self.rows[r][p].div_floor(&piv);
                if !q.is_zero() {
                    for c in 0..self.dim {
                        let v = &self.rows[i][c] * &q;
                        self.rows[r][c] -= v;
                    }
                }
            }
        }
    }

    pub fn from_i64(gens: &[Vec<i64>]) -> Self {
        let dim = gens.first().map_or(0, |g| g.len());
        let g: Vec<Vec<BigInt>> = gens.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_generators(&g, dim)
    }

    /// `diag(d_1, …, d_k) · Z^k`.
    pub fn diagonal(d: &[BigInt]) -> Self {
        let k = d.len();
        let gens: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { d[i].clone() } else { BigInt::zero() }).collect())
            .collect();
        Self::from_generators(&gens, k)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// `[Z^dim : L]` for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(self.rows.iter().enumerate().map(|(i, r)| r[self.pivots[i]].clone()).product())
    }

    /// Reduces `v` against the basis; the result is zero iff `v ∈ L`. For a
    /// full-rank lattice it is the unique representative with
    /// `0 ≤ v_i < pivot_i`, the lexicographically smallest nonnegative one.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let q = w[p].div_floor(&self.rows[i][p]);
            if !q.is_zero() {
                for c in 0..self.dim {
                    w[c] -= &self.rows[i][c] * &q;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let w = self.reduce(v);
        // for rank-deficient lattices a non-pivot column left over means v ∉ L
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &ZLattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Smallest positive `t` with `t·e_i ∈ L`, for each coordinate `i`.
    pub fn axis_periods(&self) -> Option<Vec<BigInt>> {
        let idx = self.index()?;
        let divisors = divisors(&idx);
        Some(
            (0..self.dim)
                .map(|i| {
                    divisors
                        .iter()
                        .find(|t| {
                            let mut v = vec![BigInt::zero(); self.dim];
                            v[i] = (*t).clone();
                            self.contains(&v)
                        })
                        .cloned()
                        .unwrap_or_else(|| idx.clone())
                })
                .collect(),
        )
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl fmt::Display for ZLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}
