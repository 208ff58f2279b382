use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::{int_det, EvenForm};
use crate::error::{Error, Result};
use crate::matrices::Mat;

fn gram_i64(form: &EvenForm) -> Result<Vec<Vec<i64>>> {
    form.gram()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| Error::Parameter("Gram entries too large".into()))).collect())
        .collect()
}

fn bil(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, row) in g.iter().enumerate() {
        if x[i] != 0 {
            acc += x[i] * row.iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    acc
}

/// All `x` with `xᵗSx ≤ bound`, using `|xᵢ| ≤ √(bound·(S⁻¹)ᵢᵢ)`.
fn short_vectors(form: &EvenForm, g: &[Vec<i64>], bound: i64) -> Result<Vec<Vec<i64>>> {
    let n = form.rank();
    let det = form.det().to_i64().ok_or_else(|| Error::Parameter("determinant too large".into()))?;
    let limits: Vec<i64> = (0..n)
        .map(|i| {
            let a = form.adjugate()[(i, i)].to_i64().unwrap_or(i64::MAX / 4);
            (bound * a / det).sqrt()
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, x: &mut Vec<i64>, limits: &[i64], g: &[Vec<i64>], bound: i64, out: &mut Vec<Vec<i64>>) {
        if i == x.len() {
            let q = bil(g, x, x);
            if q > 0 && q <= bound {
                out.push(x.clone());
            }
            return;
        }
        for v in -limits[i]..=limits[i] {
            x[i] = v;
            rec(i + 1, x, limits, g, bound, out);
        }
        x[i] = 0;
    }
    rec(0, &mut x, &limits, g, bound, &mut out);
    Ok(out)
}

fn extend(cols: &mut Vec<Vec<i64>>, g: &[Vec<i64>], by_norm: &[Vec<Vec<i64>>], out: &mut Vec<Vec<Vec<i64>>>) {
    let j = cols.len();
    if j == g.len() {
        out.push(cols.clone());
        return;
    }
    for v in &by_norm[j] {
        if (0..j).all(|k| bil(g, &cols[k], v) == g[k][j]) {
            cols.push(v.clone());
            extend(cols, g, by_norm, out);
            cols.pop();
        }
    }
}

/// `{U ∈ Z^{n×n} : UᵗSU = S, det U = 1}` for a positive definite `S`, in a
/// deterministic order.
pub fn enumerate_aut(form: &EvenForm) -> Result<Vec<Mat<BigInt>>> {
    if !form.is_positive_definite() {
        return Err(Error::Parameter(format!("{} is not positive definite", form.name())));
    }
    let g = gram_i64(form)?;
    let n = g.len();
    let bound = (0..n).map(|i| g[i][i]).max().unwrap_or(0);
    let short = short_vectors(form, &g, bound)?;
    let by_norm: Vec<Vec<Vec<i64>>> =
        (0..n).map(|j| short.iter().filter(|v| bil(&g, v, v) == g[j][j]).cloned().collect()).collect();
    let found: Vec<Vec<Vec<i64>>> = by_norm[0]
        .par_iter()
        .map(|first| {
            let mut out = Vec::new();
            extend(&mut vec![first.clone()], &g, &by_norm, &mut out);
            out
        })
        .flatten()
        .collect();
    let mut result = Vec::new();
    for cols in found {
        let u = Mat::from_fn(n, n, |i, j| BigInt::from(cols[j][i]));
        if int_det(&u)?.is_one() {
            result.push(u);
        }
    }
    Ok(result)
}

/// Whether a finite set of square matrices is closed under products and
/// inverses (full Cayley table).
pub fn is_closed_group(elems: &[Mat<BigInt>]) -> bool {
    let set: HashSet<&Mat<BigInt>> = elems.iter().collect();
    let Some(first) = elems.first() else { return false };
    let id = Mat::identity_like(first.rows(), first.proto());
    if !set.contains(&id) {
        return false;
    }
    let closed = elems.par_iter().all(|a| elems.iter().all(|b| set.contains(&(a * b))));
    // a finite set closed under products containing I is a group once every
    // element has a right inverse in it
    closed && elems.par_iter().all(|a| elems.iter().any(|b| (a * b) == id))
}
