use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{Commutative, Rational, RationalAlgebra, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Submatrix of shape `h × w` at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, h: usize, w: usize) -> Self {
        Mat::from_fn(h, w, |i, j| self[(r + i, c + j)].clone())
    }

    /// `[[a, b], [c, d]]` from four blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        Mat::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - a.cols)].clone(),
            (false, true) => c[(i - a.rows, j)].clone(),
            (false, false) => d[(i - a.rows, j - a.cols)].clone(),
        })
    }

    /// The four `n × n` blocks `A, B, C, D` of a `2n × 2n` matrix.
    pub fn quarters(&self) -> [Self; 4] {
        assert!(self.is_square() && self.rows % 2 == 0);
        let n = self.rows / 2;
        [self.block(0, 0, n, n), self.block(0, n, n, n), self.block(n, 0, n, n), self.block(n, n, n, n)]
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros_like(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Mat { rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity_like(n: usize, proto: &T) -> Self {
        Self::scalar_like(n, &proto.one_like())
    }

    pub fn scalar_like(n: usize, s: &T) -> Self {
        let z = s.zero_like();
        Mat::from_fn(n, n, |i, j| if i == j { s.clone() } else { z.clone() })
    }

    pub fn diag(entries: &[T]) -> Self {
        let z = entries[0].zero_like();
        Mat::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { z.clone() })
    }

    pub fn proto(&self) -> &T {
        &self.data[0]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integral())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose `X̄ᵗ`.
    pub fn adjoint_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.adjoint_transpose() == *self
    }

    pub fn left_scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn right_scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        (1..self.rows).fold(self[(0, 0)].clone(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self[(i, 0)].clone() * rhs[(0, j)].clone();
                for k in 1..self.cols {
                    let a = &self[(i, k)];
                    let b = &rhs[(k, j)];
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                data.push(acc);
            }
        }
        Ok(Mat { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity_like(self.rows, self.proto()), |acc, _| &acc * self)
    }

    /// Gauss–Jordan inverse using left row operations only, so it is valid
    /// over division rings.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Parameter("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity_like(n, self.proto());
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[(r, col)].is_zero_elem())
                .ok_or_else(|| Error::NotInvertible(format!("singular {n}x{n} matrix")))?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p_inv = a[(col, col)]
                .inv()
                .ok_or_else(|| Error::NotInvertible("pivot has no inverse in the ring".into()))?;
            a.left_mul_row(col, &p_inv);
            inv.left_mul_row(col, &p_inv);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero_elem() {
                    let f = a[(r, col)].clone();
                    a.sub_left_multiple(r, col, &f);
                    inv.sub_left_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row_i ← s · row_i`.
    pub fn left_mul_row(&mut self, i: usize, s: &T) {
        for c in 0..self.cols {
            let v = s.clone() * self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }

    /// `col_j ← col_j · s`.
    pub fn right_mul_col(&mut self, j: usize, s: &T) {
        for r in 0..self.rows {
            let v = self[(r, j)].clone() * s.clone();
            self[(r, j)] = v;
        }
    }

    /// `row_i ← row_i − f · row_k`.
    pub fn sub_left_multiple(&mut self, i: usize, k: usize, f: &T) {
        for c in 0..self.cols {
            let v = self[(i, c)].clone() - f.clone() * self[(k, c)].clone();
            self[(i, c)] = v;
        }
    }

    /// `col_j ← col_j − col_k · f`.
    pub fn sub_right_multiple(&mut self, j: usize, k: usize, f: &T) {
        for r in 0..self.rows {
            let v = self[(r, j)].clone() - self[(r, k)].clone() * f.clone();
            self[(r, j)] = v;
        }
    }
}

impl<T: Scalar + Commutative> Mat<T> {
    /// Determinant by Gaussian elimination over the field of fractions.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Parameter("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 2 {
            return Ok(self[(0, 0)].clone() * self[(1, 1)].clone() - self[(0, 1)].clone() * self[(1, 0)].clone());
        }
        let mut a = self.clone();
        let mut det = self.proto().one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero_elem()) else {
                return Ok(self.proto().zero_like());
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = -det;
            }
            let p = a[(col, col)].clone();
            let p_inv = p
                .inv()
                .ok_or_else(|| Error::Domain("determinant needs a field of fractions".into()))?;
            det = det * p;
            for r in col + 1..n {
                if !a[(r, col)].is_zero_elem() {
                    let f = a[(r, col)].clone() * p_inv.clone();
                    a.sub_left_multiple(r, col, &f);
                }
            }
        }
        Ok(det)
    }
}

impl<T: RationalAlgebra> Mat<T> {
    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }
}

impl Mat<Rational> {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| crate::rings::rat(x)).collect()).collect())
    }

    pub fn from_int(m: &Mat<BigInt>) -> Self {
        m.map(|x| Rational::from_integer(x.clone()))
    }

    /// The integer matrix, if every entry is integral.
    pub fn to_int(&self) -> Option<Mat<BigInt>> {
        if self.is_integral() {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_like(n, &crate::rings::rat(0))
    }
}

impl Mat<BigInt> {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> Mat<Rational> {
        Mat::<Rational>::from_int(self)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
