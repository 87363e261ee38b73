//! Dense matrices over exact scalars: products, Bareiss determinants,
//! Hermite and Smith normal forms over the integers, and row reduction over
//! fields.

use std::fmt;

use crate::scalar::{FieldScalar, IntegerScalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn zip(&self, other: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows `r0..r1` as a new matrix.
    pub fn row_block(&self, r0: usize, r1: usize) -> Matrix<T> {
        Matrix::from_rows((r0..r1).map(|i| self.row(i).to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + c.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + c.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }
}

use num_traits::Zero;

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Fraction-free determinant.
pub fn determinant<T: IntegerScalar>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return T::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j).clone() * a.get(k, k).clone() - a.get(i, k).clone() * a.get(k, j).clone()) / prev.clone();
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

/// Row Hermite normal form: nonzero rows only, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows<T: IntegerScalar>(m: &Matrix<T>) -> Matrix<T> {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..a.rows).filter(|&i| !a.get(i, c).is_zero()).collect();
            let Some(&p) = nz.iter().min_by_key(|&&i| a.get(i, c).abs()) else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..a.rows {
                if !a.get(i, c).is_zero() {
                    let q = a.get(i, c).div_floor(a.get(r, c));
                    a.add_row(i, r, &-q);
                    if !a.get(i, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a.get(i, c).div_floor(a.get(r, c));
            if !q.is_zero() {
                a.add_row(i, r, &-q);
            }
        }
        r += 1;
    }
    a.row_block(0, r)
}

/// Smith normal form `U A V = D` with unimodular `U`, `V`.
#[derive(Clone)]
pub struct Smith<T> {
    /// Nonzero diagonal entries, each dividing the next.
    pub divisors: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

pub fn smith<T: IntegerScalar>(m: &Matrix<T>) -> Smith<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() && best.is_none_or(|(bi, bj)| a.get(i, j).abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.add_row(i, t, &-q.clone());
                    u.add_row(i, t, &-q);
                    if !a.get(i, t).is_zero() {
                        a.swap_rows(t, i);
                        u.swap_rows(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                    if !a.get(t, j).is_zero() {
                        a.swap_cols(t, j);
                        v.swap_cols(t, j);
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    a.add_row(t, i, &T::one());
                    u.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        divisors.push(a.get(t, t).clone());
    }
    Smith { divisors, u, v }
}

/// Basis (as rows) of the saturated lattice `{z ∈ ℤⁿ : A z = 0}`.
pub fn integer_kernel<T: IntegerScalar>(a: &Matrix<T>) -> Matrix<T> {
    let s = smith(a);
    let r = s.divisors.len();
    let vt = s.v.transpose();
    vt.row_block(r, a.cols)
}

/// An integer solution of `A z = b`, if one exists.
pub fn solve_integer<T: IntegerScalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let s = smith(a);
    let ub = s.u.mul_vec(b);
    let r = s.divisors.len();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![T::zero(); a.cols];
    for i in 0..r {
        if !ub[i].is_multiple_of(&s.divisors[i]) {
            return None;
        }
        y[i] = ub[i].clone() / s.divisors[i].clone();
    }
    Some(s.v.mul_vec(&y))
}

/// Reduced row echelon form over a field; returns the nonzero rows and the
/// pivot columns.
pub fn rref<T: FieldScalar>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        a.swap_rows(r, p);
        let inv = T::one() / a.get(r, c).clone();
        for j in 0..a.cols {
            let v = a.get(r, j).clone() * inv.clone();
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i != r && !a.get(i, c).is_zero() {
                let f = -a.get(i, c).clone();
                a.add_row(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a.row_block(0, r), pivots)
}

pub fn rank<T: FieldScalar>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : A x = 0}` over the field, one vector per
/// free column in increasing order.
pub fn kernel<T: FieldScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); m.cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

pub fn inverse<T: FieldScalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(m.is_square());
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, T::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}
