//! Pfaffians and determinants over exact rings.
//!
//! Matrix indices are 0-based throughout this module.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::orient::sorting_sign;
use crate::ring::Ring;

/// A dense rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j)))
            })
        }))
    }

    /// Removes the listed rows and the listed columns.
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Self> {
        for &i in del_rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange { index: i, size: self.rows });
            }
        }
        for &j in del_cols {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange { index: j, size: self.cols });
            }
        }
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        Ok(Self::from_fn(keep_r.len(), keep_c.len(), |i, j| {
            self.get(keep_r[i], keep_c[j]).clone()
        }))
    }

    /// Removes the listed rows and the same columns.
    pub fn principal_minor(&self, del: &[usize]) -> Result<Self> {
        self.minor(del, del)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// A skew-symmetric matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<R>(Matrix<R>);

impl<R: Ring> SkewMatrix<R> {
    pub fn new(m: Matrix<R>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        for i in 0..m.rows() {
            if !m.get(i, i).is_zero() {
                return Err(Error::NotSkew(i, i));
            }
            for j in i + 1..m.rows() {
                if *m.get(i, j) != m.get(j, i).neg() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewMatrix(m))
    }

    /// Builds the matrix from its strict upper triangle `f(i, j)`, `i < j`.
    pub fn from_upper<F: FnMut(usize, usize) -> R>(n: usize, mut f: F) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                m.set(j, i, v.neg());
                m.set(i, j, v);
            }
        }
        SkewMatrix(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.0
    }

    pub fn principal_minor(&self, del: &[usize]) -> Result<Self> {
        Ok(SkewMatrix(self.0.principal_minor(del)?))
    }

    /// Swaps rows `i, j` and columns `i, j` together.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let perm = |x: usize| if x == i { j } else if x == j { i } else { x };
        SkewMatrix(Matrix::from_fn(self.size(), self.size(), |a, b| {
            self.get(perm(a), perm(b)).clone()
        }))
    }

    /// `Sᵀ A S`.
    pub fn congruence(&self, s: &Matrix<R>) -> Result<Self> {
        let m = s.transpose().mul(&self.0)?.mul(s)?;
        SkewMatrix::new(m)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> SkewMatrix<S> {
        SkewMatrix(self.0.map(f))
    }
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        Err(Error::OddPfaffian(n))
    } else {
        Ok(())
    }
}

/// Sum over perfect matchings, each signed by the parity of its index word.
pub fn pf_combinatorial<R: Ring>(a: &SkewMatrix<R>) -> Result<R> {
    let n = a.size();
    require_even(n)?;
    fn rec<R: Ring>(
        a: &SkewMatrix<R>,
        free: &mut Vec<usize>,
        word: &mut Vec<usize>,
        prod: R,
        acc: &mut R,
    ) {
        if free.is_empty() {
            let term = if sorting_sign(word).is_plus() { prod } else { prod.neg() };
            *acc = acc.add(&term);
            return;
        }
        let i = free.remove(0);
        for idx in 0..free.len() {
            let j = free.remove(idx);
            let entry = a.get(i, j);
            if !entry.is_zero() {
                word.push(i);
                word.push(j);
                rec(a, free, word, prod.mul(entry), acc);
                word.truncate(word.len() - 2);
            }
            free.insert(idx, j);
        }
        free.insert(0, i);
    }
    let mut acc = R::zero();
    let mut free: Vec<usize> = (0..n).collect();
    rec(a, &mut free, &mut Vec::with_capacity(n), R::one(), &mut acc);
    Ok(acc)
}

/// Expansion along the first surviving row, memoized on the surviving set.
pub fn pf_row_development<R: Ring>(a: &SkewMatrix<R>) -> Result<R> {
    let n = a.size();
    require_even(n)?;
    if n > 64 {
        return Err(Error::Precondition("row development supports n <= 64".into()));
    }
    fn rec<R: Ring>(a: &SkewMatrix<R>, mask: u64, memo: &mut HashMap<u64, R>) -> R {
        if mask == 0 {
            return R::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << i);
        let mut acc = R::zero();
        let mut bits = rest;
        let mut k = 0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = a.get(i, j);
            if !entry.is_zero() {
                let sub = rec(a, rest & !(1u64 << j), memo);
                let term = entry.mul(&sub);
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            k += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(rec(a, full, &mut HashMap::new()))
}

/// Pfaffian by congruence elimination over the rationals.
pub fn pf_numeric(a: &SkewMatrix<BigRational>) -> Result<BigRational> {
    let n = a.size();
    require_even(n)?;
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    // col/row dst += c * col/row src; determinant one, so Pf is unchanged
    fn add_multiple(m: &mut [Vec<BigRational>], src: usize, dst: usize, c: &BigRational) {
        for row in m.iter_mut() {
            let v = &row[src] * c;
            row[dst] += v;
        }
        let src_row = m[src].clone();
        for (x, s) in m[dst].iter_mut().zip(&src_row) {
            *x += s * c;
        }
    }
    let mut result = BigRational::from_integer(1.into());
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) else {
            return Ok(<BigRational as Ring>::zero());
        };
        if j != k + 1 {
            m.swap(j, k + 1);
            for row in m.iter_mut() {
                row.swap(j, k + 1);
            }
            result = -result;
        }
        let p = m[k][k + 1].clone();
        result *= &p;
        for i in k + 2..n {
            if !m[k][i].is_zero() {
                let c = -(&m[k][i] / &p);
                add_multiple(&mut m, k + 1, i, &c);
            }
            if !m[k + 1][i].is_zero() {
                let c = &m[k + 1][i] / &p;
                add_multiple(&mut m, k, i, &c);
            }
        }
    }
    Ok(result)
}

/// Determinant by Laplace expansion, memoized on the set of used columns.
pub fn determinant<R: Ring>(a: &Matrix<R>) -> Result<R> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n > 63 {
        return Err(Error::Precondition("cofactor expansion supports n <= 63".into()));
    }
    fn rec<R: Ring>(a: &Matrix<R>, used: u64, memo: &mut HashMap<u64, R>) -> R {
        let row = used.count_ones() as usize;
        if row == a.rows() {
            return R::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = R::zero();
        let mut k = 0;
        for j in 0..a.cols() {
            if used & (1u64 << j) != 0 {
                continue;
            }
            let entry = a.get(row, j);
            if !entry.is_zero() {
                let term = entry.mul(&rec(a, used | (1u64 << j), memo));
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            k += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    Ok(rec(a, 0, &mut HashMap::new()))
}

/// Fraction-free (Bareiss) elimination.
pub fn determinant_integer(a: &Matrix<BigInt>) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(<BigInt as Ring>::zero());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Gaussian elimination over the rationals.
pub fn determinant_rational(a: &Matrix<BigRational>) -> Result<BigRational> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(<BigRational as Ring>::zero());
        };
        if r != k {
            m.swap(k, r);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let c = &m[i][k] / &p;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= y * &c;
            }
        }
    }
    Ok(det)
}

/// For odd `n` with zero column sums: the common value of
/// `(-1)^p Pf(A^(p))` over 0-based pivots `p`, and whether all pivots agree.
pub fn pf_minor_sequence<R: Ring>(a: &SkewMatrix<R>) -> Result<(R, bool)> {
    let n = a.size();
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("pivot minors need odd size (got {n})")));
    }
    for j in 0..n {
        let s = (0..n).fold(R::zero(), |acc, i| acc.add(a.get(i, j)));
        if !s.is_zero() {
            return Err(Error::NonzeroRowSum(j));
        }
    }
    let values: Vec<R> = (0..n)
        .into_par_iter()
        .map(|p| {
            let v = pf_row_development(&a.principal_minor(&[p])?)?;
            Ok(if p % 2 == 0 { v } else { v.neg() })
        })
        .collect::<Result<_>>()?;
    let consistent = values.iter().all(|v| *v == values[0]);
    Ok((values[0].clone(), consistent))
}
