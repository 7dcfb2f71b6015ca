use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{self, LinearField};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

/// Element requirements for the generic matrix arithmetic.
pub trait Entry:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Entry for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

impl<T: Entry> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim("matrices must have at least one row and column"));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::dim("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
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

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
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
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::dim("vector length does not match column count"));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with<F: Fn(&T, &T) -> T>(&self, other: &Self, f: F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim("shape mismatch"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    /// `self^e` by repeated squaring; `e = 0` gives the identity.
    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dim("power of a non-square matrix"));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Column sums.
    pub fn col_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, j).clone()))
            .collect()
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(T::zero(), |acc, a| acc + a.clone()))
            .collect()
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|a| BigRational::from_integer(a.clone()))
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|a| a.is_positive())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|a| !a.is_negative())
    }

    /// Characteristic polynomial `det(tI - self)` by Berkowitz's
    /// division-free algorithm.
    pub fn charpoly(&self) -> Result<IntPolynomial> {
        if !self.is_square() {
            return Err(Error::dim(
                "characteristic polynomial of a non-square matrix",
            ));
        }
        let n = self.rows;
        // Coefficients highest degree first.
        let mut p: Vec<BigInt> = vec![BigInt::one()];
        for k in 0..n {
            // Leading (k+1)x(k+1) block: previous block, column c, row r, corner a.
            let a = self.get(k, k).clone();
            let c: Vec<BigInt> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let r: Vec<BigInt> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut first = vec![BigInt::one(), -a];
            let mut v = c;
            for _ in 0..k {
                let rv: BigInt = r.iter().zip(&v).map(|(x, y)| x * y).sum();
                first.push(-rv);
                v = (0..k)
                    .map(|i| (0..k).map(|j| self.get(i, j) * &v[j]).sum())
                    .collect();
            }
            // Lower-triangular Toeplitz (k+2)x(k+1) with first column `first`.
            let mut q = vec![BigInt::zero(); k + 2];
            for (i, qi) in q.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j {
                        *qi += &first[i - j] * pj;
                    }
                }
            }
            p = q;
        }
        p.reverse();
        Ok(IntPolynomial::new(p))
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    fn check_nonnegative(&self) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::domain("matrix has a negative entry"))
        }
    }

    /// Smallest `p` with `self^p` entrywise positive, searched up to the
    /// Wielandt bound `(s-1)^2 + 1`.
    pub fn primitivity_exponent(&self) -> Result<Option<usize>> {
        if !self.is_square() {
            return Err(Error::dim("primitivity of a non-square matrix"));
        }
        self.check_nonnegative()?;
        let n = self.rows;
        let pattern: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).is_positive()).collect())
            .collect();
        let mut cur = pattern.clone();
        let bound = (n - 1) * (n - 1) + 1;
        for p in 1..=bound {
            if cur.iter().all(|r| r.iter().all(|&b| b)) {
                return Ok(Some(p));
            }
            cur = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).any(|k| cur[i][k] && pattern[k][j]))
                        .collect()
                })
                .collect();
        }
        Ok(None)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity_exponent()?.is_some())
    }

    /// Smallest `M <= cap` with `self^M` entrywise positive.
    pub fn eventual_positivity_exponent(&self, cap: usize) -> Result<Option<usize>> {
        if !self.is_square() {
            return Err(Error::dim("powers of a non-square matrix"));
        }
        let mut cur = self.clone();
        for m in 1..=cap {
            if cur.is_positive() {
                return Ok(Some(m));
            }
            if m < cap {
                cur = cur.mul(self)?;
            }
        }
        Ok(None)
    }
}

impl RatMatrix {
    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dim("inverse of a non-square matrix"));
        }
        let inv = linalg::inverse(&self.to_rows())?;
        Self::from_rows(inv)
    }

    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|a| a.is_integer()) {
            Some(self.map(|a| a.to_integer()))
        } else {
            None
        }
    }

    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>> {
        linalg::solve(&self.to_rows(), b)
    }
}

impl LinearField for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_ref(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::Arithmetic("division by zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn charpoly_small_cases() {
        assert_eq!(
            m(&[&[1, 1], &[1, 2]]).charpoly().unwrap(),
            IntPolynomial::from_i64(&[1, -3, 1])
        );
        assert_eq!(
            m(&[&[1, 0], &[0, 1]]).charpoly().unwrap(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        let a1 = m(&[&[1, 1, 1], &[2, 3, 1], &[8, 13, 0]]);
        let expect = IntPolynomial::from_i64(&[1, -7, 1]).mul(&IntPolynomial::from_i64(&[3, 1]));
        assert_eq!(a1.charpoly().unwrap(), expect);
    }

    #[test]
    fn charpoly_matches_determinant_at_integer_points() {
        let a = m(&[&[0, 0, 46], &[1, 0, 15], &[0, 1, -3]]);
        let cp = a.charpoly().unwrap();
        for t0 in -5i64..=5 {
            let shifted = IntMatrix::identity(3)
                .scale(&BigInt::from(t0))
                .sub(&a)
                .unwrap();
            assert_eq!(cp.eval(&BigInt::from(t0)), shifted.determinant().unwrap());
        }
    }

    #[test]
    fn non_square_rejected() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3]]).unwrap();
        assert!(matches!(a.charpoly(), Err(Error::Dimension(_))));
    }

    #[test]
    fn primitivity() {
        assert_eq!(
            m(&[&[1, 1], &[1, 2]]).primitivity_exponent().unwrap(),
            Some(1)
        );
        assert_eq!(
            m(&[&[0, 1], &[1, 1]]).primitivity_exponent().unwrap(),
            Some(2)
        );
        assert_eq!(m(&[&[1, 0], &[0, 1]]).primitivity_exponent().unwrap(), None);
        assert!(matches!(
            m(&[&[1, -1], &[1, 1]]).primitivity_exponent(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn eventual_positivity() {
        assert_eq!(
            m(&[&[1, 2], &[3, 4]])
                .eventual_positivity_exponent(10)
                .unwrap(),
            Some(1)
        );
        assert_eq!(
            m(&[&[0, -1], &[1, 0]])
                .eventual_positivity_exponent(100)
                .unwrap(),
            None
        );
    }

    #[test]
    fn rational_inverse() {
        let c = m(&[&[0, -1], &[1, 3]]).to_rational();
        let d = c.inverse().unwrap();
        assert_eq!(d.to_integer().unwrap(), m(&[&[3, 1], &[-1, 0]]));
        assert_eq!(c.mul(&d).unwrap(), RatMatrix::identity(2));
    }

    #[test]
    fn powers() {
        let a = m(&[&[1, 1], &[1, 2]]);
        assert_eq!(a.pow(4).unwrap(), m(&[&[13, 21], &[21, 34]]));
        assert_eq!(a.pow(0).unwrap(), IntMatrix::identity(2));
    }
}
