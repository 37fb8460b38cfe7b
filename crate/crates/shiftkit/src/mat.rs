//! Dense square matrices in row-major order.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Mat {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row vectors, rejecting non-square input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        Ok(Mat {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Companion matrix of a monic polynomial of degree >= 1: ones on the
    /// subdiagonal, negated coefficients in the last column.
    pub fn companion(p: &Poly<T>) -> Option<Self> {
        let deg = p.degree()?;
        if deg == 0 || !p.is_monic() {
            return None;
        }
        let mut m = Mat::zero(deg);
        for i in 1..deg {
            m[(i, i - 1)] = T::one();
        }
        for i in 0..deg {
            m[(i, deg - 1)] = p.coeff(i).neg();
        }
        Some(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat {
            n: self.n,
            data: self.data.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }

    /// Adds `k` to every diagonal entry in place (used by Horner evaluation).
    pub fn add_scaled_identity(&mut self, k: &T) {
        for i in 0..self.n {
            let v = self[(i, i)].clone() + k.clone();
            self[(i, i)] = v;
        }
    }

    /// Exact product, rejecting mismatched dimensions.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row: &mut [T] = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o = o.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Column-major flattening (column 0 first). This is the vec ordering used
    /// by the commutation system and all span computations.
    pub fn vec_col_major(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(self.n * self.n);
        for j in 0..self.n {
            for i in 0..self.n {
                v.push(self[(i, j)].clone());
            }
        }
        v
    }

    /// Inverse of [`Mat::vec_col_major`].
    pub fn from_vec_col_major(n: usize, v: &[T]) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: n * n,
            });
        }
        Ok(Mat::from_fn(n, |i, j| v[j * n + i].clone()))
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        Mat {
            n: self.n,
            data: self.data.iter().map(|x| x.clone().neg()).collect(),
        }
    }
}
