//! Dense square complex matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = isqrt(entries.len());
        if dim * dim != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_real_rows<const D: usize>(rows: [[f64; D]; D]) -> Self {
        Self::from_fn(D, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product `self ⊗ other`, with `self` as the leading (most significant) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim;
        Self::from_fn(self.dim * d, |i, j| self[(i / d, j / d)] * other[(i % d, j % d)])
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Whether the Hermitian part of `self + shift·I` admits a Cholesky
    /// factorization, i.e. whether its smallest eigenvalue exceeds `-shift`.
    pub fn is_positive_with_shift(&self, shift: f64) -> bool {
        let n = self.dim;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = self[(j, j)].re + shift;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d.is_nan() || d <= 0.0 {
                return false;
            }
            let d = d.sqrt();
            l[j * n + j] = Complex64::new(d, 0.0);
            for i in (j + 1)..n {
                let mut s = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / d;
            }
        }
        true
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

fn isqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = Matrix::from_row_major(vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)]).unwrap();
        let b = Matrix::identity(2);
        assert_eq!(&a * &b, a);
        let aa = &a.adjoint() * &a;
        assert!(aa.hermitian_defect() < 1e-15);
        assert_eq!(a.adjoint()[(0, 1)], c(0.0, 1.0));
        assert!(Matrix::from_row_major(vec![c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn kron_orders_leading_factor_first() {
        let x = Matrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]);
        let i2 = Matrix::identity(2);
        let k = x.kron(&i2);
        // X on the most significant qubit maps |00> -> |10>.
        assert_eq!(k[(2, 0)], c(1.0, 0.0));
        assert_eq!(k[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn positivity_via_shifted_cholesky() {
        let psd = Matrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]]);
        assert!(psd.is_positive_with_shift(1e-10));
        let indefinite = Matrix::from_real_rows([[0.5, 0.6], [0.6, 0.5]]);
        assert!(!indefinite.is_positive_with_shift(1e-10));
        let slightly_negative = Matrix::from_real_rows([[1.0, 0.0], [0.0, -1e-9]]);
        assert!(!slightly_negative.is_positive_with_shift(1e-10));
        let within_tol = Matrix::from_real_rows([[1.0, 0.0], [0.0, -1e-11]]);
        assert!(within_tol.is_positive_with_shift(1e-10));
    }
}
