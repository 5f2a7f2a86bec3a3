//! Weyl operators `U_{r,s} = sum_i w^{ir} |i><i+s|` on `N` levels, `w = exp(2 pi i / N)`.
//!
//! Dense matrices are only built by [`weyl_operator`]; the state, density
//! and overlap routines use the index-shift form directly.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrix::Matrix;
use crate::state::{DensityMatrix, StateVector};

/// Phase index `r` and shift index `s`, both in `[0, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylIndex {
    r: usize,
    s: usize,
}

impl WeylIndex {
    pub fn new(r: usize, s: usize, dim: usize) -> Result<Self> {
        for index in [r, s] {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        Ok(Self { r, s })
    }

    pub(crate) const fn new_unchecked(r: usize, s: usize) -> Self {
        Self { r, s }
    }

    pub fn r(self) -> usize {
        self.r
    }

    pub fn s(self) -> usize {
        self.s
    }

    /// All `N^2` indices in `(r, s)` lexicographic order.
    pub fn all(dim: usize) -> impl Iterator<Item = Self> {
        (0..dim).flat_map(move |r| (0..dim).map(move |s| Self { r, s }))
    }
}

/// `w_N^k`, evaluated from the reduced exponent `k mod N`.
pub fn root_of_unity(k: usize, dim: usize) -> Complex64 {
    let reduced = k % dim;
    if reduced == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let angle = 2.0 * core::f64::consts::PI * reduced as f64 / dim as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// `w_N^{k}` for a possibly negative exponent.
pub fn root_of_unity_signed(k: i64, dim: usize) -> Complex64 {
    root_of_unity(k.rem_euclid(dim as i64) as usize, dim)
}

/// Dense `N x N` matrix with entry `[i][i+s mod N] = w^{ir}`.
pub fn weyl_operator(dim: usize, idx: WeylIndex) -> Matrix {
    let mut m = Matrix::zeros(dim);
    for i in 0..dim {
        m[(i, (i + idx.s) % dim)] = root_of_unity(i * idx.r % dim, dim);
    }
    m
}

/// `U_{r,s} |psi>`: amplitude `i` becomes `w^{ir} psi_{i+s}`.
pub fn apply_weyl(psi: &StateVector, idx: WeylIndex) -> StateVector {
    let n = psi.dim();
    let a = psi.amplitudes();
    StateVector::from_raw(
        (0..n)
            .map(|i| root_of_unity(i * idx.r % n, n) * a[(i + idx.s) % n])
            .collect(),
    )
}

/// `U_{r,s}|G>` with amplitudes `(-1)^{g(i+s)} w^{ir} / sqrt(N)`.
pub fn apply_weyl_state(h: &Hypergraph, idx: WeylIndex) -> StateVector {
    let n = h.dim();
    let amp = 1.0 / (n as f64).sqrt();
    StateVector::from_raw(
        (0..n)
            .map(|i| {
                let sign = if h.g_raw((i + idx.s) % n) == 0 { amp } else { -amp };
                root_of_unity(i * idx.r % n, n) * sign
            })
            .collect(),
    )
}

/// `U rho U^dagger`, entry `(i,j)` = `w^{(i-j)r} rho_{i+s, j+s}`.
pub fn conjugate_by_weyl(rho: &DensityMatrix, idx: WeylIndex) -> DensityMatrix {
    let n = rho.dim();
    let m = rho.matrix();
    let phases: Vec<Complex64> = (0..n).map(|i| root_of_unity(i * idx.r % n, n)).collect();
    DensityMatrix::from_raw(Matrix::from_fn(n, |i, j| {
        phases[i] * phases[j].conj() * m[((i + idx.s) % n, (j + idx.s) % n)]
    }))
}

/// `<G|U_{r,s}|G> = (1/N) sum_i (-1)^{g(i+s) + g(i)} w^{ir}`.
pub fn overlap_weyl(h: &Hypergraph, idx: WeylIndex) -> Complex64 {
    overlap_from_signs(&h.sign_vector(), idx)
}

pub(crate) fn overlap_from_signs(signs: &[i8], idx: WeylIndex) -> Complex64 {
    let n = signs.len();
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &si) in signs.iter().enumerate() {
        let sign = f64::from(si * signs[(i + idx.s) % n]);
        total += root_of_unity(i * idx.r % n, n) * sign;
    }
    total / n as f64
}

/// `|<G|U_{r,s}|G>|^2` for every `(r, s)`, indexed `[r * N + s]`.
pub(crate) fn overlap_table(signs: &[i8]) -> Vec<f64> {
    let n = signs.len();
    WeylIndex::all(n)
        .map(|idx| overlap_from_signs(signs, idx).norm_sqr())
        .collect()
}
