//! Hypergraph state vectors, density matrices, fidelity and l1-coherence.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrix::Matrix;
use crate::{EQ_TOL, SPECTRAL_TOL};

/// A normalized pure state on `N` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if amplitudes.is_empty() || (norm_sqr - 1.0).abs() > EQ_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// `|G> = N^{-1/2} sum_i (-1)^{g(i)} |i>`.
    pub fn hypergraph_state(h: &Hypergraph) -> Self {
        let amp = 1.0 / (h.dim() as f64).sqrt();
        Self::from_raw(
            h.sign_vector()
                .into_iter()
                .map(|s| Complex64::new(f64::from(s) * amp, 0.0))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        let a = &self.amplitudes;
        DensityMatrix::from_raw(Matrix::from_fn(a.len(), |i, j| a[i] * a[j].conj()))
    }
}

/// Hermitian, unit-trace, positive semidefinite `N x N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
}

impl DensityMatrix {
    /// Checks Hermiticity and trace (1e-12) and positivity (eigenvalues >= -1e-10).
    pub fn new(matrix: Matrix) -> Result<Self> {
        let rho = Self { matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_raw(matrix: Matrix) -> Self {
        Self { matrix }
    }

    /// The maximally mixed state `I / N`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_raw(Matrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Full validity check. The positivity part is a Cholesky factorization
    /// of `rho + 1e-10 I`, so it costs O(N^3).
    pub fn validate(&self) -> Result<()> {
        self.validate_cheap()?;
        if !self.matrix.is_positive_with_shift(SPECTRAL_TOL) {
            return Err(Error::NotPositive);
        }
        Ok(())
    }

    /// Hermiticity and trace only.
    pub fn validate_cheap(&self) -> Result<()> {
        let defect = self.matrix.hermitian_defect();
        if defect > EQ_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > EQ_TOL || tr.im.abs() > EQ_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        Ok(())
    }

    /// `sum_{i != j} |rho_ij|`.
    pub fn l1_coherence(&self) -> f64 {
        let n = self.dim();
        let mut total = 0.0;
        for i in 0..n {
            for (j, z) in self.matrix.row(i).iter().enumerate() {
                if i != j {
                    total += z.norm();
                }
            }
        }
        total
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                total += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        total
    }
}

/// `F = <G|rho|G>` for a pure reference state `G`.
///
/// Fails on a dimension mismatch or when the expectation value carries an
/// imaginary part above 1e-12, which only happens for a non-Hermitian `rho`.
pub fn fidelity_pure(reference: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    if reference.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: reference.dim(),
            found: rho.dim(),
        });
    }
    let g = reference.amplitudes();
    let rho_g = rho.matrix().mul_vec(g);
    let value: Complex64 = g.iter().zip(&rho_g).map(|(a, b)| a.conj() * b).sum();
    if value.im.abs() >= EQ_TOL {
        return Err(Error::ComplexExpectation(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn example_state_amplitudes() {
        let psi = StateVector::hypergraph_state(&Hypergraph::example_four_vertex());
        let signs = [1., 1., 1., 1., 1., 1., -1., 1., 1., -1., 1., 1., 1., -1., -1., 1.];
        for (a, s) in psi.amplitudes().iter().zip(signs) {
            assert_eq!(*a, c(s / 4.0));
        }
    }

    #[test]
    fn plus_state_and_cz() {
        let plus = StateVector::hypergraph_state(&Hypergraph::edgeless(1).unwrap());
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((plus.amplitudes()[0] - c(h)).norm() < 1e-15);
        assert!((plus.amplitudes()[1] - c(h)).norm() < 1e-15);
        let rho = plus.density();
        for z in rho.matrix().as_slice() {
            assert!((z - c(0.5)).norm() < 1e-15);
        }

        let cz = StateVector::hypergraph_state(&Hypergraph::new(2, [[0, 1]]).unwrap());
        assert_eq!(cz.amplitudes(), &[c(0.5), c(0.5), c(0.5), c(-0.5)]);
    }

    #[test]
    fn example_density_entry() {
        let rho = StateVector::hypergraph_state(&Hypergraph::example_four_vertex()).density();
        assert_eq!(rho.matrix()[(6, 9)], c(1.0 / 16.0));
        assert_eq!(rho.matrix()[(0, 6)], c(-1.0 / 16.0));
        assert!((rho.trace() - c(1.0)).norm() < EQ_TOL);
        rho.validate().unwrap();
    }

    #[test]
    fn coherence_of_simple_matrices() {
        let rho = StateVector::hypergraph_state(&Hypergraph::example_four_vertex()).density();
        assert!((rho.l1_coherence() - 15.0).abs() < EQ_TOL);
        assert_eq!(DensityMatrix::maximally_mixed(8).l1_coherence(), 0.0);
    }

    #[test]
    fn fidelity_cases() {
        let g = StateVector::hypergraph_state(&Hypergraph::example_four_vertex());
        assert!((fidelity_pure(&g, &g.density()).unwrap() - 1.0).abs() < EQ_TOL);
        let mixed = DensityMatrix::maximally_mixed(16);
        assert!((fidelity_pure(&g, &mixed).unwrap() - 1.0 / 16.0).abs() < EQ_TOL);
        assert!(matches!(
            fidelity_pure(&g, &DensityMatrix::maximally_mixed(8)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fidelity_rejects_non_hermitian_input() {
        let g = StateVector::hypergraph_state(&Hypergraph::edgeless(1).unwrap());
        let m = Matrix::from_row_major(vec![c(0.5), Complex64::new(0.0, 0.3), c(0.0), c(0.5)]).unwrap();
        assert!(DensityMatrix::new(m.clone()).is_err());
        let broken = DensityMatrix::from_raw(m);
        assert!(matches!(fidelity_pure(&g, &broken), Err(Error::ComplexExpectation(_))));
    }

    #[test]
    fn validation_errors() {
        assert!(StateVector::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::new(vec![]).is_err());
        assert!(matches!(
            DensityMatrix::new(Matrix::from_real_rows([[0.6, 0.0], [0.0, 0.6]])),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityMatrix::new(Matrix::from_real_rows([[1.5, 0.0], [0.0, -0.5]])),
            Err(Error::NotPositive)
        ));
    }

    fn arb_state(max_dim_log: u32) -> impl Strategy<Value = StateVector> {
        (1..=max_dim_log).prop_flat_map(|k| {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << k).prop_filter_map(
                "non-zero vector",
                |raw| {
                    let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                    (norm > 1e-3).then(|| {
                        StateVector::new(raw.iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect())
                            .unwrap()
                    })
                },
            )
        })
    }

    proptest! {
        #[test]
        fn hypergraph_state_has_uniform_magnitudes(n in 1usize..=6, seed in 0u64..500) {
            let h = Hypergraph::random(n, seed).unwrap();
            let psi = StateVector::hypergraph_state(&h);
            let expected = 1.0 / (h.dim() as f64).sqrt();
            for a in psi.amplitudes() {
                prop_assert!((a.norm() - expected).abs() < 1e-15);
            }
            let rho = psi.density();
            prop_assert!((rho.purity() - 1.0).abs() < SPECTRAL_TOL);
            prop_assert!((rho.l1_coherence() - (h.dim() - 1) as f64).abs() < 1e-12);
        }

        #[test]
        fn coherence_ignores_global_phase(psi in arb_state(4), phase in 0.0f64..6.3) {
            let rot = Complex64::from_polar(1.0, phase);
            let rotated = StateVector::new(psi.amplitudes().iter().map(|a| a * rot).collect()).unwrap();
            prop_assert!((psi.density().l1_coherence() - rotated.density().l1_coherence()).abs() < 1e-12);
        }

        #[test]
        fn fidelity_is_bounded(psi in arb_state(3), phi in arb_state(3)) {
            prop_assume!(psi.dim() == phi.dim());
            let f = fidelity_pure(&psi, &phi.density()).unwrap();
            prop_assert!((-1e-15..=1.0 + 1e-12).contains(&f));
        }
    }
}
