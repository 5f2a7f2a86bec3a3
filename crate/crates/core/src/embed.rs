//! Single-qubit channels acting on one qubit of an `n`-qubit register.
//!
//! Qubit `k` is the `k`-th tensor factor from the left, the same bit the
//! hypergraph module assigns to vertex `k`. A single-qubit operator `M` at
//! site `k` becomes `I^{⊗k} ⊗ M ⊗ I^{⊗(n-k-1)}`, built here by bit masking.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::channels::{KrausOperator, KrausSet};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::weyl::{weyl_operator, WeylIndex};
use crate::{EQ_TOL, MAX_VERTICES};

/// Target qubit `k` of an `n`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitSite(usize);

impl QubitSite {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < n {
            Ok(Self(k))
        } else {
            Err(Error::SiteOutOfRange { site: k, n })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `{ sqrt(1-p) I, sqrt(p) X }`, the two-level case of the dit-flip channel
/// (`X = U_{0,1}` for `N = 2`).
pub fn bit_flip_kraus(p: f64) -> Result<[Matrix; 2]> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1]",
        });
    }
    let flip = weyl_operator(2, WeylIndex::new_unchecked(0, 1));
    Ok([
        Matrix::identity(2).scale(Complex64::new((1.0 - p).sqrt(), 0.0)),
        flip.scale(Complex64::new(p.sqrt(), 0.0)),
    ])
}

/// Lifts a complete set of `2 x 2` Kraus operators to site `site` of an
/// `n`-qubit register.
pub fn embed_single_qubit_kraus(ops: &[Matrix], site: QubitSite, n: usize) -> Result<KrausSet> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::DimensionMismatch {
            expected: MAX_VERTICES,
            found: n,
        });
    }
    if site.0 >= n {
        return Err(Error::SiteOutOfRange { site: site.0, n });
    }
    if let Some(op) = ops.iter().find(|op| op.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.dim(),
        });
    }
    let mut sum = Matrix::zeros(2);
    for op in ops {
        let term = &op.adjoint() * op;
        for i in 0..2 {
            for j in 0..2 {
                sum[(i, j)] += term[(i, j)];
            }
        }
    }
    let defect = sum.max_abs_diff(&Matrix::identity(2));
    if defect.is_nan() || defect >= EQ_TOL {
        return Err(Error::IncompleteKraus(defect));
    }

    let dim = 1usize << n;
    let shift = n - 1 - site.0;
    let mask = 1usize << shift;
    let zero = Complex64::new(0.0, 0.0);
    let lifted = ops
        .iter()
        .map(|m| {
            KrausOperator::from_rows(
                dim,
                (0..dim).map(|i| {
                    let bit = (i >> shift) & 1;
                    let base = i & !mask;
                    [(base, m[(bit, 0)]), (base | mask, m[(bit, 1)])]
                        .into_iter()
                        .filter(|(_, v)| *v != zero)
                        .collect::<Vec<_>>()
                }),
            )
        })
        .collect();
    Ok(KrausSet::from_parts(dim, lifted))
}
