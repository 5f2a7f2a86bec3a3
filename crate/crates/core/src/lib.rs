//! Qudit hypergraph states under noisy Weyl/Kraus channels.
//!
//! An `n`-vertex hypergraph defines an `N = 2^n` dimensional state
//! `|G> = N^{-1/2} sum_i (-1)^{g(i)} |i>`, treated as a single qudit. This
//! crate builds those states, generates Kraus sets for seven noise channels
//! (dit-flip, phase-flip, dit-phase-flip, depolarizing, non-Markovian
//! amplitude damping, non-Markovian dephasing and non-Markovian
//! depolarization), and evaluates both the closed-form fidelity/coherence
//! expressions and a brute-force density-matrix oracle so the two can be
//! compared.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, CSV formats and the
//! command-line front end live in the `hypernoise` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channels;
pub mod embed;
mod error;
pub mod hypergraph;
pub mod matrix;
pub mod state;
pub mod verify;
pub mod weyl;

pub use channels::{ChannelFamily, ChannelModel, KrausOperator, KrausSet};
pub use error::{Error, HypergraphErrorKind, Result};
pub use hypergraph::{BasisIndex, Hypergraph};
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use state::{DensityMatrix, StateVector};
pub use weyl::WeylIndex;

/// Tolerance for equality-style checks (normalization, Hermiticity, trace, completeness).
pub const EQ_TOL: f64 = 1e-12;

/// Tolerance for spectrally amplified checks (positivity, rank).
pub const SPECTRAL_TOL: f64 = 1e-10;

/// Largest supported vertex count (`N = 4096`).
pub const MAX_VERTICES: usize = 12;
