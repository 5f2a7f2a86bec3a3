//! The seven qudit noise channels.
//!
//! Six of the channels are Weyl mixtures: an identity branch with weight
//! `w0` plus a uniform weight `w` on a fixed set of Weyl operators
//! (shifts only, phases only, or every `(r,s) != (0,0)`). Their Kraus
//! operators are `sqrt(w0) I` and `sqrt(w) U_{r,s}`, and the fidelity with
//! the input hypergraph state is `w0 + w * sum |<G|U_{r,s}|G>|^2` over that
//! set. The remaining channel is the non-Markovian amplitude damping
//! channel, parameterized by `lambda(t)`.
//!
//! Two independent routes are provided for every channel:
//! [`apply_channel`] evolves a density matrix through an explicit Kraus set,
//! and [`analytic_fidelity`] / [`analytic_coherence`] evaluate the closed
//! forms from the hypergraph's sign function.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrix::Matrix;
use crate::state::DensityMatrix;
use crate::weyl::{overlap_table, root_of_unity, WeylIndex};
use crate::EQ_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChannelFamily {
    DitFlip,
    PhaseFlip,
    DitPhaseFlip,
    Depolarizing,
    AdcNonMarkovian,
    NmDephasing,
    NmDepolarizing,
}

impl ChannelFamily {
    pub const ALL: [Self; 7] = [
        Self::DitFlip,
        Self::PhaseFlip,
        Self::DitPhaseFlip,
        Self::Depolarizing,
        Self::AdcNonMarkovian,
        Self::NmDephasing,
        Self::NmDepolarizing,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::DitFlip => "dit-flip",
            Self::PhaseFlip => "phase-flip",
            Self::DitPhaseFlip => "dit-phase-flip",
            Self::Depolarizing => "depolarizing",
            Self::AdcNonMarkovian => "adc",
            Self::NmDephasing => "nm-dephasing",
            Self::NmDepolarizing => "nm-depolarizing",
        }
    }

    /// Parameter names accepted by [`ChannelFamily::build`], in report order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Self::DitFlip | Self::PhaseFlip | Self::DitPhaseFlip | Self::Depolarizing => &["p"],
            Self::AdcNonMarkovian => &["g", "gamma", "t"],
            Self::NmDephasing => &["p", "eta", "omega"],
            Self::NmDepolarizing => &["p", "alpha"],
        }
    }

    /// Builds a model, looking each parameter up by name.
    pub fn build(self, mut param: impl FnMut(&'static str) -> Option<f64>) -> Result<ChannelModel> {
        let mut get = |name| param(name).ok_or(Error::MissingParameter(name));
        let model = match self {
            Self::DitFlip => ChannelModel::DitFlip { p: get("p")? },
            Self::PhaseFlip => ChannelModel::PhaseFlip { p: get("p")? },
            Self::DitPhaseFlip => ChannelModel::DitPhaseFlip { p: get("p")? },
            Self::Depolarizing => ChannelModel::Depolarizing { p: get("p")? },
            Self::AdcNonMarkovian => ChannelModel::AdcNonMarkovian {
                decay_rate: get("g")?,
                coupling: get("gamma")?,
                time: get("t")?,
            },
            Self::NmDephasing => ChannelModel::NmDephasing {
                p: get("p")?,
                strength: get("eta")?,
                frequency: get("omega")?,
            },
            Self::NmDepolarizing => ChannelModel::NmDepolarizing {
                p: get("p")?,
                alpha: get("alpha")?,
            },
        };
        Ok(model)
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ChannelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidGrid(alloc::format!("unknown channel {s:?}")))
    }
}

/// A channel together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    DitFlip { p: f64 },
    PhaseFlip { p: f64 },
    DitPhaseFlip { p: f64 },
    Depolarizing { p: f64 },
    /// Amplitude damping with decay rate `g`, coupling `gamma` and time `t`.
    AdcNonMarkovian { decay_rate: f64, coupling: f64, time: f64 },
    /// Dephasing with `kappa(p)` of strength `eta` and frequency `omega`.
    NmDephasing { p: f64, strength: f64, frequency: f64 },
    NmDepolarizing { p: f64, alpha: f64 },
}

impl ChannelModel {
    pub fn family(&self) -> ChannelFamily {
        match self {
            Self::DitFlip { .. } => ChannelFamily::DitFlip,
            Self::PhaseFlip { .. } => ChannelFamily::PhaseFlip,
            Self::DitPhaseFlip { .. } => ChannelFamily::DitPhaseFlip,
            Self::Depolarizing { .. } => ChannelFamily::Depolarizing,
            Self::AdcNonMarkovian { .. } => ChannelFamily::AdcNonMarkovian,
            Self::NmDephasing { .. } => ChannelFamily::NmDephasing,
            Self::NmDepolarizing { .. } => ChannelFamily::NmDepolarizing,
        }
    }

    /// `(name, value)` pairs in [`ChannelFamily::param_names`] order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Self::DitFlip { p } | Self::PhaseFlip { p } | Self::DitPhaseFlip { p } | Self::Depolarizing { p } => {
                vec![("p", p)]
            }
            Self::AdcNonMarkovian {
                decay_rate,
                coupling,
                time,
            } => vec![("g", decay_rate), ("gamma", coupling), ("t", time)],
            Self::NmDephasing {
                p,
                strength,
                frequency,
            } => vec![("p", p), ("eta", strength), ("omega", frequency)],
            Self::NmDepolarizing { p, alpha } => vec![("p", p), ("alpha", alpha)],
        }
    }

    /// Checks the parameter ranges for an `N`-level system.
    pub fn validate(&self, dim: usize) -> Result<()> {
        self.plan(dim).map(|_| ())
    }

    fn plan(&self, dim: usize) -> Result<Plan> {
        if dim < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: dim });
        }
        let n = dim as f64;
        let n2 = n * n;
        let mix = |identity_weight, weyl_weight, support| {
            Plan::Weyl(WeylMixture {
                identity_weight,
                weyl_weight,
                support,
            })
        };
        Ok(match *self {
            Self::DitFlip { p } => {
                check_probability("p", p)?;
                mix(1.0 - p, p / (n - 1.0), Support::Shifts)
            }
            Self::PhaseFlip { p } => {
                check_probability("p", p)?;
                mix(1.0 - p, p / (n - 1.0), Support::Phases)
            }
            Self::DitPhaseFlip { p } => {
                check_probability("p", p)?;
                mix(1.0 - p, p / (n2 - 1.0), Support::All)
            }
            Self::Depolarizing { p } => {
                check_probability("p", p)?;
                mix(1.0 - (n2 - 1.0) * p / n2, p / n2, Support::All)
            }
            Self::AdcNonMarkovian {
                decay_rate,
                coupling,
                time,
            } => Plan::Adc {
                lambda: lambda_adc(decay_rate, coupling, time)?,
            },
            Self::NmDephasing {
                p,
                strength,
                frequency,
            } => {
                let kappa = kappa_dephasing(p, strength, frequency)?;
                mix(1.0 - kappa, kappa / (n2 - 1.0), Support::All)
            }
            Self::NmDepolarizing { p, alpha } => {
                check_probability("p", p)?;
                check_probability("alpha", alpha)?;
                let (l1, l2) = nm_depolarizing_lambdas(p, alpha);
                let identity_weight = 1.0 + (n2 - 1.0) * (1.0 - p) * l1 / n2;
                if identity_weight < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        value: alpha,
                        reason: "identity Kraus weight is negative",
                    });
                }
                mix(identity_weight, p * l2 / n2, Support::All)
            }
        })
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family().tag())?;
        for (name, value) in self.params() {
            write!(f, " {name}={value}")?;
        }
        Ok(())
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        })
    }
}

/// Which Weyl operators carry the non-identity weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Support {
    /// `U_{0,s}`, `s >= 1`.
    Shifts,
    /// `U_{r,0}`, `r >= 1`.
    Phases,
    /// Every `U_{r,s}` with `(r,s) != (0,0)`.
    All,
}

impl Support {
    fn indices(self, dim: usize) -> Vec<WeylIndex> {
        match self {
            Self::Shifts => (1..dim).map(|s| WeylIndex::new_unchecked(0, s)).collect(),
            Self::Phases => (1..dim).map(|r| WeylIndex::new_unchecked(r, 0)).collect(),
            Self::All => WeylIndex::all(dim).skip(1).collect(),
        }
    }
}

/// Probability weights of a Weyl-mixture channel.
#[derive(Debug, Clone, Copy)]
struct WeylMixture {
    identity_weight: f64,
    weyl_weight: f64,
    support: Support,
}

#[derive(Debug, Clone, Copy)]
enum Plan {
    Weyl(WeylMixture),
    Adc { lambda: f64 },
}

/// `lambda(t) = 1 - e^{-gt} (g/l sinh(lt/2) + cosh(lt/2))^2` with `l = sqrt(g^2 - 2 gamma g)`.
///
/// When `g^2 < 2 gamma g` the hyperbolic functions become `sin`/`cos` of
/// `|l| t / 2`. Internally `g/l sinh(lt/2)` is written as
/// `(gt/2) sinh(z)/z`, `z = lt/2`, which stays finite as `l -> 0`.
pub fn lambda_adc(decay_rate: f64, coupling: f64, time: f64) -> Result<f64> {
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "g",
            value: decay_rate,
            reason: "must be positive",
        });
    }
    if !(coupling >= 0.0 && coupling.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: coupling,
            reason: "must be non-negative",
        });
    }
    if !(time >= 0.0 && time.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: time,
            reason: "must be non-negative",
        });
    }
    let g = decay_rate;
    let disc = g * g - 2.0 * coupling * g;
    let h = g * time / 2.0;
    let z = disc.abs().sqrt() * time / 2.0;
    let amplitude = if disc >= 0.0 {
        if z > 20.0 {
            0.5 * ((z - h).exp() * (h / z + 1.0) + (-z - h).exp() * (1.0 - h / z))
        } else {
            let sinhc = if z < 1e-8 { 1.0 } else { z.sinh() / z };
            (-h).exp() * (h * sinhc + z.cosh())
        }
    } else {
        let sinc = if z < 1e-8 { 1.0 } else { z.sin() / z };
        (-h).exp() * (h * sinc + z.cos())
    };
    let lambda = 1.0 - amplitude * amplitude;
    if !(-EQ_TOL..=1.0 + EQ_TOL).contains(&lambda) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: time,
            reason: "lambda(t) falls outside [0, 1]",
        });
    }
    Ok(lambda.clamp(0.0, 1.0))
}

/// `kappa(p) = p (1 + eta (1 - 2p) sin(omega p)) / (1 + eta (1 - 2p))` for `0 <= p <= 1/2`.
pub fn kappa_dephasing(p: f64, strength: f64, frequency: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1/2]",
        });
    }
    if !(strength >= 0.0 && strength.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: strength,
            reason: "must be non-negative",
        });
    }
    if !(frequency >= 0.0 && frequency.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: frequency,
            reason: "must be non-negative",
        });
    }
    let memory = strength * (1.0 - 2.0 * p);
    let kappa = p * (1.0 + memory * (frequency * p).sin()) / (1.0 + memory);
    if !(0.0..=1.0).contains(&kappa) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: strength,
            reason: "kappa(p) falls outside [0, 1]",
        });
    }
    Ok(kappa)
}

/// `(Lambda1, Lambda2) = (-alpha p, alpha (1 - p))`, so `(1-p) Lambda1 + p Lambda2 = 0`.
pub fn nm_depolarizing_lambdas(p: f64, alpha: f64) -> (f64, f64) {
    (-alpha * p, alpha * (1.0 - p))
}

/// `(-1 + sqrt(N-1)) / (N-2)`: the bound on `sqrt(1 - lambda)` below which
/// the unnormalized amplitude-damping coherence expression falls under `N - 1`.
pub fn adc_coherence_decrease_threshold(dim: usize) -> Result<f64> {
    if dim < 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: dim });
    }
    let n = dim as f64;
    Ok(((n - 1.0).sqrt() - 1.0) / (n - 2.0))
}

/// Fidelity of the damped hypergraph state at a given `lambda`:
/// `[1 + (N-1) sqrt(1-lambda)]^2 / N^2 + lambda (N-1) / N^2`.
pub fn adc_fidelity(lambda: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let x = (1.0 - lambda).sqrt();
    let head = 1.0 + (n - 1.0) * x;
    (head * head + lambda * (n - 1.0)) / (n * n)
}

/// l1-coherence of the damped hypergraph state:
/// `((N-1)/N) [2 sqrt(1-lambda) + (N-2)(1-lambda)]`.
pub fn adc_coherence(lambda: f64, dim: usize) -> f64 {
    adc_coherence_unnormalized(lambda, dim) / dim as f64
}

/// `(N-1) [2 sqrt(1-lambda) + (N-2)(1-lambda)]`, the coherence expression
/// without the `1/N` carried by every entry of the damped density matrix.
/// It equals `N (N-1)` at `lambda = 0`, not `N - 1`; use [`adc_coherence`].
pub fn adc_coherence_unnormalized(lambda: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let x = (1.0 - lambda).sqrt();
    (n - 1.0) * (2.0 * x + (n - 2.0) * (1.0 - lambda))
}

/// Amplitude damping Kraus set at a given `lambda`:
/// `E_0 = |0><0| + sqrt(1-lambda) sum_{i>=1} |i><i|`, `E_i = sqrt(lambda) |0><i|`.
pub fn adc_kraus(lambda: f64, dim: usize) -> Result<KrausSet> {
    check_probability("lambda", lambda)?;
    let x = Complex64::new((1.0 - lambda).sqrt(), 0.0);
    let root = Complex64::new(lambda.sqrt(), 0.0);
    let mut ops = Vec::with_capacity(dim);
    ops.push(KrausOperator::from_rows(
        dim,
        (0..dim).map(|i| vec![(i, if i == 0 { Complex64::new(1.0, 0.0) } else { x })]),
    ));
    for k in 1..dim {
        ops.push(KrausOperator::from_rows(
            dim,
            (0..dim).map(|i| if i == 0 { vec![(k, root)] } else { Vec::new() }),
        ));
    }
    Ok(KrausSet { dim, ops })
}

/// One Kraus operator, stored row-compressed.
///
/// Every operator these channels produce has at most two non-zeros per
/// row, so the sparse form keeps [`apply_channel`] at `O(N * nnz)` per
/// operator while still being an exact `E rho E^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl KrausOperator {
    pub(crate) fn from_rows<R>(dim: usize, rows: impl Iterator<Item = R>) -> Self
    where
        R: IntoIterator<Item = (usize, Complex64)>,
    {
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                debug_assert!(c < dim);
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        debug_assert_eq!(row_ptr.len(), dim + 1);
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    /// Keeps the non-zero entries of a dense matrix.
    pub fn from_dense(m: &Matrix) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::from_rows(
            m.dim(),
            (0..m.dim()).map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != zero)
                    .map(|(j, v)| (j, *v))
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// `coef * U_{r,s}`.
    pub fn scaled_weyl(coef: f64, idx: WeylIndex, dim: usize) -> Self {
        Self::from_rows(
            dim,
            (0..dim).map(|i| [((i + idx.s()) % dim, root_of_unity(i * idx.r() % dim, dim) * coef)]),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Non-zero entries `(column, value)` of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                m[(i, j)] += v;
            }
        }
        m
    }
}

/// A list of `N x N` Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    dim: usize,
    ops: Vec<KrausOperator>,
}

impl KrausSet {
    /// Checks dimensions and completeness `||sum E^dagger E - I|| < 1e-12`.
    pub fn new(dim: usize, ops: Vec<KrausOperator>) -> Result<Self> {
        if let Some(op) = ops.iter().find(|op| op.dim != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.dim,
            });
        }
        let set = Self { dim, ops };
        let defect = set.completeness_defect();
        if defect.is_nan() || defect >= EQ_TOL {
            return Err(Error::IncompleteKraus(defect));
        }
        Ok(set)
    }

    pub(crate) fn from_parts(dim: usize, ops: Vec<KrausOperator>) -> Self {
        Self { dim, ops }
    }

    pub fn from_dense(dim: usize, ops: &[Matrix]) -> Result<Self> {
        Self::new(dim, ops.iter().map(KrausOperator::from_dense).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn operators(&self) -> &[KrausOperator] {
        &self.ops
    }

    /// `sum_k E_k^dagger E_k`.
    pub fn completeness_sum(&self) -> Matrix {
        let n = self.dim;
        let mut acc = Matrix::zeros(n);
        for op in &self.ops {
            for i in 0..n {
                for (a, ea) in op.row(i) {
                    for (b, eb) in op.row(i) {
                        acc[(a, b)] += ea.conj() * eb;
                    }
                }
            }
        }
        acc
    }

    /// Largest entrywise deviation of `sum_k E_k^dagger E_k` from the identity.
    pub fn completeness_defect(&self) -> f64 {
        self.completeness_sum().max_abs_diff(&Matrix::identity(self.dim))
    }
}

/// Kraus set of `model` on `N` levels. Weyl-mixture channels list the
/// identity branch first, then the Weyl branches in `(r, s)` order; the
/// amplitude damping set is `E_0, E_1, ..., E_{N-1}`.
pub fn kraus_set(model: &ChannelModel, dim: usize) -> Result<KrausSet> {
    match model.plan(dim)? {
        Plan::Weyl(mix) => {
            let indices = mix.support.indices(dim);
            let mut ops = Vec::with_capacity(indices.len() + 1);
            ops.push(KrausOperator::scaled_weyl(
                mix.identity_weight.sqrt(),
                WeylIndex::new_unchecked(0, 0),
                dim,
            ));
            let coef = mix.weyl_weight.sqrt();
            ops.extend(indices.into_iter().map(|idx| KrausOperator::scaled_weyl(coef, idx, dim)));
            Ok(KrausSet::from_parts(dim, ops))
        }
        Plan::Adc { lambda } => adc_kraus(lambda, dim),
    }
}

/// `Lambda(rho) = sum_k E_k rho E_k^dagger`.
pub fn apply_channel(rho: &DensityMatrix, ks: &KrausSet) -> Result<DensityMatrix> {
    let n = rho.dim();
    if ks.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ks.dim,
        });
    }
    let m = rho.matrix();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Matrix::zeros(n);
    // tmp = E rho, one row at a time
    let mut tmp = vec![zero; n * n];
    for op in &ks.ops {
        if op.nnz() == 0 {
            continue;
        }
        tmp.iter_mut().for_each(|z| *z = zero);
        for i in 0..n {
            let dst = &mut tmp[i * n..(i + 1) * n];
            for (a, ea) in op.row(i) {
                for (d, r) in dst.iter_mut().zip(m.row(a)) {
                    *d += ea * r;
                }
            }
        }
        // out += tmp E^dagger, (tmp E^dagger)_{ij} = sum_b tmp_{ib} conj(E_{jb})
        for j in 0..n {
            for (b, ejb) in op.row(j) {
                let c = ejb.conj();
                for i in 0..n {
                    out[(i, j)] += tmp[i * n + b] * c;
                }
            }
        }
    }
    Ok(DensityMatrix::from_raw(out))
}

/// Closed-form fidelity `<G| Lambda(|G><G|) |G>` for the hypergraph state of `h`.
pub fn analytic_fidelity(model: &ChannelModel, h: &Hypergraph) -> Result<f64> {
    let dim = h.dim();
    match (model, model.plan(dim)?) {
        (ChannelModel::PhaseFlip { p }, _) => Ok(1.0 - p),
        (_, Plan::Adc { lambda }) => Ok(adc_fidelity(lambda, dim)),
        (_, Plan::Weyl(mix)) => {
            let table = overlap_table(&h.sign_vector());
            let spread: f64 = mix
                .support
                .indices(dim)
                .into_iter()
                .map(|idx| table[idx.r() * dim + idx.s()])
                .sum();
            Ok(mix.identity_weight + mix.weyl_weight * spread)
        }
    }
}

/// Closed-form l1-coherence of the evolved hypergraph state.
///
/// Phase-flip uses `(N-1) |1 - p - p/(N-1)|` and amplitude damping uses
/// [`adc_coherence`]. The other channels have no hypergraph-independent
/// form; for them this sums the off-diagonal moduli of [`analytic_density`].
pub fn analytic_coherence(model: &ChannelModel, h: &Hypergraph) -> Result<f64> {
    let dim = h.dim();
    let n = dim as f64;
    match (model, model.plan(dim)?) {
        (ChannelModel::PhaseFlip { p }, _) => Ok((n - 1.0) * (1.0 - p - p / (n - 1.0)).abs()),
        (_, Plan::Adc { lambda }) => Ok(adc_coherence(lambda, dim)),
        (_, Plan::Weyl(_)) => Ok(analytic_density(model, h)?.l1_coherence()),
    }
}

/// The evolved hypergraph state built entry by entry from the sign function.
///
/// For Weyl mixtures,
/// `rho_ij = (1/N) [w0 (-1)^{g(i)+g(j)} + w sum_{(r,s)} (-1)^{g(i+s)+g(j+s)} w^{(i-j)r}]`,
/// the sum running over the channel's Weyl support. For amplitude damping,
/// `rho_00 = (1 + (N-1) lambda)/N`, `rho_0j = sqrt(1-lambda) (-1)^{g(j)} / N`
/// and `rho_ij = (1-lambda) (-1)^{g(i)+g(j)} / N` for `i, j >= 1`.
pub fn analytic_density(model: &ChannelModel, h: &Hypergraph) -> Result<DensityMatrix> {
    let dim = h.dim();
    let n = dim as f64;
    let signs: Vec<f64> = h.sign_vector().into_iter().map(f64::from).collect();
    let matrix = match model.plan(dim)? {
        Plan::Adc { lambda } => {
            let x = (1.0 - lambda).sqrt();
            Matrix::from_fn(dim, |i, j| {
                let v = match (i, j) {
                    (0, 0) => (1.0 + (n - 1.0) * lambda) / n,
                    (0, j) => x * signs[j] / n,
                    (i, 0) => x * signs[i] / n,
                    (i, j) => (1.0 - lambda) * signs[i] * signs[j] / n,
                };
                Complex64::new(v, 0.0)
            })
        }
        Plan::Weyl(mix) => {
            // phase_sums[s][d] = sum over r with (r, s) in the support of w^{d r}
            let mut phase_sums = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
            for idx in mix.support.indices(dim) {
                for (d, slot) in phase_sums[idx.s()].iter_mut().enumerate() {
                    *slot += root_of_unity(d * idx.r() % dim, dim);
                }
            }
            let active: Vec<usize> = (0..dim)
                .filter(|&s| phase_sums[s].iter().any(|z| *z != Complex64::new(0.0, 0.0)))
                .collect();
            Matrix::from_fn(dim, |i, j| {
                let d = (i + dim - j) % dim;
                let mut spread = Complex64::new(0.0, 0.0);
                for &s in &active {
                    spread += phase_sums[s][d] * (signs[(i + s) % dim] * signs[(j + s) % dim]);
                }
                (Complex64::new(mix.identity_weight * signs[i] * signs[j], 0.0) + spread * mix.weyl_weight) / n
            })
        }
    };
    Ok(DensityMatrix::from_raw(matrix))
}
