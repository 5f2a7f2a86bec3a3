//! Closed form versus brute-force oracle, over grids of channels and hypergraphs.
//!
//! Each row compares [`analytic_fidelity`]/[`analytic_coherence`] against
//! `fidelity_pure(G, apply_channel(rho, kraus_set(..)))` and the l1-coherence
//! of the same evolved matrix. A failed comparison becomes a row with
//! `pass = false`; only malformed grids are errors.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::channels::{
    adc_coherence_decrease_threshold, adc_coherence_unnormalized, adc_kraus, analytic_coherence,
    analytic_fidelity, apply_channel, kraus_set, ChannelFamily, ChannelModel,
};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::state::{fidelity_pure, StateVector};

/// Both deltas of a passing row must stay below this.
pub const ROW_TOL: f64 = 1e-10;

/// Seed of the random hypergraph in [`default_hypergraphs`].
pub const RANDOM_HYPERGRAPH_SEED: u64 = 42;

/// Largest vertex count the dense oracle is run on.
pub const MAX_ORACLE_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedHypergraph {
    pub id: String,
    pub hypergraph: Hypergraph,
}

impl NamedHypergraph {
    pub fn new(id: impl Into<String>, hypergraph: Hypergraph) -> Self {
        Self {
            id: id.into(),
            hypergraph,
        }
    }
}

/// Edgeless and single-edge graphs on 2 vertices, the 4-vertex example,
/// and a seeded random 3-vertex hypergraph.
pub fn default_hypergraphs() -> Vec<NamedHypergraph> {
    vec![
        NamedHypergraph::new("edgeless_n2", Hypergraph::edgeless(2).expect("valid")),
        NamedHypergraph::new("single_edge_n2", Hypergraph::new(2, [[0, 1]]).expect("valid")),
        NamedHypergraph::new("example_n4", Hypergraph::example_four_vertex()),
        NamedHypergraph::new(
            format!("random_n3_seed{RANDOM_HYPERGRAPH_SEED}"),
            Hypergraph::random(3, RANDOM_HYPERGRAPH_SEED).expect("valid"),
        ),
    ]
}

/// Parameter points per channel family.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub families: Vec<ChannelFamily>,
    /// `p` for dit-flip, phase-flip, dit-phase-flip and depolarizing.
    pub flip_p: Vec<f64>,
    /// `(g, gamma)` pairs for amplitude damping.
    pub adc_rates: Vec<(f64, f64)>,
    pub adc_times: Vec<f64>,
    pub dephasing_p: Vec<f64>,
    pub dephasing_strength: f64,
    pub dephasing_frequency: f64,
    pub depolarization_p: Vec<f64>,
    pub depolarization_alpha: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            families: ChannelFamily::ALL.to_vec(),
            flip_p: vec![0.0, 0.1, 0.25, 0.5, 0.9, 1.0],
            adc_rates: vec![(1.0, 0.01), (1.0, 0.25), (1.0, 10.0), (1.0, 20.0)],
            adc_times: vec![0.0, 0.1, 0.5, 1.0, 5.0, 10.0],
            dephasing_p: vec![0.0, 0.1, 0.25, 0.4, 0.5],
            dephasing_strength: 0.5,
            dephasing_frequency: 40.0,
            depolarization_p: vec![0.0, 0.1, 0.25, 0.5, 0.9, 1.0],
            depolarization_alpha: vec![0.5, 1.0],
        }
    }
}

impl GridSpec {
    /// The default grid restricted to some families.
    pub fn only(families: &[ChannelFamily]) -> Self {
        Self {
            families: families.to_vec(),
            ..Self::default()
        }
    }

    /// Every model of `family` on this grid, in grid order.
    pub fn models(&self, family: ChannelFamily) -> Vec<ChannelModel> {
        match family {
            ChannelFamily::DitFlip => self.flip_p.iter().map(|&p| ChannelModel::DitFlip { p }).collect(),
            ChannelFamily::PhaseFlip => self.flip_p.iter().map(|&p| ChannelModel::PhaseFlip { p }).collect(),
            ChannelFamily::DitPhaseFlip => self.flip_p.iter().map(|&p| ChannelModel::DitPhaseFlip { p }).collect(),
            ChannelFamily::Depolarizing => self.flip_p.iter().map(|&p| ChannelModel::Depolarizing { p }).collect(),
            ChannelFamily::AdcNonMarkovian => self
                .adc_rates
                .iter()
                .flat_map(|&(decay_rate, coupling)| {
                    self.adc_times.iter().map(move |&time| ChannelModel::AdcNonMarkovian {
                        decay_rate,
                        coupling,
                        time,
                    })
                })
                .collect(),
            ChannelFamily::NmDephasing => self
                .dephasing_p
                .iter()
                .map(|&p| ChannelModel::NmDephasing {
                    p,
                    strength: self.dephasing_strength,
                    frequency: self.dephasing_frequency,
                })
                .collect(),
            ChannelFamily::NmDepolarizing => self
                .depolarization_alpha
                .iter()
                .flat_map(|&alpha| {
                    self.depolarization_p
                        .iter()
                        .map(move |&p| ChannelModel::NmDepolarizing { p, alpha })
                })
                .collect(),
        }
    }

    /// All models, family by family.
    pub fn all_models(&self) -> Vec<ChannelModel> {
        self.families.iter().flat_map(|&f| self.models(f)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub channel: ChannelFamily,
    pub hypergraph: String,
    pub params: Vec<(&'static str, f64)>,
    pub analytic_fidelity: f64,
    pub oracle_fidelity: f64,
    pub fidelity_delta: f64,
    pub analytic_coherence: f64,
    pub oracle_coherence: f64,
    pub coherence_delta: f64,
    pub pass: bool,
}

impl VerificationRow {
    /// `name=value` pairs joined by `;`.
    pub fn param_string(&self) -> String {
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(";")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    /// Seed of the random hypergraph, when one is part of the run.
    pub seed: Option<u64>,
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    /// Distinct channel families, in order of first appearance.
    pub fn channels(&self) -> Vec<ChannelFamily> {
        let mut seen = Vec::new();
        for row in &self.rows {
            if !seen.contains(&row.channel) {
                seen.push(row.channel);
            }
        }
        seen
    }
}

/// Runs every `(hypergraph, channel, parameter point)` combination in order.
pub fn run_verification(hypergraphs: &[NamedHypergraph], grid: &GridSpec) -> Result<VerificationReport> {
    let models = grid.all_models();
    for named in hypergraphs {
        let n = named.hypergraph.n();
        if n > MAX_ORACLE_VERTICES {
            return Err(Error::InvalidGrid(format!(
                "hypergraph {} has {n} vertices; the oracle supports at most {MAX_ORACLE_VERTICES}",
                named.id
            )));
        }
        for model in &models {
            model
                .validate(named.hypergraph.dim())
                .map_err(|e| Error::InvalidGrid(format!("{model}: {e}")))?;
        }
    }

    let mut rows = Vec::with_capacity(hypergraphs.len() * models.len());
    for named in hypergraphs {
        let h = &named.hypergraph;
        let g = StateVector::hypergraph_state(h);
        let rho = g.density();
        for model in &models {
            let analytic_f = analytic_fidelity(model, h)?;
            let analytic_c = analytic_coherence(model, h)?;
            let evolved = apply_channel(&rho, &kraus_set(model, h.dim())?)?;
            let oracle_f = fidelity_pure(&g, &evolved).unwrap_or(f64::NAN);
            let oracle_c = evolved.l1_coherence();
            let fidelity_delta = (analytic_f - oracle_f).abs();
            let coherence_delta = (analytic_c - oracle_c).abs();
            rows.push(VerificationRow {
                channel: model.family(),
                hypergraph: named.id.clone(),
                params: model.params(),
                analytic_fidelity: analytic_f,
                oracle_fidelity: oracle_f,
                fidelity_delta,
                analytic_coherence: analytic_c,
                oracle_coherence: oracle_c,
                coherence_delta,
                pass: fidelity_delta < ROW_TOL && coherence_delta < ROW_TOL,
            });
        }
    }

    let seed = hypergraphs
        .iter()
        .any(|nh| nh.id.ends_with(&format!("_seed{RANDOM_HYPERGRAPH_SEED}")))
        .then_some(RANDOM_HYPERGRAPH_SEED);
    Ok(VerificationReport { seed, rows })
}

/// One point of the amplitude-damping coherence scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint {
    pub lambda: f64,
    pub sqrt_one_minus_lambda: f64,
    /// l1-coherence of the evolved density matrix.
    pub oracle_coherence: f64,
    /// `(N-1)[2 sqrt(1-lambda) + (N-2)(1-lambda)]`.
    pub unnormalized_formula: f64,
    /// Whether `sqrt(1-lambda)` lies below the decrease threshold.
    pub below_threshold: bool,
}

/// Scans `lambda` over `steps` evenly spaced points in `[0, 1]` and records
/// the oracle coherence next to the unnormalized expression and the
/// decrease threshold. This is a report; nothing is asserted.
pub fn adc_threshold_scan(h: &Hypergraph, steps: usize) -> Result<Vec<ThresholdPoint>> {
    let dim = h.dim();
    let threshold = adc_coherence_decrease_threshold(dim)?;
    if steps < 2 {
        return Err(Error::InvalidGrid(format!("steps = {steps} must be at least 2")));
    }
    let rho = StateVector::hypergraph_state(h).density();
    (0..steps)
        .map(|k| {
            let lambda = k as f64 / (steps - 1) as f64;
            let evolved = apply_channel(&rho, &adc_kraus(lambda, dim)?)?;
            let x = (1.0 - lambda).sqrt();
            Ok(ThresholdPoint {
                lambda,
                sqrt_one_minus_lambda: x,
                oracle_coherence: evolved.l1_coherence(),
                unnormalized_formula: adc_coherence_unnormalized(lambda, dim),
                below_threshold: x < threshold,
            })
        })
        .collect()
}
