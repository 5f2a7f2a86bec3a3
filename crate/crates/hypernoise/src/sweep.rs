//! One-parameter sweeps of a channel on a fixed hypergraph, with the closed
//! forms and the dense oracle side by side.

use std::io::Write;

use hypernoise_core::channels::{analytic_coherence, analytic_fidelity, apply_channel, kraus_set};
use hypernoise_core::state::fidelity_pure;
use hypernoise_core::verify::MAX_ORACLE_VERTICES;
use hypernoise_core::{ChannelFamily, ChannelModel, Hypergraph, StateVector};

use crate::format::{fmt_g12, fmt_metric, FormatError};

/// Values used for parameters that are neither swept nor given with `--fixed`.
/// `p` and `t` have no default.
pub const DEFAULT_FIXED: [(&str, f64); 5] = [("g", 1.0), ("gamma", 0.01), ("eta", 0.5), ("omega", 40.0), ("alpha", 0.5)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Metric {
    Fidelity,
    Coherence,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SweepError {
    #[error("steps = {0} must be at least 2")]
    Steps(usize),
    #[error("range must satisfy from < to (got {start} .. {stop})")]
    Range { start: f64, stop: f64 },
    #[error("{channel} has no parameter {name:?} (expected one of {expected})")]
    UnknownParameter {
        channel: ChannelFamily,
        name: String,
        expected: String,
    },
    #[error("parameter {0:?} is given more than once")]
    Repeated(String),
    #[error("no metrics selected")]
    NoMetrics,
    #[error("the oracle supports at most {MAX_ORACLE_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("at {param} = {value}: {source}")]
    Point {
        param: String,
        value: f64,
        source: hypernoise_core::Error,
    },
}

/// A validated sweep description. The grid is
/// `start + (stop - start) k / (steps - 1)` for `k = 0..steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    channel: ChannelFamily,
    param: &'static str,
    start: f64,
    stop: f64,
    steps: usize,
    fixed: Vec<(&'static str, f64)>,
    metrics: Vec<Metric>,
}

impl SweepSpec {
    pub fn new(
        channel: ChannelFamily,
        param: &str,
        start: f64,
        stop: f64,
        steps: usize,
        fixed: &[(String, f64)],
        metrics: &[Metric],
    ) -> Result<Self, SweepError> {
        if steps < 2 {
            return Err(SweepError::Steps(steps));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(SweepError::Range { start, stop });
        }
        let lookup = |name: &str| {
            channel
                .param_names()
                .iter()
                .copied()
                .find(|&p| p == name)
                .ok_or_else(|| SweepError::UnknownParameter {
                    channel,
                    name: name.to_owned(),
                    expected: channel.param_names().join(", "),
                })
        };
        let param = lookup(param)?;

        let mut given: Vec<(&'static str, f64)> = Vec::new();
        for (name, value) in fixed {
            let name = lookup(name)?;
            if name == param || given.iter().any(|(n, _)| *n == name) {
                return Err(SweepError::Repeated(name.to_owned()));
            }
            given.push((name, *value));
        }
        let fixed = channel
            .param_names()
            .iter()
            .filter(|&&n| n != param)
            .filter_map(|&n| {
                given
                    .iter()
                    .chain(DEFAULT_FIXED.iter())
                    .find(|(k, _)| *k == n)
                    .map(|&(_, v)| (n, v))
            })
            .collect();

        let mut metrics = metrics.to_vec();
        metrics.sort();
        metrics.dedup();
        if metrics.is_empty() {
            return Err(SweepError::NoMetrics);
        }

        let spec = Self {
            channel,
            param,
            start,
            stop,
            steps,
            fixed,
            metrics,
        };
        spec.model_at(start)?;
        Ok(spec)
    }

    pub fn channel(&self) -> ChannelFamily {
        self.channel
    }

    pub fn param(&self) -> &'static str {
        self.param
    }

    pub fn metrics(&self) -> &[Metric] {
        &self.metrics
    }

    /// Grid points in ascending order; the last one is exactly `stop`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last as f64
                }
            })
            .collect()
    }

    pub fn model_at(&self, value: f64) -> Result<ChannelModel, SweepError> {
        self.channel
            .build(|name| {
                if name == self.param {
                    Some(value)
                } else {
                    self.fixed.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
                }
            })
            .map_err(|source| self.point_error(value, source))
    }

    fn point_error(&self, value: f64, source: hypernoise_core::Error) -> SweepError {
        SweepError::Point {
            param: self.param.to_owned(),
            value,
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub analytic_fidelity: f64,
    pub oracle_fidelity: f64,
    pub analytic_coherence: f64,
    pub oracle_coherence: f64,
}

/// Evaluates every grid point in grid order.
pub fn run_sweep(spec: &SweepSpec, h: &Hypergraph) -> Result<Vec<SweepRow>, SweepError> {
    if h.n() > MAX_ORACLE_VERTICES {
        return Err(SweepError::TooLarge(h.n()));
    }
    let g = StateVector::hypergraph_state(h);
    let rho = g.density();
    spec.grid()
        .into_iter()
        .map(|x| {
            let model = spec.model_at(x)?;
            let err = |e| spec.point_error(x, e);
            model.validate(h.dim()).map_err(err)?;
            let evolved = apply_channel(&rho, &kraus_set(&model, h.dim()).map_err(err)?).map_err(err)?;
            Ok(SweepRow {
                param: x,
                analytic_fidelity: analytic_fidelity(&model, h).map_err(err)?,
                oracle_fidelity: fidelity_pure(&g, &evolved).map_err(err)?,
                analytic_coherence: analytic_coherence(&model, h).map_err(err)?,
                oracle_coherence: evolved.l1_coherence(),
            })
        })
        .collect()
}

/// Header plus one line per row, restricted to the selected metrics.
pub fn write_sweep_csv<W: Write>(metrics: &[Metric], rows: &[SweepRow], w: W) -> Result<(), FormatError> {
    let fidelity = metrics.contains(&Metric::Fidelity);
    let coherence = metrics.contains(&Metric::Coherence);
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["param"];
    if fidelity {
        header.extend(["analytic_fidelity", "oracle_fidelity"]);
    }
    if coherence {
        header.extend(["analytic_coherence", "oracle_coherence"]);
    }
    out.write_record(&header)?;
    for row in rows {
        let mut fields = vec![fmt_g12(row.param)];
        if fidelity {
            fields.extend([fmt_metric(row.analytic_fidelity), fmt_metric(row.oracle_fidelity)]);
        }
        if coherence {
            fields.extend([fmt_metric(row.analytic_coherence), fmt_metric(row.oracle_coherence)]);
        }
        out.write_record(&fields)?;
    }
    out.flush()?;
    Ok(())
}
