//! Closed forms and the library oracle checked against a separate dense
//! implementation that shares no code with the crate: states from per-edge
//! controlled-phase products, Kraus operators written out from their
//! definitions, and lambda(t) from a direct ODE integration.

use hypernoise_core::channels::{analytic_coherence, analytic_fidelity, apply_channel, kraus_set, lambda_adc};
use hypernoise_core::state::fidelity_pure;
use hypernoise_core::{ChannelModel, Complex64, Hypergraph, StateVector};
use proptest::prelude::*;

type Dense = Vec<Vec<Complex64>>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn zeros(n: usize) -> Dense {
    vec![vec![zero(); n]; n]
}

/// Applies one controlled-phase gate per edge to `|+>^n`; vertex 0 is the
/// leading tensor factor.
fn gate_state(n: usize, edges: &[&[usize]]) -> Vec<Complex64> {
    let dim = 1usize << n;
    let mut psi = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    for edge in edges {
        for (i, amp) in psi.iter_mut().enumerate() {
            if edge.iter().all(|&v| (i >> (n - 1 - v)) & 1 == 1) {
                *amp = -*amp;
            }
        }
    }
    psi
}

fn weyl(dim: usize, r: usize, s: usize) -> Dense {
    let mut u = zeros(dim);
    for (i, row) in u.iter_mut().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * ((i * r) % dim) as f64 / dim as f64;
        row[(i + s) % dim] = Complex64::from_polar(1.0, angle);
    }
    u
}

fn scaled(m: Dense, c: f64) -> Dense {
    m.into_iter().map(|row| row.into_iter().map(|z| z * c).collect()).collect()
}

/// Identity weight `w0` plus weight `w` on every listed `(r, s)`.
fn weyl_mixture(dim: usize, w0: f64, w: f64, support: impl Iterator<Item = (usize, usize)>) -> Vec<Dense> {
    let mut ops = vec![scaled(weyl(dim, 0, 0), w0.sqrt())];
    ops.extend(support.map(|(r, s)| scaled(weyl(dim, r, s), w.sqrt())));
    ops
}

fn kraus_from_definition(model: &ChannelModel, dim: usize) -> Vec<Dense> {
    let d = dim as f64;
    let all = move || (0..dim).flat_map(move |r| (0..dim).map(move |s| (r, s))).skip(1);
    match *model {
        ChannelModel::DitFlip { p } => weyl_mixture(dim, 1.0 - p, p / (d - 1.0), (1..dim).map(|s| (0, s))),
        ChannelModel::PhaseFlip { p } => weyl_mixture(dim, 1.0 - p, p / (d - 1.0), (1..dim).map(|r| (r, 0))),
        ChannelModel::DitPhaseFlip { p } => weyl_mixture(dim, 1.0 - p, p / (d * d - 1.0), all()),
        ChannelModel::Depolarizing { p } => weyl_mixture(dim, 1.0 - (d * d - 1.0) * p / (d * d), p / (d * d), all()),
        ChannelModel::NmDephasing { p, strength, frequency } => {
            let damp = 1.0 + strength * (1.0 - 2.0 * p);
            let kappa = p * (1.0 + strength * (1.0 - 2.0 * p) * (frequency * p).sin()) / damp;
            weyl_mixture(dim, 1.0 - kappa, kappa / (d * d - 1.0), all())
        }
        ChannelModel::NmDepolarizing { p, alpha } => {
            let (l1, l2) = (-alpha * p, alpha * (1.0 - p));
            weyl_mixture(dim, 1.0 + (d * d - 1.0) * (1.0 - p) * l1 / (d * d), p * l2 / (d * d), all())
        }
        ChannelModel::AdcNonMarkovian { decay_rate, coupling, time } => {
            let lambda = lambda_ode(decay_rate, coupling, time);
            let mut e0 = zeros(dim);
            e0[0][0] = Complex64::new(1.0, 0.0);
            for (i, row) in e0.iter_mut().enumerate().skip(1) {
                row[i] = Complex64::new((1.0 - lambda).sqrt(), 0.0);
            }
            let mut ops = vec![e0];
            for i in 1..dim {
                let mut e = zeros(dim);
                e[0][i] = Complex64::new(lambda.sqrt(), 0.0);
                ops.push(e);
            }
            ops
        }
    }
}

fn evolve(rho: &Dense, ops: &[Dense]) -> Dense {
    let n = rho.len();
    let mut out = zeros(n);
    for e in ops {
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero();
                for k in 0..n {
                    if e[i][k] == zero() {
                        continue;
                    }
                    for l in 0..n {
                        acc += e[i][k] * rho[k][l] * e[j][l].conj();
                    }
                }
                out[i][j] += acc;
            }
        }
    }
    out
}

fn outer(psi: &[Complex64]) -> Dense {
    psi.iter().map(|a| psi.iter().map(|b| a * b.conj()).collect()).collect()
}

fn expectation(psi: &[Complex64], rho: &Dense) -> Complex64 {
    let mut acc = zero();
    for (i, a) in psi.iter().enumerate() {
        for (j, b) in psi.iter().enumerate() {
            acc += a.conj() * rho[i][j] * b;
        }
    }
    acc
}

fn l1(rho: &Dense) -> f64 {
    let mut total = 0.0;
    for (i, row) in rho.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                total += z.norm();
            }
        }
    }
    total
}

/// `sqrt(1 - lambda)` solves `x'' + g x' + (gamma g / 2) x = 0`, `x(0) = 1`,
/// `x'(0) = 0`. Classical RK4 on that system.
fn lambda_ode(g: f64, gamma: f64, t: f64) -> f64 {
    let steps = 20_000;
    let h = t / steps as f64;
    let f = |x: f64, v: f64| (v, -g * v - 0.5 * gamma * g * x);
    let (mut x, mut v) = (1.0, 0.0);
    for _ in 0..steps {
        let (k1x, k1v) = f(x, v);
        let (k2x, k2v) = f(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
        let (k3x, k3v) = f(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
        let (k4x, k4v) = f(x + h * k3x, v + h * k3v);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    1.0 - x * x
}

struct Case {
    n: usize,
    edges: &'static [&'static [usize]],
}

const CASES: [Case; 5] = [
    Case { n: 1, edges: &[] },
    Case { n: 2, edges: &[] },
    Case { n: 2, edges: &[&[0, 1]] },
    Case { n: 3, edges: &[&[0, 1, 2], &[1, 2]] },
    Case { n: 4, edges: &[&[0, 3], &[1, 2], &[0, 2, 3], &[1, 2, 3]] },
];

fn models() -> Vec<ChannelModel> {
    let mut out = Vec::new();
    for p in [0.0, 0.2, 0.5, 0.8, 1.0] {
        out.push(ChannelModel::DitFlip { p });
        out.push(ChannelModel::PhaseFlip { p });
        out.push(ChannelModel::DitPhaseFlip { p });
        out.push(ChannelModel::Depolarizing { p });
        out.push(ChannelModel::NmDepolarizing { p, alpha: 0.7 });
    }
    for p in [0.0, 0.1, 0.3, 0.45, 0.5] {
        out.push(ChannelModel::NmDephasing { p, strength: 0.5, frequency: 40.0 });
    }
    for (coupling, time) in [(0.01, 0.0), (0.01, 3.0), (10.0, 0.7), (20.0, 2.5), (20.0, 9.0)] {
        out.push(ChannelModel::AdcNonMarkovian { decay_rate: 1.0, coupling, time });
    }
    out
}

#[test]
fn gate_level_states_match() {
    for case in &CASES {
        let h = Hypergraph::new(case.n, case.edges.iter().map(|e| e.to_vec())).unwrap();
        let lib = StateVector::hypergraph_state(&h);
        let gate = gate_state(case.n, case.edges);
        for (a, b) in lib.amplitudes().iter().zip(&gate) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}

#[test]
fn closed_forms_and_library_oracle_match_independent_evolution() {
    for case in &CASES {
        let h = Hypergraph::new(case.n, case.edges.iter().map(|e| e.to_vec())).unwrap();
        let dim = h.dim();
        let psi = gate_state(case.n, case.edges);
        let rho = outer(&psi);
        let lib_g = StateVector::hypergraph_state(&h);
        for model in models() {
            let evolved = evolve(&rho, &kraus_from_definition(&model, dim));
            let f = expectation(&psi, &evolved);
            assert!(f.im.abs() < 1e-13);
            let c = l1(&evolved);

            let af = analytic_fidelity(&model, &h).unwrap();
            let ac = analytic_coherence(&model, &h).unwrap();
            assert!((af - f.re).abs() < 1e-10, "{model} n={}: fidelity {af} vs {}", case.n, f.re);
            assert!((ac - c).abs() < 1e-10, "{model} n={}: coherence {ac} vs {c}", case.n);

            let lib = apply_channel(&lib_g.density(), &kraus_set(&model, dim).unwrap()).unwrap();
            for (i, row) in evolved.iter().enumerate() {
                for (j, z) in row.iter().enumerate() {
                    assert!((lib.matrix()[(i, j)] - z).norm() < 1e-12, "{model} ({i},{j})");
                }
            }
            assert!((fidelity_pure(&lib_g, &lib).unwrap() - f.re).abs() < 1e-12);
        }
    }
}

#[test]
fn lambda_matches_ode() {
    for (g, gamma) in [(1.0, 0.01), (1.0, 0.25), (1.0, 0.5), (1.0, 10.0), (1.0, 20.0), (2.0, 0.3)] {
        for t in [0.0, 0.3, 1.0, 2.5, 6.0, 10.0] {
            let closed = lambda_adc(g, gamma, t).unwrap();
            let ode = lambda_ode(g, gamma, t);
            assert!((closed - ode).abs() < 1e-9, "g={g} gamma={gamma} t={t}: {closed} vs {ode}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_points_match(
        n in 1usize..=3,
        mask in 0u32..16,
        p in 0.0f64..=1.0,
        which in 0usize..5,
    ) {
        // up to four fixed candidate edges, chosen by `mask`
        let candidates: [&[usize]; 4] = [&[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
        let edges: Vec<&[usize]> = candidates
            .iter()
            .enumerate()
            .filter(|(k, e)| mask >> k & 1 == 1 && e.iter().all(|&v| v < n))
            .map(|(_, e)| *e)
            .collect();
        let h = Hypergraph::new(n, edges.iter().map(|e| e.to_vec())).unwrap();
        let model = match which {
            0 => ChannelModel::DitFlip { p },
            1 => ChannelModel::PhaseFlip { p },
            2 => ChannelModel::DitPhaseFlip { p },
            3 => ChannelModel::Depolarizing { p },
            _ => ChannelModel::NmDepolarizing { p, alpha: 1.0 - p / 2.0 },
        };
        let psi = gate_state(n, &edges);
        let evolved = evolve(&outer(&psi), &kraus_from_definition(&model, h.dim()));
        prop_assert!((analytic_fidelity(&model, &h).unwrap() - expectation(&psi, &evolved).re).abs() < 1e-10);
        prop_assert!((analytic_coherence(&model, &h).unwrap() - l1(&evolved)).abs() < 1e-10);
    }
}
