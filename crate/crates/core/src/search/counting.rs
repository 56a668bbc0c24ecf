//! Quantum counting of the marked basin mass.
//!
//! Phase estimation on the Grover iterate `G = (2|s><s| - I) O`, where `O` flips the sign
//! of every state draining into the known attractors. `G` rotates by `2 theta` with
//! `sin^2 theta = M / N`; reading `y` from `t` counting qubits gives
//! `M ~ N sin^2(pi y / 2^t)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::effective::{marked_predicate, uniform};
use super::oracle::build_basin_phase_oracle;
use crate::bnet::NetworkSpec;
use crate::circuit::{phase_shifter_on, qft, Circuit, Gate};
use crate::dynamics::TransitionTable;
use crate::error::{Error, Result};
use crate::sim::{marginal_distribution, Backend, Simulator, StateVector};
use crate::synthesis::RegisterLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountingBackend {
    /// Full phase-estimation circuit on the sparse simulator.
    #[default]
    Circuit,
    /// Same algebra on the `2^t x 2^n` amplitude array.
    Effective,
}

/// Estimate `round(N sin^2(pi y / 2^t))` for counting-register readout `y`.
pub fn estimate_from_readout(y: usize, precision: usize, total: usize) -> usize {
    let angle = PI * y as f64 / (1u64 << precision) as f64;
    (total as f64 * angle.sin().powi(2)).round() as usize
}

/// Grover iterate with sign-flip oracle and the `-1` that turns `I - 2|s><s|` into
/// `2|s><s| - I`, every phase gate controlled on `control`.
pub fn controlled_grover_iterate(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    steps: usize,
    control: usize,
) -> Result<Circuit> {
    let layout = RegisterLayout::new(steps, spec.n());
    let reg0 = layout.register(0);
    let mut g = build_basin_phase_oracle(spec, table, known_attractor_states, steps, PI)?;
    g.h_layer(reg0.iter().copied())?;
    g.append(&phase_shifter_on(layout.num_qubits(), &reg0, 0, PI)?)?;
    g.h_layer(reg0.iter().copied())?;
    let mut controlled = g.with_phase_control(control)?;
    controlled.push(Gate::mcphase(vec![], control, PI))?;
    Ok(controlled)
}

/// Complete phase-estimation circuit; counting qubits follow the evolution registers.
pub fn build_counting_circuit(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    steps: usize,
    precision: usize,
) -> Result<Circuit> {
    let layout = RegisterLayout::new(steps, spec.n());
    let base = layout.num_qubits();
    let width = base + precision;
    if width > 64 {
        return Err(Error::CapacityExceeded { what: "counting circuit qubits", requested: width });
    }
    let counting: Vec<usize> = (base..width).collect();
    let mut c = Circuit::new(width);
    c.h_layer(layout.register(0))?;
    c.h_layer(counting.iter().copied())?;
    for (k, &q) in counting.iter().enumerate() {
        let g = controlled_grover_iterate(spec, table, known_attractor_states, steps, q)?.widened(width);
        for _ in 0..(1u64 << k) {
            c.append(&g)?;
        }
    }
    c.append(&qft(width, &counting)?.inverse())?;
    Ok(c)
}

/// Readout distribution of a counting run, built once and sampled per seed.
#[derive(Debug, Clone)]
pub struct QuantumCounter {
    precision: usize,
    total: usize,
    /// `probabilities[y]` for readout `y`.
    probabilities: Vec<f64>,
}

impl QuantumCounter {
    pub fn new(
        spec: &NetworkSpec,
        table: &TransitionTable,
        known_attractor_states: &[usize],
        steps: usize,
        precision: usize,
        backend: CountingBackend,
    ) -> Result<Self> {
        if precision == 0 || precision > 20 {
            return Err(Error::InvalidConfig(format!("counting precision {precision} outside 1..=20")));
        }
        let probabilities = match backend {
            CountingBackend::Circuit => {
                Self::circuit_distribution(spec, table, known_attractor_states, steps, precision)?
            }
            CountingBackend::Effective => Self::effective_distribution(table, known_attractor_states, steps, precision),
        };
        Ok(Self { precision, total: table.len(), probabilities })
    }

    fn circuit_distribution(
        spec: &NetworkSpec,
        table: &TransitionTable,
        known: &[usize],
        steps: usize,
        precision: usize,
    ) -> Result<Vec<f64>> {
        let circuit = build_counting_circuit(spec, table, known, steps, precision)?;
        let base = RegisterLayout::new(steps, spec.n()).num_qubits();
        let counting: Vec<usize> = (base..base + precision).collect();
        let state = Simulator::new(Backend::Sparse).run(&circuit, &StateVector::zero(circuit.num_qubits()))?;
        let mut probs = vec![0.0; 1 << precision];
        for (bits, p) in marginal_distribution(&state, &counting) {
            let y = bits.chars().enumerate().fold(0usize, |acc, (k, c)| acc | (((c == '1') as usize) << k));
            probs[y] += p;
        }
        Ok(probs)
    }

    fn effective_distribution(table: &TransitionTable, known: &[usize], steps: usize, precision: usize) -> Vec<f64> {
        let marked = marked_predicate(table, known, steps);
        let len = table.len();
        let slots = 1usize << precision;
        // Counting value y applies G^y to the uniform register.
        let mut powers: Vec<Vec<Complex64>> = Vec::with_capacity(slots);
        let mut v = uniform(len);
        for _ in 0..slots {
            powers.push(v.clone());
            for (a, &m) in v.iter_mut().zip(&marked) {
                if m {
                    *a = -*a;
                }
            }
            let mean = v.iter().sum::<Complex64>() / len as f64;
            for a in v.iter_mut() {
                *a = 2.0 * mean - *a;
            }
        }
        // Inverse Fourier transform over y for every register basis state.
        let norm = (slots as f64).sqrt().recip();
        let mut probs = vec![0.0; slots];
        for (k, p) in probs.iter_mut().enumerate() {
            for x in 0..len {
                let mut acc = Complex64::new(0.0, 0.0);
                for (y, pw) in powers.iter().enumerate() {
                    let angle = -2.0 * PI * ((y * k) % slots) as f64 / slots as f64;
                    acc += pw[x] * Complex64::from_polar(1.0, angle);
                }
                *p += (acc * norm * norm).norm_sqr();
            }
        }
        probs
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Probability that a single estimate lands on `m`.
    pub fn estimate_probability(&self, m: usize) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(y, _)| estimate_from_readout(*y, self.precision, self.total) == m)
            .map(|(_, p)| p)
            .sum()
    }

    /// One measured readout turned into an estimate of the marked count.
    pub fn estimate(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total: f64 = self.probabilities.iter().sum();
        let u: f64 = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut y = self.probabilities.len() - 1;
        for (i, p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                y = i;
                break;
            }
        }
        estimate_from_readout(y, self.precision, self.total)
    }
}

/// Builds and simulates the counting circuit, then measures once with `seed`.
pub fn quantum_count(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    steps: usize,
    precision: usize,
    seed: u64,
) -> Result<usize> {
    QuantumCounter::new(spec, table, known_attractor_states, steps, precision, CountingBackend::Circuit)
        .map(|c| c.estimate(seed))
}
