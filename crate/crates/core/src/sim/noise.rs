use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::measure::sample_with;
use super::{derive_seed, MeasurementHistogram, Pauli, Simulator, StateVector};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Per-gate Pauli error rates, applied independently to every qubit a gate touches.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn new(p_x: f64, p_y: f64, p_z: f64, seed: u64) -> Result<Self> {
        let cfg = Self { p_x, p_y, p_z, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Total error probability `p` split evenly over X, Y and Z.
    pub fn depolarizing(p: f64, seed: u64) -> Result<Self> {
        Self::new(p / 3.0, p / 3.0, p / 3.0, seed)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_x", self.p_x), ("p_y", self.p_y), ("p_z", self.p_z)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidNoise(format!("{name} = {p} outside [0, 1]")));
            }
        }
        if self.p_x + self.p_y + self.p_z > 1.0 + 1e-12 {
            return Err(Error::InvalidNoise("p_x + p_y + p_z exceeds 1".into()));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_x == 0.0 && self.p_y == 0.0 && self.p_z == 0.0
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> Option<Pauli> {
        let u: f64 = rng.gen();
        if u < self.p_x {
            Some(Pauli::X)
        } else if u < self.p_x + self.p_y {
            Some(Pauli::Y)
        } else if u < self.p_x + self.p_y + self.p_z {
            Some(Pauli::Z)
        } else {
            None
        }
    }
}

fn trajectory(
    sim: &Simulator,
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseConfig,
    index: u64,
    measured: &[usize],
    shots: u64,
) -> Result<MeasurementHistogram> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(noise.seed, index));
    let mut state = initial.clone();
    sim.prepare(circuit, &mut state)?;
    for gate in circuit.gates() {
        sim.step(gate, &mut state)?;
        for q in gate.qubits() {
            if let Some(p) = noise.draw(&mut rng) {
                state.apply_pauli(p, q);
            }
        }
    }
    Ok(sample_with(&state, measured, shots, &mut rng))
}

/// Monte Carlo Pauli-noise trajectories with the default simulator, run in parallel.
pub fn run_noisy(
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseConfig,
    trajectories: u64,
    measured: &[usize],
    shots_per_trajectory: u64,
) -> Result<MeasurementHistogram> {
    run_noisy_with(&Simulator::default(), circuit, initial, noise, trajectories, measured, shots_per_trajectory, true)
}

/// Trajectory `i` draws from its own stream derived from `(noise.seed, i)`, so the merged
/// histogram is identical whether trajectories run serially or in parallel.
#[allow(clippy::too_many_arguments)]
pub fn run_noisy_with(
    sim: &Simulator,
    circuit: &Circuit,
    initial: &StateVector,
    noise: &NoiseConfig,
    trajectories: u64,
    measured: &[usize],
    shots_per_trajectory: u64,
    parallel: bool,
) -> Result<MeasurementHistogram> {
    noise.validate()?;
    let one = |i: u64| trajectory(sim, circuit, initial, noise, i, measured, shots_per_trajectory);
    let parts: Vec<MeasurementHistogram> = if parallel {
        (0..trajectories).into_par_iter().map(one).collect::<Result<_>>()?
    } else {
        (0..trajectories).map(one).collect::<Result<_>>()?
    };
    let mut merged = MeasurementHistogram::new();
    for h in &parts {
        merged.merge(h);
    }
    Ok(merged)
}
