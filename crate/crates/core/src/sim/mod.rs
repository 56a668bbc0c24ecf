//! Exact statevector simulation with dense and sparse backends.
//!
//! The sparse backend stores only nonzero amplitudes and handles permutation and phase
//! gates in place, which keeps the Bennett-style evolution circuits cheap: their ancilla
//! registers are deterministic functions of the first register, so the support never
//! grows beyond `2^n` however many registers the circuit has.

mod measure;
mod noise;
mod state;

pub use measure::{marginal_distribution, sample, total_variation, MeasurementHistogram};
pub use noise::{run_noisy, run_noisy_with, NoiseConfig};
pub use state::{Pauli, StateVector};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Default cap on dense amplitudes (2^24 complex doubles, 256 MiB).
pub const DEFAULT_AMPLITUDE_BUDGET: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Starts sparse, switches to dense once the support fills a quarter of the space.
    #[default]
    Auto,
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    pub backend: Backend,
    pub amplitude_budget: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Self { backend: Backend::Auto, amplitude_budget: DEFAULT_AMPLITUDE_BUDGET }
    }
}

impl Simulator {
    pub fn new(backend: Backend) -> Self {
        Self { backend, ..Self::default() }
    }

    pub fn run(&self, circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
        let mut state = initial.clone();
        self.run_in_place(circuit, &mut state)?;
        Ok(state)
    }

    pub fn run_in_place(&self, circuit: &Circuit, state: &mut StateVector) -> Result<()> {
        self.prepare(circuit, state)?;
        for gate in circuit.gates() {
            self.step(gate, state)?;
        }
        Ok(())
    }

    pub(crate) fn prepare(&self, circuit: &Circuit, state: &mut StateVector) -> Result<()> {
        if circuit.num_qubits() != state.num_qubits() {
            return Err(Error::QubitCountMismatch { circuit: circuit.num_qubits(), state: state.num_qubits() });
        }
        if self.backend == Backend::Dense {
            state.densify(self.amplitude_budget)?;
        }
        Ok(())
    }

    pub(crate) fn step(&self, gate: &Gate, state: &mut StateVector) -> Result<()> {
        state.apply_gate(gate)?;
        if self.backend == Backend::Auto && !state.is_dense() && matches!(gate, Gate::H(_)) {
            let q = state.num_qubits();
            if q < usize::BITS as usize - 2
                && (1usize << q) <= self.amplitude_budget
                && state.stored_len() * 4 > (1usize << q)
            {
                state.densify(self.amplitude_budget)?;
            }
        }
        Ok(())
    }
}

/// Runs `circuit` on `initial` with the default automatic backend.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    Simulator::default().run(circuit, initial)
}

/// Derives an independent 64-bit seed for `stream` from `master` (SplitMix64 finalizer).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
