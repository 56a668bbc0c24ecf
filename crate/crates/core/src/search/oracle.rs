//! Circuit builders for the suppression iteration.
//!
//! All circuits act on the `(T + 1) * n` qubits of [`RegisterLayout`]; only register 0
//! carries the superposition, the others are scratch for the time evolution and return
//! to `|0...0>` after every oracle call.

use std::collections::BTreeSet;

use num_complex::Complex64;

use super::plan::SuppressionPlan;
use crate::bnet::NetworkSpec;
use crate::circuit::{phase_shifter_on, Circuit};
use crate::dynamics::TransitionTable;
use crate::error::{Error, Result};
use crate::sim::{Simulator, StateVector};
use crate::synthesis::{synthesize_evolution, RegisterLayout};

/// Fails unless `states` maps into itself under the transition map (a union of full cycles).
pub fn check_closed(table: &TransitionTable, states: &[usize]) -> Result<()> {
    let set: BTreeSet<usize> = states.iter().copied().collect();
    for &s in &set {
        if s >= table.len() {
            return Err(Error::IndexOutOfRange { index: s, limit: table.len() });
        }
        if !set.contains(&table.succ(s)) {
            return Err(Error::NotClosedUnderTransition { state: s });
        }
    }
    Ok(())
}

/// Evolve `T` steps, imprint `e^{-i phi}` on `attractor_states` in register `T`, evolve back.
///
/// On register-0 basis states this is `|x> -> e^{-i phi}|x>` when `succ^T(x)` lies in
/// `attractor_states` and the identity otherwise: the unmarked-state phase operator up to
/// the global factor `e^{i phi}`.
pub fn build_basin_phase_oracle(
    spec: &NetworkSpec,
    table: &TransitionTable,
    attractor_states: &[usize],
    steps: usize,
    phi: f64,
) -> Result<Circuit> {
    check_closed(table, attractor_states)?;
    let layout = RegisterLayout::new(steps, spec.n());
    let evolution = synthesize_evolution(spec, steps)?;
    let mut c = evolution.clone();
    let target = layout.register_state_order(steps);
    for &s in attractor_states.iter().collect::<BTreeSet<_>>() {
        c.append(&phase_shifter_on(layout.num_qubits(), &target, s, -phi)?)?;
    }
    c.append(&evolution.inverse())?;
    Ok(c)
}

/// `e^{i phi}` on `|0...0>` of an `n`-qubit register.
pub fn build_zero_phase(n: usize, phi: f64) -> Result<Circuit> {
    crate::circuit::conditional_phase_shifter(n, 0, phi)
}

fn zero_phase_on(num_qubits: usize, register: &[usize], phi: f64) -> Result<Circuit> {
    phase_shifter_on(num_qubits, register, 0, phi)
}

/// Hadamard preparation of register 0 followed by `plan.iterations` suppression iterations.
pub fn build_suppression_circuit(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    plan: &SuppressionPlan,
    steps: usize,
) -> Result<Circuit> {
    let layout = RegisterLayout::new(steps, spec.n());
    let reg0 = layout.register(0);
    let width = layout.num_qubits();
    let mut c = Circuit::new(width);
    c.h_layer(reg0.iter().copied())?;
    if plan.iterations == 0 {
        return Ok(c);
    }
    let oracle = build_basin_phase_oracle(spec, table, known_attractor_states, steps, plan.phi)?;
    let zero = zero_phase_on(width, &reg0, plan.phi)?;
    for _ in 0..plan.iterations {
        c.append(&oracle)?;
        c.h_layer(reg0.iter().copied())?;
        c.append(&zero)?;
        c.h_layer(reg0.iter().copied())?;
    }
    Ok(c)
}

/// Suppression followed by one more time evolution; register `T` is then measured.
pub fn build_search_circuit(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    plan: &SuppressionPlan,
    steps: usize,
) -> Result<Circuit> {
    let mut c = build_suppression_circuit(spec, table, known_attractor_states, plan, steps)?;
    c.append(&synthesize_evolution(spec, steps)?)?;
    Ok(c)
}

/// Register-0 amplitudes (ancillas at zero) after running the suppression circuit.
pub fn circuit_register_amplitudes(
    sim: &Simulator,
    spec: &NetworkSpec,
    table: &TransitionTable,
    known_attractor_states: &[usize],
    plan: &SuppressionPlan,
    steps: usize,
) -> Result<Vec<Complex64>> {
    let layout = RegisterLayout::new(steps, spec.n());
    let circuit = build_suppression_circuit(spec, table, known_attractor_states, plan, steps)?;
    let state = sim.run(&circuit, &StateVector::zero(layout.num_qubits()))?;
    let mut amps = vec![Complex64::new(0.0, 0.0); table.len()];
    for (idx, a) in state.entries() {
        let x = layout.extract(0, idx);
        if layout.embed(0, x) == idx {
            amps[x] = a;
        }
    }
    Ok(amps)
}
