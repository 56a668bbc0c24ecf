//! Suppression applied directly to the `2^n` register-0 amplitudes.
//!
//! The basin oracle is diagonal with predicate `succ^T(x)` in the marked set, and the
//! Hadamard / zero-phase / Hadamard sandwich is the rank-one map
//! `a -> a + (e^{i phi} - 1) mean(a)`. Phases follow the circuit exactly, so amplitudes
//! agree with the circuit backend entry by entry, not just up to a global phase.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::check_closed;
use super::plan::SuppressionPlan;
use crate::dynamics::{format_state, TransitionTable};
use crate::error::Result;
use crate::sim::MeasurementHistogram;

/// `marked[x]` is true when `succ^steps(x)` lies in `states`.
pub fn marked_predicate(table: &TransitionTable, states: &[usize], steps: usize) -> Vec<bool> {
    let set: BTreeSet<usize> = states.iter().copied().collect();
    let mut in_set = vec![false; table.len()];
    for s in set {
        in_set[s] = true;
    }
    table.power(steps).into_iter().map(|y| in_set[y]).collect()
}

pub fn uniform(len: usize) -> Vec<Complex64> {
    vec![Complex64::new((len as f64).sqrt().recip(), 0.0); len]
}

/// One suppression iteration with phase `phi` over the `marked` mask.
pub fn suppression_step(amps: &mut [Complex64], marked: &[bool], phi: f64) {
    let oracle = Complex64::from_polar(1.0, -phi);
    for (a, &m) in amps.iter_mut().zip(marked) {
        if m {
            *a *= oracle;
        }
    }
    let mean = amps.iter().sum::<Complex64>() / amps.len() as f64;
    let shift = (Complex64::from_polar(1.0, phi) - 1.0) * mean;
    for a in amps.iter_mut() {
        *a += shift;
    }
}

/// Register-0 amplitudes after Hadamard preparation and `plan.iterations` suppression steps.
pub fn apply_effective_suppression(
    table: &TransitionTable,
    known_attractor_states: &[usize],
    plan: &SuppressionPlan,
    steps: usize,
) -> Result<Vec<Complex64>> {
    check_closed(table, known_attractor_states)?;
    let mut amps = uniform(table.len());
    if plan.iterations == 0 {
        return Ok(amps);
    }
    let marked = marked_predicate(table, known_attractor_states, steps);
    for _ in 0..plan.iterations {
        suppression_step(&mut amps, &marked, plan.phi);
    }
    Ok(amps)
}

/// Distribution of register `T` after evolving `amps` forward `steps` steps.
pub fn evolved_distribution(table: &TransitionTable, amps: &[Complex64], steps: usize) -> BTreeMap<usize, f64> {
    let mut dist = BTreeMap::new();
    for (x, y) in table.power(steps).into_iter().enumerate() {
        let p = amps[x].norm_sqr();
        if p > 0.0 {
            *dist.entry(y).or_insert(0.0) += p;
        }
    }
    dist
}

/// [`evolved_distribution`] keyed by display strings.
pub fn evolved_distribution_display(
    table: &TransitionTable,
    amps: &[Complex64],
    steps: usize,
) -> BTreeMap<String, f64> {
    evolved_distribution(table, amps, steps).into_iter().map(|(y, p)| (format_state(y, table.n()), p)).collect()
}

/// Samples `shots` register-`T` outcomes: `x` with probability `|a_x|^2`, reported as `succ^T(x)`.
pub fn sample_evolved(
    table: &TransitionTable,
    amps: &[Complex64],
    steps: usize,
    shots: u64,
    seed: u64,
) -> MeasurementHistogram {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = evolved_distribution(table, amps, steps);
    let outcomes: Vec<usize> = dist.keys().copied().collect();
    let mut cdf = Vec::with_capacity(outcomes.len());
    let mut total = 0.0;
    for p in dist.values() {
        total += p;
        cdf.push(total);
    }
    let mut tallies = vec![0u64; outcomes.len()];
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * total;
        tallies[cdf.partition_point(|&c| c <= u).min(outcomes.len() - 1)] += 1;
    }
    let mut hist = MeasurementHistogram::new();
    for (y, t) in outcomes.into_iter().zip(tallies) {
        hist.record(format_state(y, table.n()), t);
    }
    hist
}
