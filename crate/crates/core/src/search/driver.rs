use std::collections::BTreeSet;

use log::{debug, warn};
use serde::Serialize;

use super::counting::{CountingBackend, QuantumCounter};
use super::effective::{apply_effective_suppression, sample_evolved};
use super::oracle::build_search_circuit;
use super::plan::{plan_suppression_with, PhiSign, SuppressionPlan};
use crate::bnet::NetworkSpec;
use crate::dynamics::{
    attractor_through, basin_of, format_state, parse_state, transient_horizon, unfold_cycle, AttractorInfo,
    TransitionTable,
};
use crate::error::{Error, Result};
use crate::sim::{derive_seed, run_noisy_with, sample, MeasurementHistogram, NoiseConfig, Simulator, StateVector};
use crate::synthesis::RegisterLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingMode {
    /// Union of known basins from the transition table.
    ClassicalExact,
    /// Phase estimation with `precision` counting qubits.
    Quantum { precision: usize, backend: CountingBackend },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchBackend {
    /// Suppression on the `2^n` amplitudes, evolution through the transition table.
    #[default]
    Effective,
    /// Full `(T + 1) n`-qubit circuits on the statevector simulator.
    Circuit,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub shots: u64,
    pub seed: u64,
    /// Evolution steps; `None` uses the transient horizon (at least 1).
    pub steps: Option<usize>,
    pub counting: CountingMode,
    pub backend: SearchBackend,
    /// Pauli noise for the circuit backend.
    pub noise: Option<NoiseConfig>,
    pub trajectories: u64,
    /// Rejected measurements tolerated before giving up.
    pub max_retries: usize,
    pub phi_sign: PhiSign,
    pub simulator: Simulator,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            shots: 10_000,
            seed: 0,
            steps: None,
            counting: CountingMode::ClassicalExact,
            backend: SearchBackend::Effective,
            noise: None,
            trajectories: 100,
            max_retries: 10,
            phi_sign: PhiSign::Negative,
            simulator: Simulator::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::InvalidConfig("shots must be at least 1".into()));
        }
        if let CountingMode::Quantum { precision: 0, .. } = self.counting {
            return Err(Error::InvalidConfig("counting precision must be at least 1".into()));
        }
        if let Some(noise) = &self.noise {
            noise.validate()?;
            if self.backend != SearchBackend::Circuit {
                return Err(Error::InvalidConfig("noise requires the circuit backend".into()));
            }
            if self.trajectories == 0 {
                return Err(Error::InvalidConfig("noise needs at least one trajectory".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Accepted { attractor: usize },
    NotOnAttractor,
    AlreadyKnown,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub run: usize,
    pub plan: SuppressionPlan,
    pub histogram: MeasurementHistogram,
    /// Most frequent register-`T` outcome, the candidate the run reports.
    pub outcome: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscoveredAttractor {
    pub cycle: Vec<String>,
    pub basin_size: usize,
    pub max_transient: usize,
    pub run: usize,
    #[serde(skip)]
    pub info: AttractorInfo,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub genes: Vec<String>,
    /// Bit-order tag for every state string in the report.
    pub encoding: &'static str,
    pub steps: usize,
    pub transient_horizon: usize,
    pub counting: String,
    pub backend: String,
    pub quantum_runs: usize,
    pub rejected_runs: usize,
    pub attractors: Vec<DiscoveredAttractor>,
    pub runs: Vec<RunRecord>,
    pub verification_log: Vec<String>,
}

pub const ENCODING_TAG: &str = "gene-order-msb-first";

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Sets of cycle states, one per discovered attractor, sorted.
    pub fn cycle_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut v: Vec<BTreeSet<usize>> =
            self.attractors.iter().map(|a| a.info.cycle_states.iter().copied().collect()).collect();
        v.sort();
        v
    }

    /// `true` when the discovered attractors are exactly `oracle`.
    pub fn matches(&self, oracle: &[AttractorInfo]) -> bool {
        let mut expected: Vec<BTreeSet<usize>> =
            oracle.iter().map(|a| a.cycle_states.iter().copied().collect()).collect();
        expected.sort();
        expected == self.cycle_sets()
    }
}

/// Runs the attractor search: every run suppresses the basins found so far, measures,
/// and verifies the outcome classically before adding its cycle to the known set.
pub fn run_search(spec: &NetworkSpec, config: &SearchConfig) -> Result<SearchReport> {
    let table = TransitionTable::build(spec)?;
    run_search_on(spec, &table, config)
}

pub fn run_search_on(spec: &NetworkSpec, table: &TransitionTable, config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    let n = spec.n();
    let total = table.len();
    let horizon = transient_horizon(table);
    let steps = config.steps.unwrap_or(horizon.max(1));
    if steps == 0 {
        return Err(Error::InvalidConfig("evolution needs at least one step".into()));
    }
    if steps < horizon {
        warn!("T = {steps} is below the transient horizon {horizon}; suppression will be approximate");
    }

    let mut known: Vec<usize> = Vec::new();
    let mut known_set: BTreeSet<usize> = BTreeSet::new();
    let mut attractors = Vec::new();
    let mut runs = Vec::new();
    let mut log = Vec::new();
    let mut rejected = 0usize;

    loop {
        let stream = runs.len() as u64;
        let marked = match config.counting {
            CountingMode::ClassicalExact => {
                if known.is_empty() {
                    0
                } else {
                    basin_of(table, &known).len()
                }
            }
            CountingMode::Quantum { precision, backend } => {
                QuantumCounter::new(spec, table, &known, steps, precision, backend)?
                    .estimate(derive_seed(config.seed, 2 * stream + 1))
            }
        };
        if marked >= total {
            log.push(format!("all {total} states lie in known basins; search complete"));
            break;
        }
        let plan = plan_suppression_with(marked, total, config.phi_sign)?;
        let run_seed = derive_seed(config.seed, 2 * stream);
        let histogram = measure(spec, table, &known, &plan, steps, run_seed, config)?;

        let outcome = histogram.mode().expect("at least one shot").to_string();
        let candidate = parse_state(&outcome).expect("outcome is a state string");
        let run = runs.len() + 1;
        let verdict = if known_set.contains(&candidate) {
            Verdict::AlreadyKnown
        } else if unfold_cycle(table, candidate).is_err() {
            Verdict::NotOnAttractor
        } else {
            Verdict::Accepted { attractor: attractors.len() }
        };
        debug!("run {run}: M = {marked}, J = {}, outcome {outcome}", plan.iterations);

        match verdict {
            Verdict::Accepted { .. } => {
                let info = attractor_through(table, candidate)?;
                log.push(format!(
                    "run {run}: {outcome} verified on a {} attractor of length {}",
                    if info.is_static() { "static" } else { "cyclic" },
                    info.cycle_states.len()
                ));
                for &s in &info.cycle_states {
                    known.push(s);
                    known_set.insert(s);
                }
                attractors.push(DiscoveredAttractor {
                    cycle: info.cycle_states.iter().map(|&s| format_state(s, n)).collect(),
                    basin_size: info.basin_size,
                    max_transient: info.max_transient,
                    run,
                    info,
                });
            }
            Verdict::NotOnAttractor | Verdict::AlreadyKnown => {
                rejected += 1;
                let why = if verdict == Verdict::AlreadyKnown { "already known" } else { "not on an attractor" };
                log.push(format!("run {run}: {outcome} rejected ({why})"));
            }
        }
        runs.push(RunRecord { run, plan, histogram, outcome, verdict });
        if rejected > config.max_retries {
            return Err(Error::NonConvergence { rejected, budget: config.max_retries, log });
        }
    }

    Ok(SearchReport {
        genes: spec.genes().to_vec(),
        encoding: ENCODING_TAG,
        steps,
        transient_horizon: horizon,
        counting: match config.counting {
            CountingMode::ClassicalExact => "classical-exact".into(),
            CountingMode::Quantum { precision, .. } => format!("quantum(t={precision})"),
        },
        backend: match config.backend {
            SearchBackend::Effective => "effective".into(),
            SearchBackend::Circuit => "circuit".into(),
        },
        quantum_runs: runs.len(),
        rejected_runs: rejected,
        attractors,
        runs,
        verification_log: log,
    })
}

fn measure(
    spec: &NetworkSpec,
    table: &TransitionTable,
    known: &[usize],
    plan: &SuppressionPlan,
    steps: usize,
    seed: u64,
    config: &SearchConfig,
) -> Result<MeasurementHistogram> {
    match config.backend {
        SearchBackend::Effective => {
            let amps = apply_effective_suppression(table, known, plan, steps)?;
            Ok(sample_evolved(table, &amps, steps, config.shots, seed))
        }
        SearchBackend::Circuit => {
            let layout = RegisterLayout::new(steps, spec.n());
            let circuit = build_search_circuit(spec, table, known, plan, steps)?;
            let measured = layout.register(steps);
            let initial = StateVector::zero(layout.num_qubits());
            match &config.noise {
                Some(noise) if !noise.is_noiseless() => {
                    let noise = NoiseConfig { seed, ..*noise };
                    let per = config.shots.div_ceil(config.trajectories);
                    run_noisy_with(
                        &config.simulator,
                        &circuit,
                        &initial,
                        &noise,
                        config.trajectories,
                        &measured,
                        per,
                        true,
                    )
                }
                _ => {
                    let state = config.simulator.run(&circuit, &initial)?;
                    Ok(sample(&state, &measured, config.shots, seed))
                }
            }
        }
    }
}
