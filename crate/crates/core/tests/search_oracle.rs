mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use bnq_core::dynamics::{basin_of, find_attractors, format_state, transient_horizon, AttractorInfo, TransitionTable};
use bnq_core::random::{identity_network, random_network};
use bnq_core::search::{
    apply_effective_suppression, build_basin_phase_oracle, build_search_circuit, build_zero_phase,
    circuit_register_amplitudes, evolved_distribution, evolved_distribution_display, plan_suppression,
    plan_suppression_with, quantum_count, run_search, run_search_on, CountingBackend, CountingMode, PhiSign,
    QuantumCounter, SearchBackend, SearchConfig, Verdict,
};
use bnq_core::sim::{marginal_distribution, total_variation, Backend, Simulator, StateVector};
use bnq_core::synthesis::RegisterLayout;
use bnq_core::{Error, NetworkSpec};
use common::load;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every union of attractor cycles, as (cycle states, basin size) pairs.
fn known_subsets(atts: &[AttractorInfo]) -> Vec<(Vec<usize>, usize)> {
    (0u32..1 << atts.len())
        .map(|mask| {
            let chosen: Vec<&AttractorInfo> =
                atts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a).collect();
            let states = chosen.iter().flat_map(|a| a.cycle_states.iter().copied()).collect();
            (states, chosen.iter().map(|a| a.basin_size).sum())
        })
        .collect()
}

#[test]
fn basin_oracle_phases_basis_states() {
    let net = load("giacomantonio2010.bnet");
    let table = TransitionTable::build(&net).unwrap();
    let steps = transient_horizon(&table);
    let layout = RegisterLayout::new(steps, 5);
    let small = find_attractors(&table).into_iter().find(|a| a.basin_size == 4).unwrap();
    let basin: BTreeSet<usize> = basin_of(&table, &small.cycle_states).into_iter().collect();
    let phi = -1.127885;
    let oracle = build_basin_phase_oracle(&net, &table, &small.cycle_states, steps, phi).unwrap();
    let sim = Simulator::new(Backend::Sparse);
    for x in 0..32 {
        let out = sim.run(&oracle, &StateVector::basis(layout.num_qubits(), layout.embed(0, x))).unwrap();
        let entries = out.entries();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].0, layout.embed(0, x), "ancillas restored");
        let want = if basin.contains(&x) { Complex64::from_polar(1.0, -phi) } else { Complex64::new(1.0, 0.0) };
        assert!((entries[0].1 - want).norm() <= 1e-12);
    }
}

#[test]
fn oracle_requires_closed_set() {
    let net = load("giacomantonio2010.bnet");
    let table = TransitionTable::build(&net).unwrap();
    let transient = (0..32).find(|&x| table.succ(x) != x && table.iterate(x, 2) != x).unwrap();
    let err = build_basin_phase_oracle(&net, &table, &[transient], 2, 1.0).unwrap_err();
    assert!(matches!(err, Error::NotClosedUnderTransition { .. }));
}

#[test]
fn zero_phase_touches_only_zero() {
    let c = build_zero_phase(3, 0.4).unwrap();
    let sim = Simulator::new(Backend::Dense);
    for x in 0..8u64 {
        let a = sim.run(&c, &StateVector::basis(3, x)).unwrap().amplitude(x);
        let want = if x == 0 { Complex64::from_polar(1.0, 0.4) } else { Complex64::new(1.0, 0.0) };
        assert!((a - want).norm() <= 1e-12);
    }
}

#[test]
fn giacomantonio_suppression_circuit_deletes_each_basin() {
    let net = load("giacomantonio2010.bnet");
    let table = TransitionTable::build(&net).unwrap();
    let steps = transient_horizon(&table);
    let sim = Simulator::new(Backend::Sparse);
    for att in find_attractors(&table) {
        let basin: BTreeSet<usize> = basin_of(&table, &att.cycle_states).into_iter().collect();
        for sign in [PhiSign::Negative, PhiSign::Positive] {
            let plan = plan_suppression_with(basin.len(), 32, sign).unwrap();
            let amps = circuit_register_amplitudes(&sim, &net, &table, &att.cycle_states, &plan, steps).unwrap();
            let lost: f64 = basin.iter().map(|&x| amps[x].norm_sqr()).sum();
            assert!(lost <= 1e-9, "basin {} sign {sign:?}: {lost}", basin.len());
            let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            assert!((kept - 1.0).abs() <= 1e-9, "ancillas return to zero");
        }
    }
}

#[test]
fn effective_amplitudes_match_circuit() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let sim = Simulator::new(Backend::Sparse);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3);
        let net = random_network(&mut rng, n, 4);
        let table = TransitionTable::build(&net).unwrap();
        let steps = transient_horizon(&table).max(1);
        let atts = find_attractors(&table);
        for (known, m) in known_subsets(&atts) {
            if m == table.len() {
                continue;
            }
            let plan = plan_suppression(m, table.len()).unwrap();
            let eff = apply_effective_suppression(&table, &known, &plan, steps).unwrap();
            let circ = circuit_register_amplitudes(&sim, &net, &table, &known, &plan, steps).unwrap();
            let diff = eff.iter().zip(&circ).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(diff <= 1e-10, "{diff}");
        }
    }
}

#[test]
fn search_circuit_distribution_matches_effective() {
    let sim = Simulator::new(Backend::Sparse);
    let nets: Vec<NetworkSpec> = ["identity.bnet", "toggle.bnet", "copy.bnet"].iter().map(|f| load(f)).collect();
    for net in nets {
        let table = TransitionTable::build(&net).unwrap();
        let atts = find_attractors(&table);
        for steps in 1..=2 {
            let layout = RegisterLayout::new(steps, net.n());
            for (known, m) in known_subsets(&atts) {
                if m == table.len() {
                    continue;
                }
                let plan = plan_suppression(m, table.len()).unwrap();
                let eff = apply_effective_suppression(&table, &known, &plan, steps).unwrap();
                let eff_dist = evolved_distribution_display(&table, &eff, steps);
                let circuit = build_search_circuit(&net, &table, &known, &plan, steps).unwrap();
                let state = sim.run(&circuit, &StateVector::zero(layout.num_qubits())).unwrap();
                let circ_dist = marginal_distribution(&state, &layout.register(steps));
                assert!(total_variation(&eff_dist, &circ_dist) <= 1e-9);
            }
        }
    }
}

#[test]
fn survivors_concentrate_by_basin_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let net = random_network(&mut rng, n, 4);
        let table = TransitionTable::build(&net).unwrap();
        let steps = transient_horizon(&table).max(1);
        let atts = find_attractors(&table);
        if atts.len() < 2 {
            continue;
        }
        let known = &atts[0].cycle_states;
        let m = atts[0].basin_size;
        let plan = plan_suppression(m, table.len()).unwrap();
        let amps = apply_effective_suppression(&table, known, &plan, steps).unwrap();
        let dist = evolved_distribution(&table, &amps, steps);
        for a in &atts[1..] {
            let mass: f64 = a.cycle_states.iter().map(|s| dist.get(s).copied().unwrap_or(0.0)).sum();
            let want = a.basin_size as f64 / (table.len() - m) as f64;
            assert!((mass - want).abs() <= 1e-9);
        }
        let leaked: f64 = known.iter().map(|s| dist.get(s).copied().unwrap_or(0.0)).sum();
        assert!(leaked <= 1e-9);
    }
}

#[test]
fn counting_with_nothing_marked_reads_zero() {
    let net = identity_network(2);
    let table = TransitionTable::build(&net).unwrap();
    for seed in 0..5 {
        assert_eq!(quantum_count(&net, &table, &[], 1, 4, seed).unwrap(), 0);
    }
}

#[test]
fn counting_half_marked_is_exact() {
    let net = identity_network(2);
    let table = TransitionTable::build(&net).unwrap();
    for seed in 0..5 {
        assert_eq!(quantum_count(&net, &table, &[0, 3], 1, 3, seed).unwrap(), 2);
    }
}

#[test]
fn counting_backends_agree() {
    let net = load("giacomantonio2010.bnet");
    let table = TransitionTable::build(&net).unwrap();
    let steps = transient_horizon(&table);
    let small = find_attractors(&table).into_iter().find(|a| a.basin_size == 4).unwrap();
    let circ = QuantumCounter::new(&net, &table, &small.cycle_states, steps, 5, CountingBackend::Circuit).unwrap();
    let eff = QuantumCounter::new(&net, &table, &small.cycle_states, steps, 5, CountingBackend::Effective).unwrap();
    let diff = circ.probabilities().iter().zip(eff.probabilities()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(diff <= 1e-9, "{diff}");
    assert!((circ.probabilities().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
}

#[test]
fn counting_readout_peaks_at_theta() {
    // M = 1 of N = 4: theta = pi/6, readout y/2^t near 1/6 or 5/6.
    let net = identity_network(2);
    let table = TransitionTable::build(&net).unwrap();
    let c = QuantumCounter::new(&net, &table, &[3], 1, 6, CountingBackend::Effective).unwrap();
    let (best, _) =
        c.probabilities().iter().enumerate().fold((0, 0.0), |acc, (y, &p)| if p > acc.1 { (y, p) } else { acc });
    let frac = best as f64 / 64.0;
    assert!((frac - 1.0 / 6.0).abs() < 1.0 / 64.0 || (frac - 5.0 / 6.0).abs() < 1.0 / 64.0);
    assert!((PI * frac).sin().powi(2) * 4.0 - 1.0 < 0.1);
}

#[test]
fn identity_search_finds_every_fixed_point() {
    let net = identity_network(2);
    let report = run_search(&net, &SearchConfig::default()).unwrap();
    assert_eq!(report.attractors.len(), 4);
    assert_eq!(report.quantum_runs, 4);
    assert_eq!(report.rejected_runs, 0);
}

#[test]
fn giacomantonio_search_two_runs() {
    let net = load("giacomantonio2010.bnet");
    let table = TransitionTable::build(&net).unwrap();
    for backend in [SearchBackend::Effective, SearchBackend::Circuit] {
        let config = SearchConfig { backend, ..SearchConfig::default() };
        let report = run_search_on(&net, &table, &config).unwrap();
        assert_eq!(report.quantum_runs, 2);
        assert!(report.matches(&find_attractors(&table)));
        let second = &report.runs[1];
        assert_eq!(second.histogram.count(&second.outcome), 10_000);
    }
}

#[test]
fn random_networks_found_in_optimal_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let net = random_network(&mut rng, n, 4);
        let table = TransitionTable::build(&net).unwrap();
        let atts = find_attractors(&table);
        let backend = if n <= 3 && i % 4 == 0 { SearchBackend::Circuit } else { SearchBackend::Effective };
        let sign = if i % 2 == 0 { PhiSign::Negative } else { PhiSign::Positive };
        let config = SearchConfig { seed: i, backend, phi_sign: sign, shots: 500, ..SearchConfig::default() };
        let report = run_search_on(&net, &table, &config).unwrap();
        assert!(report.matches(&atts));
        assert_eq!(report.quantum_runs, atts.len());
    }
}

#[test]
fn short_evolution_rejects_then_gives_up() {
    // Chain 0 -> 1 -> ... -> 6 -> 6 plus the fixed point 7: horizon 6, one step of evolution.
    let table = TransitionTable::from_successors(3, (0..8).map(|x| if x == 7 { 7 } else { (x + 1).min(6) }).collect());
    let net = identity_network(3);
    let config = SearchConfig { steps: Some(1), max_retries: 2, ..SearchConfig::default() };
    match run_search_on(&net, &table, &config).unwrap_err() {
        Error::NonConvergence { rejected, budget, log } => {
            assert_eq!((rejected, budget), (3, 2));
            assert!(log[0].contains(&format_state(6, 3)));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn verdicts_serialize_with_status_tag() {
    let v = serde_json::to_value(Verdict::Accepted { attractor: 1 }).unwrap();
    assert_eq!(v["status"], "accepted");
    assert_eq!(serde_json::to_value(Verdict::NotOnAttractor).unwrap()["status"], "not-on-attractor");
}

#[test]
fn quantum_counting_mode_in_driver() {
    let net = load("giacomantonio2010.bnet");
    let config = SearchConfig {
        counting: CountingMode::Quantum { precision: 8, backend: CountingBackend::Effective },
        ..SearchConfig::default()
    };
    let report = run_search(&net, &config).unwrap();
    assert_eq!(report.attractors.len(), 2);
    assert!(report.runs.iter().all(|r| !matches!(r.verdict, Verdict::NotOnAttractor)));
}

#[test]
fn noise_requires_circuit_backend() {
    let config =
        SearchConfig { noise: Some(bnq_core::NoiseConfig::depolarizing(1e-3, 0).unwrap()), ..SearchConfig::default() };
    assert!(matches!(run_search(&identity_network(1), &config), Err(Error::InvalidConfig(_))));
}
