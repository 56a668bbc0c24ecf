//! Iterative attractor search by exact basin suppression.
//!
//! One run: count the states draining into already-known attractors (`M` of `N`), plan
//! the suppression phase and iteration count, delete those states from the uniform
//! superposition, evolve `T` steps and measure. The outcome is checked classically; its
//! cycle joins the known set and the next run starts.

mod counting;
mod driver;
mod effective;
mod oracle;
mod plan;

pub use counting::{
    build_counting_circuit, controlled_grover_iterate, estimate_from_readout, quantum_count, CountingBackend,
    QuantumCounter,
};
pub use driver::{
    run_search, run_search_on, CountingMode, DiscoveredAttractor, RunRecord, SearchBackend, SearchConfig, SearchReport,
    Verdict, ENCODING_TAG,
};
pub use effective::{
    apply_effective_suppression, evolved_distribution, evolved_distribution_display, marked_predicate, sample_evolved,
    suppression_step, uniform,
};
pub use oracle::{
    build_basin_phase_oracle, build_search_circuit, build_suppression_circuit, build_zero_phase, check_closed,
    circuit_register_amplitudes,
};
pub use plan::{plan_suppression, plan_suppression_with, PhiSign, SuppressionPlan};
