use thiserror::Error;

use crate::bnet::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("capacity exceeded: {what} needs 2^{requested} entries")]
    CapacityExceeded { what: &'static str, requested: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("qubit {qubit} used more than once in one gate")]
    QubitCollision { qubit: usize },
    #[error("circuit acts on {circuit} qubits but the state has {state}")]
    QubitCountMismatch { circuit: usize, state: usize },
    #[error("state {state} does not lie on an attractor")]
    NotOnAttractor { state: usize },
    #[error("marked set is not closed under the transition map (state {state})")]
    NotClosedUnderTransition { state: usize },
    #[error("all {n} states are marked; nothing would survive suppression")]
    AllStatesMarked { n: usize },
    #[error("invalid noise configuration: {0}")]
    InvalidNoise(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("verification rejected {rejected} measurements, over the retry budget of {budget}")]
    NonConvergence { rejected: usize, budget: usize, log: Vec<String> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
