//! Attractor search for synchronous Boolean networks on a simulated quantum register.
//!
//! Each search run prepares a uniform superposition, deletes the basins of every attractor
//! already found with an exact Grover-style suppression, evolves the survivors forward in
//! time and measures. A new attractor turns up on every run, and an exhaustive classical
//! analysis of the transition table checks every result.

pub mod bnet;
pub mod circuit;
pub mod dynamics;
pub mod error;
pub mod random;
pub mod search;
pub mod sim;
pub mod synthesis;

pub use bnet::{parse_network, BoolExpr, NetworkSpec, ParseError};
pub use circuit::{Circuit, Control, Gate, Polarity};
pub use dynamics::{AttractorInfo, TransitionTable};
pub use error::{Error, Result};
pub use sim::{MeasurementHistogram, NoiseConfig, StateVector};
