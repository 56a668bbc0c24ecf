use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign convention for the suppression phase.
///
/// Both signs delete the marked amplitudes exactly: they are complex conjugates of each
/// other, and every operator in the iteration is diagonal or real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiSign {
    /// `phi = -2 asin(sin(pi / (4J + 2)) / cos(beta))`
    #[default]
    Negative,
    /// `phi = +2 asin(sin(pi / (4J + 2)) / cos(beta))`
    Positive,
}

/// Parameters of one exact suppression pass over `marked` of `total` basis states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuppressionPlan {
    pub marked: usize,
    pub total: usize,
    /// `asin(sqrt(marked / total))`
    pub beta: f64,
    /// Number of suppression iterations.
    pub iterations: usize,
    pub phi: f64,
}

impl SuppressionPlan {
    pub fn is_noop(&self) -> bool {
        self.iterations == 0
    }

    pub fn marked_fraction(&self) -> f64 {
        self.marked as f64 / self.total as f64
    }
}

// Slack on the ceiling so M/N = 3/4, where beta / (pi - 2 beta) is exactly 1, stays at J = 1.
const CEIL_SLACK: f64 = 1e-9;

pub fn plan_suppression(marked: usize, total: usize) -> Result<SuppressionPlan> {
    plan_suppression_with(marked, total, PhiSign::default())
}

pub fn plan_suppression_with(marked: usize, total: usize, sign: PhiSign) -> Result<SuppressionPlan> {
    if total == 0 || !total.is_power_of_two() {
        return Err(Error::InvalidConfig(format!("state count {total} is not a power of two")));
    }
    if marked > total {
        return Err(Error::IndexOutOfRange { index: marked, limit: total });
    }
    if marked == total {
        return Err(Error::AllStatesMarked { n: total });
    }
    if marked == 0 {
        return Ok(SuppressionPlan { marked, total, beta: 0.0, iterations: 0, phi: 0.0 });
    }
    let beta = (marked as f64 / total as f64).sqrt().asin();
    let iterations = ((beta / (PI - 2.0 * beta)) - CEIL_SLACK).ceil().max(1.0) as usize;
    let ratio = (PI / (4 * iterations + 2) as f64).sin() / beta.cos();
    let magnitude = 2.0 * ratio.min(1.0).asin();
    let phi = match sign {
        PhiSign::Negative => -magnitude,
        PhiSign::Positive => magnitude,
    };
    Ok(SuppressionPlan { marked, total, beta, iterations, phi })
}
