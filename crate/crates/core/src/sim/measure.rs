use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::StateVector;

/// Shot counts keyed by outcome bit string.
///
/// Character `k` of a key is the measured value of the `k`-th requested qubit, so
/// measuring a register in gene order gives the usual state display string.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MeasurementHistogram {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl MeasurementHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, outcome: String, count: u64) {
        if count > 0 {
            *self.counts.entry(outcome).or_insert(0) += count;
            self.shots += count;
        }
    }

    pub fn merge(&mut self, other: &MeasurementHistogram) {
        for (k, &v) in &other.counts {
            self.record(k.clone(), v);
        }
    }

    pub fn count(&self, outcome: &str) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: &str) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(outcome) as f64 / self.shots as f64
        }
    }

    /// Most frequent outcome; ties go to the lexicographically smallest string.
    pub fn mode(&self) -> Option<&str> {
        let mut best: Option<(&str, u64)> = None;
        for (k, &v) in &self.counts {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((k, v));
            }
        }
        best.map(|(k, _)| k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("bitstring,count\n");
        for (k, v) in &self.counts {
            s.push_str(&format!("{k},{v}\n"));
        }
        s
    }
}

fn outcome_of(index: u64, qubits: &[usize]) -> u64 {
    qubits.iter().enumerate().fold(0, |acc, (k, &q)| acc | (((index >> q) & 1) << k))
}

fn render(outcome: u64, width: usize) -> String {
    (0..width).map(|k| if (outcome >> k) & 1 == 1 { '1' } else { '0' }).collect()
}

fn marginal(state: &StateVector, qubits: &[usize]) -> BTreeMap<u64, f64> {
    let mut probs: BTreeMap<u64, f64> = BTreeMap::new();
    for (idx, amp) in state.entries() {
        *probs.entry(outcome_of(idx, qubits)).or_insert(0.0) += amp.norm_sqr();
    }
    probs
}

/// Exact outcome probabilities over `qubits`, keyed like [`MeasurementHistogram`].
pub fn marginal_distribution(state: &StateVector, qubits: &[usize]) -> BTreeMap<String, f64> {
    marginal(state, qubits).into_iter().map(|(o, p)| (render(o, qubits.len()), p)).collect()
}

/// Total-variation distance between two distributions over the same outcome space.
pub fn total_variation(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// Draws `shots` i.i.d. outcomes over `qubits` by inverse-CDF sampling.
pub fn sample(state: &StateVector, qubits: &[usize], shots: u64, seed: u64) -> MeasurementHistogram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(state, qubits, shots, &mut rng)
}

pub(crate) fn sample_with<R: Rng>(
    state: &StateVector,
    qubits: &[usize],
    shots: u64,
    rng: &mut R,
) -> MeasurementHistogram {
    let probs = marginal(state, qubits);
    let outcomes: Vec<u64> = probs.keys().copied().collect();
    let mut cdf = Vec::with_capacity(outcomes.len());
    let mut total = 0.0;
    for p in probs.values() {
        total += p;
        cdf.push(total);
    }
    let mut tallies = vec![0u64; outcomes.len()];
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * total;
        let pos = cdf.partition_point(|&c| c <= u).min(outcomes.len() - 1);
        tallies[pos] += 1;
    }
    let mut hist = MeasurementHistogram::new();
    for (o, t) in outcomes.into_iter().zip(tallies) {
        hist.record(render(o, qubits.len()), t);
    }
    hist
}
