//! Gate-level circuit representation.
//!
//! Qubit `0` is the least-significant bit of a simulator basis index. Multi-controlled
//! gates are primitive; nothing here decomposes them to two-qubit gates.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1>`.
    Positive,
    /// Fires on `|0>`.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Positive }
    }

    pub fn neg(qubit: usize) -> Self {
        Self { qubit, polarity: Polarity::Negative }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
    /// `diag(1, e^{i phi})` on `target`, applied only where all controls fire.
    McPhase {
        controls: Vec<Control>,
        target: usize,
        phi: f64,
    },
}

impl Gate {
    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate::Mcx { controls, target }
    }

    pub fn mcphase(controls: Vec<Control>, target: usize, phi: f64) -> Self {
        Gate::McPhase { controls, target, phi }
    }

    pub fn target(&self) -> usize {
        match self {
            Gate::X(t) | Gate::H(t) => *t,
            Gate::Mcx { target, .. } | Gate::McPhase { target, .. } => *target,
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::X(_) | Gate::H(_) => &[],
            Gate::Mcx { controls, .. } | Gate::McPhase { controls, .. } => controls,
        }
    }

    /// Every qubit the gate touches: controls first, target last.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls().iter().map(|c| c.qubit).chain(std::iter::once(self.target()))
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::McPhase { controls, target, phi } => {
                Gate::McPhase { controls: controls.clone(), target: *target, phi: -phi }
            }
            other => other.clone(),
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let mut seen: Vec<usize> = Vec::with_capacity(self.controls().len() + 1);
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::IndexOutOfRange { index: q, limit: num_qubits });
            }
            if seen.contains(&q) {
                return Err(Error::QubitCollision { qubit: q });
            }
            seen.push(q);
        }
        Ok(())
    }

    /// Number of elementary gates once negative controls are lowered to X conjugation.
    pub fn lowered_count(&self) -> usize {
        let negatives = self.controls().iter().filter(|c| c.polarity == Polarity::Negative).count();
        1 + 2 * negatives
    }
}

fn fmt_controls(f: &mut fmt::Formatter<'_>, controls: &[Control]) -> fmt::Result {
    f.write_str("[")?;
    for (i, c) in controls.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        let sign = match c.polarity {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        };
        write!(f, "{}{}", c.qubit, sign)?;
    }
    f.write_str("]")
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::X(t) => write!(f, "x {t}"),
            Gate::H(t) => write!(f, "h {t}"),
            Gate::Mcx { controls, target } => {
                f.write_str("mcx ")?;
                fmt_controls(f, controls)?;
                write!(f, " {target}")
            }
            Gate::McPhase { controls, target, phi } => {
                f.write_str("mcphase ")?;
                fmt_controls(f, controls)?;
                write!(f, " {target} {phi:.12}")
            }
        }
    }
}

/// Ordered gate list; the first gate acts first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, gates: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends `other`, which may act on fewer qubits than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::QubitCountMismatch { circuit: other.num_qubits, state: self.num_qubits });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(self)
    }

    /// Same gates on a register of `num_qubits >= self.num_qubits()`.
    pub fn widened(mut self, num_qubits: usize) -> Self {
        assert!(num_qubits >= self.num_qubits);
        self.num_qubits = num_qubits;
        self
    }

    pub fn h_layer(&mut self, qubits: impl IntoIterator<Item = usize>) -> Result<&mut Self> {
        for q in qubits {
            self.push(Gate::H(q))?;
        }
        Ok(self)
    }

    /// Reversed gate list with every phase negated.
    pub fn inverse(&self) -> Circuit {
        Circuit { num_qubits: self.num_qubits, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Adds `control` as an extra positive control on every phase gate.
    ///
    /// This yields the controlled unitary only for circuits that reduce to the identity
    /// once their phase gates are deleted (conjugations `U P U^dagger` and products of them).
    pub fn with_phase_control(&self, control: usize) -> Result<Circuit> {
        let num_qubits = self.num_qubits.max(control + 1);
        let mut out = Circuit::new(num_qubits);
        for g in &self.gates {
            let g = match g {
                Gate::McPhase { controls, target, phi } => {
                    let mut controls = controls.clone();
                    controls.push(Control::pos(control));
                    Gate::McPhase { controls, target: *target, phi: *phi }
                }
                other => other.clone(),
            };
            out.push(g)?;
        }
        Ok(out)
    }

    /// Gate count after lowering negative controls to X conjugation.
    pub fn lowered_gate_count(&self) -> usize {
        self.gates.iter().map(Gate::lowered_count).sum()
    }

    /// Stable textual dump, one gate per line.
    pub fn dump(&self) -> String {
        let mut s = format!("qubits {}\n", self.num_qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// Phase `e^{i phi}` on basis state `j` of the register `qubits` (bit `k` of `j` is
/// `qubits[k]`), identity elsewhere.
///
/// X on every qubit whose bit of `j` is zero, one multi-controlled phase, the same X layer.
pub fn phase_shifter_on(num_qubits: usize, qubits: &[usize], j: usize, phi: f64) -> Result<Circuit> {
    let width = qubits.len();
    if width == 0 || width >= usize::BITS as usize || j >= (1usize << width) {
        return Err(Error::IndexOutOfRange { index: j, limit: 1usize.checked_shl(width as u32).unwrap_or(0) });
    }
    let mut c = Circuit::new(num_qubits);
    let zeros: Vec<usize> = (0..width).filter(|k| (j >> k) & 1 == 0).map(|k| qubits[k]).collect();
    for &q in &zeros {
        c.push(Gate::X(q))?;
    }
    let (&target, rest) = qubits.split_last().unwrap();
    c.push(Gate::mcphase(rest.iter().map(|&q| Control::pos(q)).collect(), target, phi))?;
    for &q in &zeros {
        c.push(Gate::X(q))?;
    }
    Ok(c)
}

/// `n`-qubit shifter for basis index `j` on qubits `0..n`.
pub fn conditional_phase_shifter(n: usize, j: usize, phi: f64) -> Result<Circuit> {
    let qubits: Vec<usize> = (0..n).collect();
    phase_shifter_on(n, &qubits, j, phi)
}

/// One shifter per index of `set`, ascending.
pub fn multi_phase_on_set(n: usize, set: &[usize], phi: f64) -> Result<Circuit> {
    let qubits: Vec<usize> = (0..n).collect();
    multi_phase_on(n, &qubits, set, phi)
}

/// [`multi_phase_on_set`] on an arbitrary register inside a wider circuit.
pub fn multi_phase_on(num_qubits: usize, qubits: &[usize], set: &[usize], phi: f64) -> Result<Circuit> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut c = Circuit::new(num_qubits);
    for j in sorted {
        c.append(&phase_shifter_on(num_qubits, qubits, j, phi)?)?;
    }
    Ok(c)
}

/// Quantum Fourier transform on `qubits` (qubits[0] least significant):
/// `|y> -> 2^{-t/2} sum_k e^{2 pi i y k / 2^t} |k>`.
pub fn qft(num_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    let t = qubits.len();
    let mut c = Circuit::new(num_qubits);
    for j in (0..t).rev() {
        c.push(Gate::H(qubits[j]))?;
        for m in (0..j).rev() {
            let phi = PI / (1u64 << (j - m)) as f64;
            c.push(Gate::mcphase(vec![Control::pos(qubits[m])], qubits[j], phi))?;
        }
    }
    for i in 0..t / 2 {
        let (a, b) = (qubits[i], qubits[t - 1 - i]);
        c.push(Gate::mcx(vec![Control::pos(a)], b))?;
        c.push(Gate::mcx(vec![Control::pos(b)], a))?;
        c.push(Gate::mcx(vec![Control::pos(a)], b))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        assert_eq!(c.inverse(), c);

        let mut p = Circuit::new(1);
        p.push(Gate::mcphase(vec![], 0, 0.7)).unwrap();
        assert_eq!(p.inverse().gates(), [Gate::mcphase(vec![], 0, -0.7)]);
    }

    #[test]
    fn validation() {
        let mut c = Circuit::new(2);
        assert!(matches!(c.push(Gate::X(2)), Err(Error::IndexOutOfRange { index: 2, limit: 2 })));
        assert!(matches!(c.push(Gate::mcx(vec![Control::pos(1)], 1)), Err(Error::QubitCollision { qubit: 1 })));
        assert!(c.is_empty());
    }

    #[test]
    fn shifter_gate_counts() {
        for n in 1..=4 {
            for j in 0..(1usize << n) {
                let zeros = n - j.count_ones() as usize;
                assert_eq!(conditional_phase_shifter(n, j, 1.0).unwrap().len(), 2 * zeros + 1);
            }
        }
        assert!(matches!(conditional_phase_shifter(2, 4, 1.0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn negative_controls_lower_to_x_pairs() {
        let mut c = Circuit::new(3);
        c.push(Gate::mcx(vec![Control::neg(0), Control::pos(1)], 2)).unwrap();
        c.push(Gate::H(0)).unwrap();
        assert_eq!(c.lowered_gate_count(), 4);
    }

    #[test]
    fn dump_is_stable() {
        let c = conditional_phase_shifter(2, 1, PI).unwrap();
        assert_eq!(c.dump(), "qubits 2\nx 1\nmcphase [0+] 1 3.141592653590\nx 1\n");
        let mut m = Circuit::new(3);
        m.push(Gate::mcx(vec![Control::pos(0), Control::neg(2)], 1)).unwrap();
        assert_eq!(m.dump(), "qubits 3\nmcx [0+,2-] 1\n");
    }

    #[test]
    fn phase_control_only_touches_phases() {
        let mut c = Circuit::new(2);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::mcphase(vec![], 0, 0.5)).unwrap();
        c.push(Gate::H(0)).unwrap();
        let cc = c.with_phase_control(2).unwrap();
        assert_eq!(cc.num_qubits(), 3);
        assert_eq!(cc.gates()[1], Gate::mcphase(vec![Control::pos(2)], 0, 0.5));
        assert_eq!(cc.gates()[0], Gate::H(0));
    }
}
