use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::circuit::{Control, Gate, Polarity};
use crate::error::{Error, Result};

pub(crate) const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const PRUNE: f64 = 1e-30;

/// Which Pauli operator to apply in a noise trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Dense(Vec<Complex64>),
    /// Parallel key/amplitude arrays; keys are unique, amplitudes nonzero.
    Sparse {
        keys: Vec<u64>,
        amps: Vec<Complex64>,
    },
}

/// Amplitudes of a `num_qubits` register; qubit 0 is the least-significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    repr: Repr,
}

fn control_mask(controls: &[Control]) -> (u64, u64) {
    controls.iter().fold((0, 0), |(mask, val), c| {
        let bit = 1u64 << c.qubit;
        match c.polarity {
            Polarity::Positive => (mask | bit, val | bit),
            Polarity::Negative => (mask | bit, val),
        }
    })
}

impl StateVector {
    /// Sparse basis state `|index>`.
    pub fn basis(num_qubits: usize, index: u64) -> Self {
        assert!(num_qubits <= 64, "at most 64 qubits");
        assert!(num_qubits == 64 || index < (1u64 << num_qubits), "basis index out of range");
        Self { num_qubits, repr: Repr::Sparse { keys: vec![index], amps: vec![Complex64::new(1.0, 0.0)] } }
    }

    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    /// Dense state from an explicit amplitude array of length `2^num_qubits`.
    pub fn from_dense(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1usize << num_qubits);
        Self { num_qubits, repr: Repr::Dense(amps) }
    }

    /// Sparse state from `(index, amplitude)` pairs; zero amplitudes are dropped.
    pub fn from_sparse(num_qubits: usize, entries: impl IntoIterator<Item = (u64, Complex64)>) -> Self {
        let mut map: FxHashMap<u64, Complex64> = FxHashMap::default();
        for (k, a) in entries {
            *map.entry(k).or_insert(C0) += a;
        }
        let mut pairs: Vec<(u64, Complex64)> = map.into_iter().filter(|(_, a)| a.norm_sqr() > 0.0).collect();
        pairs.sort_by_key(|p| p.0);
        let (keys, amps) = pairs.into_iter().unzip();
        Self { num_qubits, repr: Repr::Sparse { keys, amps } }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    /// Number of stored amplitudes (all of them for the dense backend).
    pub fn stored_len(&self) -> usize {
        match &self.repr {
            Repr::Dense(v) => v.len(),
            Repr::Sparse { keys, .. } => keys.len(),
        }
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        match &self.repr {
            Repr::Dense(v) => v.get(index as usize).copied().unwrap_or(C0),
            Repr::Sparse { keys, amps } => keys.iter().position(|&k| k == index).map_or(C0, |p| amps[p]),
        }
    }

    /// Nonzero `(index, amplitude)` pairs in ascending index order.
    pub fn entries(&self) -> Vec<(u64, Complex64)> {
        match &self.repr {
            Repr::Dense(v) => {
                v.iter().enumerate().filter(|(_, a)| a.norm_sqr() > 0.0).map(|(i, a)| (i as u64, *a)).collect()
            }
            Repr::Sparse { keys, amps } => {
                let mut pairs: Vec<(u64, Complex64)> = keys.iter().copied().zip(amps.iter().copied()).collect();
                pairs.sort_by_key(|p| p.0);
                pairs
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match &self.repr {
            Repr::Dense(v) => v.iter().map(|a| a.norm_sqr()).sum(),
            Repr::Sparse { amps, .. } => amps.iter().map(|a| a.norm_sqr()).sum(),
        }
    }

    /// Full amplitude array. Panics beyond 30 qubits.
    pub fn to_dense_vec(&self) -> Vec<Complex64> {
        assert!(self.num_qubits <= 30, "dense export limited to 30 qubits");
        match &self.repr {
            Repr::Dense(v) => v.clone(),
            Repr::Sparse { keys, amps } => {
                let mut v = vec![C0; 1 << self.num_qubits];
                for (&k, &a) in keys.iter().zip(amps) {
                    v[k as usize] = a;
                }
                v
            }
        }
    }

    /// Converts to the dense backend when `2^num_qubits <= budget`.
    pub fn densify(&mut self, budget: usize) -> Result<()> {
        if self.is_dense() {
            return Ok(());
        }
        if self.num_qubits >= usize::BITS as usize - 1 || (1usize << self.num_qubits) > budget {
            return Err(Error::CapacityExceeded { what: "dense state vector", requested: self.num_qubits });
        }
        self.repr = Repr::Dense(self.to_dense_vec());
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.num_qubits {
                return Err(Error::IndexOutOfRange { index: q, limit: self.num_qubits });
            }
        }
        match gate {
            Gate::X(t) => self.apply_mcx(0, 0, *t),
            Gate::Mcx { controls, target } => {
                let (mask, val) = control_mask(controls);
                self.apply_mcx(mask, val, *target)
            }
            Gate::H(t) => self.apply_h(*t),
            Gate::McPhase { controls, target, phi } => {
                let (mask, val) = control_mask(controls);
                let tbit = 1u64 << target;
                self.apply_phase(mask | tbit, val | tbit, Complex64::from_polar(1.0, *phi));
            }
        }
        Ok(())
    }

    fn apply_mcx(&mut self, mask: u64, val: u64, target: usize) {
        let tbit = 1u64 << target;
        match &mut self.repr {
            Repr::Dense(v) => {
                for i in 0..v.len() as u64 {
                    if i & tbit == 0 && i & mask == val {
                        v.swap(i as usize, (i | tbit) as usize);
                    }
                }
            }
            Repr::Sparse { keys, .. } => {
                for k in keys.iter_mut() {
                    if *k & mask == val {
                        *k ^= tbit;
                    }
                }
            }
        }
    }

    /// Multiplies amplitudes with `index & mask == val` by `factor`.
    fn apply_phase(&mut self, mask: u64, val: u64, factor: Complex64) {
        match &mut self.repr {
            Repr::Dense(v) => {
                for (i, a) in v.iter_mut().enumerate() {
                    if i as u64 & mask == val {
                        *a *= factor;
                    }
                }
            }
            Repr::Sparse { keys, amps } => {
                for (k, a) in keys.iter().zip(amps.iter_mut()) {
                    if k & mask == val {
                        *a *= factor;
                    }
                }
            }
        }
    }

    fn apply_h(&mut self, target: usize) {
        let tbit = 1u64 << target;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match &mut self.repr {
            Repr::Dense(v) => {
                for i in 0..v.len() {
                    if i as u64 & tbit == 0 {
                        let j = i | tbit as usize;
                        let (a0, a1) = (v[i], v[j]);
                        v[i] = (a0 + a1) * s;
                        v[j] = (a0 - a1) * s;
                    }
                }
            }
            Repr::Sparse { keys, amps } => {
                let index: FxHashMap<u64, usize> = keys.iter().enumerate().map(|(p, &k)| (k, p)).collect();
                let mut new_keys = Vec::with_capacity(keys.len() * 2);
                let mut new_amps = Vec::with_capacity(keys.len() * 2);
                for &k in keys.iter() {
                    let k0 = k & !tbit;
                    if k & tbit != 0 && index.contains_key(&k0) {
                        // The pair is handled from its |0> member.
                        continue;
                    }
                    let a0 = index.get(&k0).map_or(C0, |&p| amps[p]);
                    let a1 = index.get(&(k0 | tbit)).map_or(C0, |&p| amps[p]);
                    let n0 = (a0 + a1) * s;
                    let n1 = (a0 - a1) * s;
                    if n0.norm_sqr() > PRUNE {
                        new_keys.push(k0);
                        new_amps.push(n0);
                    }
                    if n1.norm_sqr() > PRUNE {
                        new_keys.push(k0 | tbit);
                        new_amps.push(n1);
                    }
                }
                *keys = new_keys;
                *amps = new_amps;
            }
        }
    }

    pub fn apply_pauli(&mut self, pauli: Pauli, qubit: usize) {
        let bit = 1u64 << qubit;
        match pauli {
            Pauli::X => self.apply_mcx(0, 0, qubit),
            Pauli::Z => self.apply_phase(bit, bit, Complex64::new(-1.0, 0.0)),
            Pauli::Y => {
                // Y = i X Z
                self.apply_phase(bit, bit, Complex64::new(-1.0, 0.0));
                self.apply_mcx(0, 0, qubit);
                self.apply_phase(0, 0, Complex64::new(0.0, 1.0));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        for dense in [false, true] {
            let mut s = StateVector::zero(1);
            if dense {
                s.densify(1 << 10).unwrap();
            }
            s.apply_gate(&Gate::H(0)).unwrap();
            let h = std::f64::consts::FRAC_1_SQRT_2;
            assert!(close(s.amplitude(0), Complex64::new(h, 0.0)));
            assert!(close(s.amplitude(1), Complex64::new(h, 0.0)));
            s.apply_gate(&Gate::H(0)).unwrap();
            assert!(close(s.amplitude(0), Complex64::new(1.0, 0.0)));
            assert_eq!(s.entries().len(), 1);
        }
    }

    #[test]
    fn controlled_z_on_11() {
        for dense in [false, true] {
            let mut s = StateVector::basis(2, 0b11);
            if dense {
                s.densify(16).unwrap();
            }
            s.apply_gate(&Gate::mcphase(vec![Control::pos(0)], 1, std::f64::consts::PI)).unwrap();
            assert!(close(s.amplitude(3), Complex64::new(-1.0, 0.0)));
        }
    }

    #[test]
    fn negative_controls_fire_on_zero() {
        let mut s = StateVector::basis(3, 0b000);
        s.apply_gate(&Gate::mcx(vec![Control::neg(0), Control::neg(1)], 2)).unwrap();
        assert_eq!(s.entries()[0].0, 0b100);
        s.apply_gate(&Gate::mcx(vec![Control::pos(0)], 1)).unwrap();
        assert_eq!(s.entries()[0].0, 0b100);
    }

    #[test]
    fn pauli_y_action() {
        let mut s = StateVector::zero(1);
        s.apply_pauli(Pauli::Y, 0);
        assert!(close(s.amplitude(1), Complex64::new(0.0, 1.0)));
        let mut s = StateVector::basis(1, 1);
        s.apply_pauli(Pauli::Y, 0);
        assert!(close(s.amplitude(0), Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn out_of_range_gate() {
        let mut s = StateVector::zero(2);
        assert!(matches!(s.apply_gate(&Gate::H(2)), Err(Error::IndexOutOfRange { index: 2, limit: 2 })));
    }

    #[test]
    fn densify_respects_budget() {
        let mut s = StateVector::zero(10);
        assert!(matches!(s.densify(512), Err(Error::CapacityExceeded { .. })));
        s.densify(1024).unwrap();
        assert!(s.is_dense());
    }
}
