//! Compilation of update rules into reversible circuits.
//!
//! Each rule is rewritten in positive-polarity Reed–Muller form (XOR of AND terms over
//! unnegated variables); each term becomes one multi-controlled X into a fresh qubit.
//! `T` synchronous steps use `T + 1` registers of `n` qubits: register `r` holds the state
//! after `r` steps, gene `i` of register `r` sits on qubit `r * n + i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::bnet::{BoolExpr, NetworkSpec};
use crate::circuit::{Circuit, Control, Gate};
use crate::dynamics::gene_bit;
use crate::error::{Error, Result};

/// AND of the genes whose bits are set; the empty mask is the constant-1 term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_genes(genes: &[usize]) -> Self {
        Monomial(genes.iter().fold(0, |m, &g| m | (1 << g)))
    }

    pub fn genes(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |g| (self.0 >> g) & 1 == 1)
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn eval(self, value: impl Fn(usize) -> bool) -> bool {
        self.genes().all(value)
    }
}

/// Canonical XOR-of-AND form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pprm {
    terms: BTreeSet<Monomial>,
}

impl Pprm {
    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, value: impl Fn(usize) -> bool + Copy) -> bool {
        self.terms.iter().fold(false, |acc, m| acc ^ m.eval(value))
    }

    /// Terms ordered by degree, then by gene mask: the order gates are emitted in.
    pub fn ordered_terms(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.terms.iter().copied().collect();
        v.sort_by_key(|m| (m.degree(), m.0));
        v
    }
}

impl FromIterator<Monomial> for Pprm {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut terms = BTreeSet::new();
        for m in iter {
            // XOR semantics: a repeated term cancels.
            if !terms.insert(m) {
                terms.remove(&m);
            }
        }
        Pprm { terms }
    }
}

impl fmt::Display for Pprm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.ordered_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            if m == Monomial::ONE {
                f.write_str("1")?;
            } else {
                let names: Vec<String> = m.genes().map(|g| format!("x{g}")).collect();
                f.write_str(&names.join("&"))?;
            }
        }
        Ok(())
    }
}

/// Positive-polarity Reed–Muller expansion, via the GF(2) Möbius transform of the
/// truth table over the variables the expression reads.
pub fn pprm_expansion(expr: &BoolExpr) -> Pprm {
    let vars = expr.variables();
    let k = vars.len();
    let mut coeffs: Vec<bool> = (0..1usize << k)
        .map(|assignment| {
            expr.eval_with(|g| {
                let pos = vars.binary_search(&g).expect("variable in support");
                (assignment >> pos) & 1 == 1
            })
        })
        .collect();
    for bit in 0..k {
        let stride = 1 << bit;
        for a in 0..coeffs.len() {
            if a & stride != 0 {
                coeffs[a] ^= coeffs[a ^ stride];
            }
        }
    }
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(a, _)| {
            let genes: Vec<usize> = (0..k).filter(|&p| (a >> p) & 1 == 1).map(|p| vars[p]).collect();
            Monomial::from_genes(&genes)
        })
        .collect()
}

/// XOR-updates `target` with the rule evaluated on `input_qubits` (gene `i` on `input_qubits[i]`).
pub fn synthesize_update(expr: &BoolExpr, input_qubits: &[usize], target: usize) -> Result<Circuit> {
    if input_qubits.contains(&target) {
        return Err(Error::QubitCollision { qubit: target });
    }
    let width = input_qubits.iter().copied().chain(std::iter::once(target)).max().unwrap() + 1;
    let mut c = Circuit::new(width);
    for m in pprm_expansion(expr).ordered_terms() {
        let mut controls = Vec::with_capacity(m.degree() as usize);
        for g in m.genes() {
            let q = *input_qubits.get(g).ok_or(Error::IndexOutOfRange { index: g, limit: input_qubits.len() })?;
            controls.push(Control::pos(q));
        }
        if controls.is_empty() {
            c.push(Gate::X(target))?;
        } else {
            c.push(Gate::mcx(controls, target))?;
        }
    }
    Ok(c)
}

/// Qubit placement for `steps + 1` registers of `n` genes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub steps: usize,
    pub n: usize,
}

impl RegisterLayout {
    pub fn new(steps: usize, n: usize) -> Self {
        Self { steps, n }
    }

    pub fn num_qubits(&self) -> usize {
        (self.steps + 1) * self.n
    }

    pub fn qubit(&self, register: usize, gene: usize) -> usize {
        register * self.n + gene
    }

    /// Register qubits in gene order.
    pub fn register(&self, register: usize) -> Vec<usize> {
        (0..self.n).map(|i| self.qubit(register, i)).collect()
    }

    /// Register qubits ordered so that bit `k` of a state index sits on entry `k`.
    pub fn register_state_order(&self, register: usize) -> Vec<usize> {
        (0..self.n).map(|k| self.qubit(register, self.n - 1 - k)).collect()
    }

    /// Simulator basis bits contributed by `state` placed in `register`.
    pub fn embed(&self, register: usize, state: usize) -> u64 {
        (0..self.n).filter(|&i| gene_bit(state, i, self.n)).fold(0u64, |acc, i| acc | (1u64 << self.qubit(register, i)))
    }

    /// State held by `register` in simulator basis index `index`.
    pub fn extract(&self, register: usize, index: u64) -> usize {
        (0..self.n).fold(0usize, |acc, i| {
            let bit = (index >> self.qubit(register, i)) & 1;
            acc | ((bit as usize) << (self.n - 1 - i))
        })
    }
}

/// `|x>|0...0> -> |x>|f(x)>|f^2(x)>...|f^T(x)>` on `(T + 1) * n` qubits.
pub fn synthesize_evolution(spec: &NetworkSpec, steps: usize) -> Result<Circuit> {
    if steps == 0 {
        return Err(Error::InvalidConfig("time evolution needs at least one step".into()));
    }
    let layout = RegisterLayout::new(steps, spec.n());
    if layout.num_qubits() > 64 {
        return Err(Error::CapacityExceeded { what: "evolution circuit qubits", requested: layout.num_qubits() });
    }
    let mut c = Circuit::new(layout.num_qubits());
    for r in 1..=steps {
        let inputs = layout.register(r - 1);
        for (i, rule) in spec.rules().iter().enumerate() {
            c.append(&synthesize_update(rule, &inputs, layout.qubit(r, i))?)?;
        }
    }
    Ok(c)
}
