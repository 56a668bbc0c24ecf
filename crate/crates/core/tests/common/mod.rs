#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use bnq_core::circuit::{Circuit, Control, Gate, Polarity};
use bnq_core::sim::{Backend, Simulator, StateVector};
use bnq_core::{parse_network, NetworkSpec};
use num_complex::Complex64;
use rand::Rng;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn network_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../networks").join(name)
}

pub fn load(name: &str) -> NetworkSpec {
    parse_network(&std::fs::read_to_string(network_path(name)).unwrap()).unwrap()
}

/// Unitary of `c` assembled column by column through the simulator.
pub fn simulated_matrix(c: &Circuit, backend: Backend) -> Matrix {
    let q = c.num_qubits();
    let dim = 1usize << q;
    let sim = Simulator::new(backend);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let out = sim.run(c, &StateVector::basis(q, col as u64)).unwrap();
        for (row, a) in out.to_dense_vec().into_iter().enumerate() {
            m[row][col] = a;
        }
    }
    m
}

fn fires(controls: &[Control], idx: usize) -> bool {
    controls.iter().all(|c| {
        let bit = (idx >> c.qubit) & 1 == 1;
        match c.polarity {
            Polarity::Positive => bit,
            Polarity::Negative => !bit,
        }
    })
}

/// Gate matrix written straight from the gate definitions.
pub fn gate_matrix(g: &Gate, q: usize) -> Matrix {
    let dim = 1usize << q;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut m = vec![vec![zero; dim]; dim];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for col in 0..dim {
        match g {
            Gate::X(t) => m[col ^ (1 << t)][col] = one,
            Gate::H(t) => {
                let b = (col >> t) & 1;
                m[col & !(1 << t)][col] += Complex64::new(h, 0.0);
                m[col | (1 << t)][col] += Complex64::new(if b == 1 { -h } else { h }, 0.0);
            }
            Gate::Mcx { controls, target } => {
                let row = if fires(controls, col) { col ^ (1 << target) } else { col };
                m[row][col] = one;
            }
            Gate::McPhase { controls, target, phi } => {
                let on = fires(controls, col) && (col >> target) & 1 == 1;
                m[col][col] = if on { Complex64::from_polar(1.0, *phi) } else { one };
            }
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim).map(|i| (0..dim).map(|j| Complex64::new((i == j) as u8 as f64, 0.0)).collect()).collect()
}

/// Product of explicit gate matrices, first gate rightmost.
pub fn explicit_matrix(c: &Circuit) -> Matrix {
    let q = c.num_qubits();
    let mut m = identity(1 << q);
    for g in c.gates() {
        m = matmul(&gate_matrix(g, q), &m);
    }
    m
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entry-wise difference after removing the best global phase.
pub fn max_diff_up_to_phase(a: &Matrix, b: &Matrix) -> f64 {
    let (i, j) = (0..a.len())
        .flat_map(|i| (0..a.len()).map(move |j| (i, j)))
        .max_by(|&(i, j), &(k, l)| a[i][j].norm().partial_cmp(&a[k][l].norm()).unwrap())
        .unwrap();
    let phase = if b[i][j].norm() > 0.0 { a[i][j] / b[i][j] } else { Complex64::new(1.0, 0.0) };
    let phase = phase / phase.norm();
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y * phase).norm()).fold(0.0, f64::max)
}

pub fn random_circuit<R: Rng>(rng: &mut R, q: usize, len: usize) -> Circuit {
    let mut c = Circuit::new(q);
    for _ in 0..len {
        let target = rng.gen_range(0..q);
        let mut controls = Vec::new();
        for qubit in 0..q {
            if qubit != target && rng.gen_bool(0.35) {
                controls.push(if rng.gen_bool(0.5) { Control::pos(qubit) } else { Control::neg(qubit) });
            }
        }
        let g = match rng.gen_range(0..4) {
            0 => Gate::X(target),
            1 => Gate::H(target),
            2 => Gate::mcx(controls, target),
            _ => Gate::mcphase(controls, target, rng.gen_range(-3.2..3.2)),
        };
        c.push(g).unwrap();
    }
    c
}

/// Attractors found by walking every state's orbit until a repeat: sets of cycle states.
pub fn naive_attractors(succ: impl Fn(usize) -> usize, len: usize) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for x in 0..len {
        let mut seen = Vec::new();
        let mut s = x;
        while !seen.contains(&s) {
            seen.push(s);
            s = succ(s);
        }
        let start = seen.iter().position(|&v| v == s).unwrap();
        out.insert(seen[start..].iter().copied().collect());
    }
    out
}

/// Steps until the orbit from `x` first reaches a state it will revisit.
pub fn hitting_time(succ: impl Fn(usize) -> usize, x: usize) -> usize {
    let mut seen = Vec::new();
    let mut s = x;
    while !seen.contains(&s) {
        seen.push(s);
        s = succ(s);
    }
    seen.iter().position(|&v| v == s).unwrap()
}
