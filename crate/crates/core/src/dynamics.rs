//! Classical synchronous semantics: transition table, attractors, basins.
//!
//! States are plain `usize` indices in `[0, 2^n)`. Gene `i` (file order) occupies bit
//! `n - 1 - i`, so the display string of a state lists genes left to right and reads as
//! the binary numeral of the index.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bnet::{BoolExpr, NetworkSpec};
use crate::error::{Error, Result};

/// Value of gene `gene` in `state` of an `n`-gene network.
#[inline]
pub fn gene_bit(state: usize, gene: usize, n: usize) -> bool {
    (state >> (n - 1 - gene)) & 1 == 1
}

/// Renders a state as its gene-order bit string, e.g. `"10101"`.
pub fn format_state(state: usize, n: usize) -> String {
    (0..n).map(|i| if gene_bit(state, i, n) { '1' } else { '0' }).collect()
}

/// Inverse of [`format_state`].
pub fn parse_state(bits: &str) -> Option<usize> {
    if bits.is_empty() || bits.len() > usize::BITS as usize {
        return None;
    }
    bits.chars().try_fold(0usize, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

pub fn eval_expr(expr: &BoolExpr, state: usize, n: usize) -> bool {
    expr.eval_with(|i| gene_bit(state, i, n))
}

/// Dense successor map over all `2^n` states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    n: usize,
    succ: Vec<u32>,
}

impl TransitionTable {
    pub fn build(spec: &NetworkSpec) -> Result<Self> {
        let n = spec.n();
        let len = 1usize
            .checked_shl(n as u32)
            .filter(|_| n <= crate::bnet::MAX_GENES)
            .ok_or(Error::CapacityExceeded { what: "transition table", requested: n })?;
        let mut succ = Vec::new();
        succ.try_reserve_exact(len).map_err(|_| Error::CapacityExceeded { what: "transition table", requested: n })?;
        for x in 0..len {
            let mut y = 0usize;
            for (i, rule) in spec.rules().iter().enumerate() {
                if eval_expr(rule, x, n) {
                    y |= 1 << (n - 1 - i);
                }
            }
            succ.push(y as u32);
        }
        Ok(Self { n, succ })
    }

    /// Builds a table directly from a successor list; `succ.len()` must be `2^n`.
    pub fn from_successors(n: usize, succ: Vec<usize>) -> Self {
        assert_eq!(succ.len(), 1 << n);
        assert!(succ.iter().all(|&s| s < succ.len()));
        Self { n, succ: succ.into_iter().map(|s| s as u32).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    #[inline]
    pub fn succ(&self, x: usize) -> usize {
        self.succ[x] as usize
    }

    /// `succ` applied `steps` times.
    pub fn iterate(&self, mut x: usize, steps: usize) -> usize {
        for _ in 0..steps {
            x = self.succ(x);
        }
        x
    }

    /// `x -> succ^steps(x)` for every state, in one pass per step.
    pub fn power(&self, steps: usize) -> Vec<usize> {
        let mut image: Vec<usize> = (0..self.len()).collect();
        for _ in 0..steps {
            for y in image.iter_mut() {
                *y = self.succ(*y);
            }
        }
        image
    }

    /// STG as `from to` lines, one per state.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for x in 0..self.len() {
            let _ = writeln!(out, "{x} {}", self.succ(x));
        }
        out
    }

    /// STG as `bits -> bits` lines using display strings.
    pub fn edge_list_display(&self) -> String {
        let mut out = String::new();
        for x in 0..self.len() {
            let _ = writeln!(out, "{} {}", format_state(x, self.n), format_state(self.succ(x), self.n));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorInfo {
    /// Cycle states in successor order, starting from the smallest index.
    pub cycle_states: Vec<usize>,
    pub basin_size: usize,
    pub max_transient: usize,
}

impl AttractorInfo {
    pub fn is_static(&self) -> bool {
        self.cycle_states.len() == 1
    }
}

/// Full classical decomposition of the state space.
#[derive(Debug, Clone)]
pub struct AttractorAnalysis {
    pub attractors: Vec<AttractorInfo>,
    /// Attractor index (into `attractors`) that each state drains into.
    pub label: Vec<usize>,
    /// Steps from each state until it first lands on its cycle.
    pub depth: Vec<usize>,
}

const UNVISITED: u8 = 0;
const IN_PROGRESS: u8 = 1;
const RESOLVED: u8 = 2;

/// Finds every attractor with iterative pointer chasing and a three-colour mark.
pub fn analyze(table: &TransitionTable) -> AttractorAnalysis {
    let len = table.len();
    let mut color = vec![UNVISITED; len];
    let mut label = vec![usize::MAX; len];
    let mut depth = vec![0usize; len];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();

    for start in 0..len {
        if color[start] != UNVISITED {
            continue;
        }
        path.clear();
        let mut x = start;
        while color[x] == UNVISITED {
            color[x] = IN_PROGRESS;
            path.push(x);
            x = table.succ(x);
        }
        // Everything before `tail_end` in `path` is transient.
        let (attractor, base_depth, tail_end) = if color[x] == IN_PROGRESS {
            let pos = path.iter().position(|&s| s == x).expect("in-progress state lies on path");
            let id = cycles.len();
            let mut cycle = path[pos..].to_vec();
            for &s in &cycle {
                label[s] = id;
                depth[s] = 0;
                color[s] = RESOLVED;
            }
            let min_pos = cycle.iter().enumerate().min_by_key(|(_, &s)| s).map(|(i, _)| i).unwrap();
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
            (id, 0, pos)
        } else {
            (label[x], depth[x], path.len())
        };
        for (k, &s) in path[..tail_end].iter().enumerate().rev() {
            label[s] = attractor;
            depth[s] = base_depth + (tail_end - k);
            color[s] = RESOLVED;
        }
    }

    let mut attractors: Vec<AttractorInfo> = cycles
        .into_iter()
        .map(|cycle_states| AttractorInfo { cycle_states, basin_size: 0, max_transient: 0 })
        .collect();
    for x in 0..len {
        let a = &mut attractors[label[x]];
        a.basin_size += 1;
        a.max_transient = a.max_transient.max(depth[x]);
    }

    // Sort by smallest cycle state and relabel.
    let mut order: Vec<usize> = (0..attractors.len()).collect();
    order.sort_by_key(|&i| attractors[i].cycle_states[0]);
    let mut rank = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    for l in label.iter_mut() {
        *l = rank[*l];
    }
    let mut sorted = vec![None; attractors.len()];
    for (old, a) in attractors.into_iter().enumerate() {
        sorted[rank[old]] = Some(a);
    }
    let attractors = sorted.into_iter().map(Option::unwrap).collect();
    AttractorAnalysis { attractors, label, depth }
}

/// All attractors, ascending by smallest cycle state.
pub fn find_attractors(table: &TransitionTable) -> Vec<AttractorInfo> {
    analyze(table).attractors
}

/// States whose orbit enters the cycle through `cycle_states`, sorted ascending.
///
/// Computed by breadth-first search over predecessors, independent of [`analyze`].
pub fn basin_of(table: &TransitionTable, cycle_states: &[usize]) -> Vec<usize> {
    let len = table.len();
    // Predecessor lists in CSR form.
    let mut offsets = vec![0usize; len + 1];
    for x in 0..len {
        offsets[table.succ(x) + 1] += 1;
    }
    for i in 0..len {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut preds = vec![0usize; len];
    for x in 0..len {
        let y = table.succ(x);
        preds[fill[y]] = x;
        fill[y] += 1;
    }

    let mut inside = vec![false; len];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in cycle_states {
        if !inside[s] {
            inside[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(y) = queue.pop_front() {
        for &x in &preds[offsets[y]..offsets[y + 1]] {
            if !inside[x] {
                inside[x] = true;
                queue.push_back(x);
            }
        }
    }
    (0..len).filter(|&x| inside[x]).collect()
}

/// Smallest `T` with `succ^T(x)` on a cycle for every state.
pub fn transient_horizon(table: &TransitionTable) -> usize {
    analyze(table).depth.into_iter().max().unwrap_or(0)
}

/// The cycle through `s`, starting at `s`.
pub fn unfold_cycle(table: &TransitionTable, s: usize) -> Result<Vec<usize>> {
    let mut cycle = vec![s];
    let mut x = table.succ(s);
    while x != s {
        if cycle.len() >= table.len() {
            return Err(Error::NotOnAttractor { state: s });
        }
        cycle.push(x);
        x = table.succ(x);
    }
    Ok(cycle)
}

/// `true` when `s` returns to itself under iteration.
pub fn is_on_attractor(table: &TransitionTable, s: usize) -> bool {
    unfold_cycle(table, s).is_ok()
}

/// Builds the [`AttractorInfo`] for the cycle through `s` from the table alone.
pub fn attractor_through(table: &TransitionTable, s: usize) -> Result<AttractorInfo> {
    let mut cycle = unfold_cycle(table, s)?;
    let min_pos = cycle.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
    cycle.rotate_left(min_pos);
    let basin = basin_of(table, &cycle);
    let mut on_cycle = vec![false; table.len()];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    let max_transient = basin
        .iter()
        .map(|&x| {
            let mut steps = 0;
            let mut y = x;
            while !on_cycle[y] {
                y = table.succ(y);
                steps += 1;
            }
            steps
        })
        .max()
        .unwrap_or(0);
    Ok(AttractorInfo { cycle_states: cycle, basin_size: basin.len(), max_transient })
}
