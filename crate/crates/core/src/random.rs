//! Random network generation for sweeps and property tests.

use rand::Rng;

use crate::bnet::{BoolExpr, NetworkSpec};

/// Random expression over genes `0..n` with depth at most `max_depth`.
pub fn random_expr<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> BoolExpr {
    if max_depth <= 1 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.08) { BoolExpr::Const(rng.gen()) } else { BoolExpr::Var(rng.gen_range(0..n)) };
    }
    match rng.gen_range(0..3) {
        0 => BoolExpr::negate(random_expr(rng, n, max_depth - 1)),
        1 => BoolExpr::and(random_expr(rng, n, max_depth - 1), random_expr(rng, n, max_depth - 1)),
        _ => BoolExpr::or(random_expr(rng, n, max_depth - 1), random_expr(rng, n, max_depth - 1)),
    }
}

/// Random `n`-gene network with genes named `g0 .. g{n-1}`.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> NetworkSpec {
    let genes = (0..n).map(|i| format!("g{i}")).collect();
    let rules = (0..n).map(|_| random_expr(rng, n, max_depth)).collect();
    NetworkSpec::new(genes, rules).expect("generated names are valid")
}

/// `n` genes that each keep their value: every state is its own attractor.
pub fn identity_network(n: usize) -> NetworkSpec {
    let genes = (0..n).map(|i| format!("g{i}")).collect();
    let rules = (0..n).map(BoolExpr::Var).collect();
    NetworkSpec::new(genes, rules).expect("generated names are valid")
}
