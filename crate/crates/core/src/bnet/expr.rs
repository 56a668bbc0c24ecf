use std::fmt;

/// Boolean update expression over gene indices.
///
/// Variables hold the index of the gene in the enclosing [`NetworkSpec`](super::NetworkSpec),
/// so evaluation never needs a name lookup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Var(usize),
    Const(bool),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn negate(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(l), Box::new(r))
    }

    /// Evaluates the expression, reading variable `i` through `value`.
    pub fn eval_with<F: Fn(usize) -> bool + Copy>(&self, value: F) -> bool {
        match self {
            BoolExpr::Var(i) => value(*i),
            BoolExpr::Const(b) => *b,
            BoolExpr::Not(e) => !e.eval_with(value),
            BoolExpr::And(l, r) => l.eval_with(value) && r.eval_with(value),
            BoolExpr::Or(l, r) => l.eval_with(value) || r.eval_with(value),
        }
    }

    /// Sorted, deduplicated list of the variables the expression reads.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            BoolExpr::Var(i) => out.push(*i),
            BoolExpr::Const(_) => {}
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::And(l, r) | BoolExpr::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BoolExpr::Var(_) | BoolExpr::Const(_) => 1,
            BoolExpr::Not(e) => 1 + e.depth(),
            BoolExpr::And(l, r) | BoolExpr::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Renders the expression with gene names, every binary node parenthesized.
    pub fn display<'a>(&'a self, genes: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, genes }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a BoolExpr,
    genes: &'a [String],
}

impl<'a> ExprDisplay<'a> {
    fn child(&self, expr: &'a BoolExpr) -> ExprDisplay<'a> {
        ExprDisplay { expr, genes: self.genes }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            BoolExpr::Var(i) => match self.genes.get(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "x{i}"),
            },
            BoolExpr::Const(b) => f.write_str(if *b { "1" } else { "0" }),
            BoolExpr::Not(e) => write!(f, "!{}", self.child(e)),
            BoolExpr::And(l, r) => write!(f, "({} & {})", self.child(l), self.child(r)),
            BoolExpr::Or(l, r) => write!(f, "({} | {})", self.child(l), self.child(r)),
        }
    }
}
