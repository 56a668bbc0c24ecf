//! Reader for Boolean network definitions in the BoolNet `targets, factors` text format.
//!
//! Only plain synchronous rules are accepted: gene names, `!`, `&`, `|`, the constants
//! `0`/`1` and parentheses. Temporal predicates and probabilistic extra columns are rejected.

mod expr;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use expr::{BoolExpr, ExprDisplay};
pub use lexer::{is_valid_gene_name, tokenize, Token, TokenKind};
pub use parser::{parse_expr, parse_expr_with};

/// Largest supported gene count. Dense tables of `2^24` states stay well below a gigabyte.
pub const MAX_GENES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: unexpected character {ch:?}")]
    UnexpectedCharacter { line: usize, column: usize, ch: char },
    #[error("line {line}, column {column}: syntax error, expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}, column {column}: unsupported BoolNet feature: {what}")]
    Unsupported { line: usize, column: usize, what: String },
    #[error("line {line}: undefined variable `{name}`")]
    UndefinedVariable { name: String, line: usize },
    #[error("line {line}: duplicate gene `{name}`")]
    DuplicateGene { name: String, line: usize },
    #[error("line {line}: invalid gene name `{name}`")]
    InvalidGeneName { name: String, line: usize },
    #[error("line {line}: expected `gene, expression`")]
    MissingRule { line: usize },
    #[error("network declares no genes")]
    EmptyNetwork,
    #[error("network has {count} genes; at most {max} are supported")]
    TooManyGenes { count: usize, max: usize },
}

impl ParseError {
    /// Returns the error re-anchored at `line` (1-based).
    pub fn at_line(self, line: usize) -> Self {
        use ParseError::*;
        match self {
            UnexpectedCharacter { column, ch, .. } => UnexpectedCharacter { line, column, ch },
            Syntax { column, expected, .. } => Syntax { line, column, expected },
            Unsupported { column, what, .. } => Unsupported { line, column, what },
            UndefinedVariable { name, .. } => UndefinedVariable { name, line },
            DuplicateGene { name, .. } => DuplicateGene { name, line },
            InvalidGeneName { name, .. } => InvalidGeneName { name, line },
            MissingRule { .. } => MissingRule { line },
            other => other,
        }
    }

    /// The 1-based source line, when the error is tied to one.
    pub fn line(&self) -> Option<usize> {
        use ParseError::*;
        match self {
            UnexpectedCharacter { line, .. }
            | Syntax { line, .. }
            | Unsupported { line, .. }
            | UndefinedVariable { line, .. }
            | DuplicateGene { line, .. }
            | InvalidGeneName { line, .. }
            | MissingRule { line } => Some(*line),
            EmptyNetwork | TooManyGenes { .. } => None,
        }
    }
}

/// A synchronous Boolean network: ordered genes and one update rule per gene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    genes: Vec<String>,
    rules: Vec<BoolExpr>,
}

impl NetworkSpec {
    /// Builds a network from already-resolved rules, checking every invariant the parser checks.
    pub fn new(genes: Vec<String>, rules: Vec<BoolExpr>) -> Result<Self, ParseError> {
        if genes.is_empty() {
            return Err(ParseError::EmptyNetwork);
        }
        if genes.len() > MAX_GENES {
            return Err(ParseError::TooManyGenes { count: genes.len(), max: MAX_GENES });
        }
        for (i, g) in genes.iter().enumerate() {
            if !is_valid_gene_name(g) {
                return Err(ParseError::InvalidGeneName { name: g.clone(), line: i + 1 });
            }
            if genes[..i].contains(g) {
                return Err(ParseError::DuplicateGene { name: g.clone(), line: i + 1 });
            }
        }
        assert_eq!(genes.len(), rules.len(), "one rule per gene");
        for (i, r) in rules.iter().enumerate() {
            if let Some(&v) = r.variables().iter().find(|&&v| v >= genes.len()) {
                return Err(ParseError::UndefinedVariable { name: format!("x{v}"), line: i + 1 });
            }
        }
        Ok(Self { genes, rules })
    }

    pub fn n(&self) -> usize {
        self.genes.len()
    }

    pub fn genes(&self) -> &[String] {
        &self.genes
    }

    pub fn rules(&self) -> &[BoolExpr] {
        &self.rules
    }

    pub fn num_states(&self) -> usize {
        1 << self.n()
    }
}

impl fmt::Display for NetworkSpec {
    /// Writes the network back out in BoolNet format with fully parenthesized rules.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "targets, factors")?;
        for (g, r) in self.genes.iter().zip(&self.rules) {
            writeln!(f, "{g}, {}", r.display(&self.genes))?;
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    let line = line.strip_suffix('\r').unwrap_or(line);
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_header(line: &str) -> bool {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    compact.eq_ignore_ascii_case("targets,factors")
}

/// Parses a complete BoolNet file.
///
/// The first pass collects target names so rules may reference genes declared later
/// in the file; the second pass parses and resolves every rule.
pub fn parse_network(text: &str) -> Result<NetworkSpec, ParseError> {
    let mut lines: Vec<(usize, Vec<Token>)> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if !seen_content && is_header(line) {
            seen_content = true;
            continue;
        }
        seen_content = true;
        let tokens = tokenize(line).map_err(|e| e.at_line(line_no))?;
        lines.push((line_no, tokens));
    }
    if lines.is_empty() {
        return Err(ParseError::EmptyNetwork);
    }
    if lines.len() > MAX_GENES {
        return Err(ParseError::TooManyGenes { count: lines.len(), max: MAX_GENES });
    }

    let mut genes: Vec<String> = Vec::with_capacity(lines.len());
    for (line_no, tokens) in &lines {
        match tokens.as_slice() {
            [Token { kind: TokenKind::Ident(name), .. }, Token { kind: TokenKind::Comma, .. }, ..] => {
                if genes.contains(name) {
                    return Err(ParseError::DuplicateGene { name: name.clone(), line: *line_no });
                }
                genes.push(name.clone());
            }
            _ => return Err(ParseError::MissingRule { line: *line_no }),
        }
    }

    let mut rules = Vec::with_capacity(genes.len());
    for (line_no, tokens) in &lines {
        let body = &tokens[2..];
        let end = tokens.last().map_or(1, |t| t.column + 1);
        let expr = parse_expr_with(body, end, |name, _| {
            genes
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| ParseError::UndefinedVariable { name: name.to_string(), line: 0 })
        })
        .map_err(|e| e.at_line(*line_no))?;
        rules.push(expr);
    }
    Ok(NetworkSpec { genes, rules })
}
