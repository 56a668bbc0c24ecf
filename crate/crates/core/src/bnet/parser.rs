use super::lexer::{Token, TokenKind};
use super::{BoolExpr, ParseError};

/// Recursive-descent parser for `or := and ('|' and)*`, `and := unary ('&' unary)*`,
/// `unary := '!' unary | atom`, `atom := IDENT | 0 | 1 | '(' or ')'`.
struct Parser<'a, F> {
    tokens: &'a [Token],
    pos: usize,
    end_column: usize,
    resolve: F,
}

impl<F: FnMut(&str, usize) -> Result<usize, ParseError>> Parser<'_, F> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax { line: 0, column: self.column(), expected: expected.to_string() }
    }

    fn or(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&TokenKind::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = BoolExpr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&TokenKind::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = BoolExpr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BoolExpr, ParseError> {
        if self.peek() == Some(&TokenKind::Not) {
            self.pos += 1;
            return Ok(BoolExpr::negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BoolExpr, ParseError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(TokenKind::Const(b)) => {
                self.pos += 1;
                Ok(BoolExpr::Const(b))
            }
            Some(TokenKind::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&TokenKind::LParen) {
                    return Err(ParseError::Unsupported {
                        line: 0,
                        column,
                        what: format!("function-style predicate `{name}(...)`"),
                    });
                }
                Ok(BoolExpr::Var((self.resolve)(&name, column)?))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&TokenKind::RParen) {
                    return Err(self.syntax("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.syntax("gene name, constant, '!' or '('")),
        }
    }
}

/// Parses a token sequence into an expression, resolving each identifier with `resolve`.
///
/// `resolve` receives the name and its column; it returns the gene index or an error.
pub fn parse_expr_with<F>(tokens: &[Token], end_column: usize, resolve: F) -> Result<BoolExpr, ParseError>
where
    F: FnMut(&str, usize) -> Result<usize, ParseError>,
{
    let mut parser = Parser { tokens, pos: 0, end_column, resolve };
    let expr = parser.or()?;
    match parser.peek() {
        None => Ok(expr),
        Some(TokenKind::Comma) => Err(ParseError::Unsupported {
            line: 0,
            column: parser.column(),
            what: "additional column (probabilistic rules)".to_string(),
        }),
        Some(_) => Err(parser.syntax("end of expression")),
    }
}

/// Parses tokens against a fixed gene list.
pub fn parse_expr(tokens: &[Token], genes: &[String]) -> Result<BoolExpr, ParseError> {
    let end = tokens.last().map_or(1, |t| t.column + 1);
    parse_expr_with(tokens, end, |name, _| {
        genes
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ParseError::UndefinedVariable { name: name.to_string(), line: 0 })
    })
}
