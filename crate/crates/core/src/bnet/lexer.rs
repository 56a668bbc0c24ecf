use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    And,
    Or,
    Not,
    LParen,
    RParen,
    Comma,
    Const(bool),
}

/// A token and the 1-based column of its first byte within the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || matches!(c, '_' | '-' | '.')
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')
}

/// Checks the gene-name alphabet: letters, digits, `_`, `-`, `.`, not starting with a digit.
pub fn is_valid_gene_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => chars.all(is_ident_char),
        _ => false,
    }
}

/// Splits one logical line (comments already stripped) into tokens.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let column = pos + 1;
        let kind = match c {
            c if c.is_whitespace() => continue,
            '&' => TokenKind::And,
            '|' => TokenKind::Or,
            '!' => TokenKind::Not,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            '0' | '1' => {
                if let Some(&(_, next)) = chars.peek() {
                    if is_ident_char(next) {
                        return Err(ParseError::UnexpectedCharacter { line: 0, column: column + 1, ch: next });
                    }
                }
                TokenKind::Const(c == '1')
            }
            c if is_ident_start(c) => {
                let mut name = String::from(c);
                while let Some(&(_, next)) = chars.peek() {
                    if !is_ident_char(next) {
                        break;
                    }
                    name.push(next);
                    chars.next();
                }
                TokenKind::Ident(name)
            }
            other => return Err(ParseError::UnexpectedCharacter { line: 0, column, ch: other }),
        };
        tokens.push(Token { kind, column });
    }
    Ok(tokens)
}
