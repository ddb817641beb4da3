use std::fmt;

use crate::diag::{Diagnostic, Pos, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// Identifier starting with a small letter (also `v`, `sorts`, ...).
    Ident(String),
    /// Identifier starting with a capital letter.
    Var(String),
    Nat(u64),
    LParen,
    RParen,
    Comma,
    Dot,
    /// `:-` or `←`
    RuleArrow,
    /// `:+`
    CrArrow,
    /// `:~`
    WeakArrow,
    /// `|`; an identifier `v` in disjunct position is also read as OR.
    Or,
    Not,
    /// `-` or `¬`; classical negation or subtraction depending on position.
    Minus,
    Plus,
    Star,
    Mod,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) | TokenKind::Var(s) => f.write_str(s),
            TokenKind::Nat(n) => write!(f, "{n}"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Dot => f.write_str("."),
            TokenKind::RuleArrow => f.write_str(":-"),
            TokenKind::CrArrow => f.write_str(":+"),
            TokenKind::WeakArrow => f.write_str(":~"),
            TokenKind::Or => f.write_str("|"),
            TokenKind::Not => f.write_str("not"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Mod => f.write_str("mod"),
            TokenKind::Eq => f.write_str("="),
            TokenKind::Neq => f.write_str("!="),
            TokenKind::Lt => f.write_str("<"),
            TokenKind::Le => f.write_str("<="),
            TokenKind::Gt => f.write_str(">"),
            TokenKind::Ge => f.write_str(">="),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn line(&self) -> u32 {
        self.span.start.line
    }
}

struct Cursor<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn pos(&mut self) -> Pos {
        let offset = self.chars.peek().map_or(self.src.len(), |&(i, _)| i);
        Pos::new(self.line, self.col, offset)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }
}

/// Splits source text into tokens. `%` starts a comment running to the end of
/// the line. All lexical errors are collected; the token stream is returned
/// only if there were none.
pub fn tokenize(src: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut cur = Cursor { src, chars: src.char_indices().peekable(), line: 1, col: 1 };
    let mut tokens = Vec::new();
    let mut errors = Vec::new();

    while let Some(c) = cur.peek() {
        let start = cur.pos();
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '%' {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        cur.bump();
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            '.' => TokenKind::Dot,
            '|' => TokenKind::Or,
            '+' => TokenKind::Plus,
            '*' => TokenKind::Star,
            '-' | '¬' => TokenKind::Minus,
            '←' => TokenKind::RuleArrow,
            '=' => TokenKind::Eq,
            ':' => {
                if cur.eat('-') {
                    TokenKind::RuleArrow
                } else if cur.eat('+') {
                    TokenKind::CrArrow
                } else if cur.eat('~') || cur.eat('∼') {
                    TokenKind::WeakArrow
                } else {
                    errors.push(Diagnostic::error(start, "expected `:-`, `:+` or `:~` after `:`"));
                    continue;
                }
            }
            '!' => {
                if cur.eat('=') {
                    TokenKind::Neq
                } else {
                    errors.push(Diagnostic::error(start, "expected `!=`"));
                    continue;
                }
            }
            '<' => {
                if cur.eat('=') {
                    TokenKind::Le
                } else {
                    TokenKind::Lt
                }
            }
            '>' => {
                if cur.eat('=') {
                    TokenKind::Ge
                } else {
                    TokenKind::Gt
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::from(c);
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    text.push(d);
                    cur.bump();
                }
                if text.len() > 1 && text.starts_with('0') {
                    errors.push(Diagnostic::error(start, format!("numeral `{text}` has a leading zero")));
                    continue;
                }
                match text.parse::<u64>() {
                    Ok(n) => TokenKind::Nat(n),
                    Err(_) => {
                        errors.push(Diagnostic::error(start, format!("numeral `{text}` is too large")));
                        continue;
                    }
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut text = String::from(c);
                while let Some(d) = cur.peek().filter(char::is_ascii_alphanumeric) {
                    text.push(d);
                    cur.bump();
                }
                if c.is_ascii_uppercase() {
                    TokenKind::Var(text)
                } else {
                    match text.as_str() {
                        "not" => TokenKind::Not,
                        "mod" => TokenKind::Mod,
                        _ => TokenKind::Ident(text),
                    }
                }
            }
            other => {
                errors.push(Diagnostic::error(start, format!("invalid character `{}`", other.escape_debug())));
                continue;
            }
        };
        tokens.push(Token { kind, span: Span::new(start, cur.pos()) });
    }

    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    fn id(s: &str) -> TokenKind {
        Ident(s.into())
    }

    fn var(s: &str) -> TokenKind {
        Var(s.into())
    }

    #[test]
    fn rule_with_default_negation() {
        assert_eq!(
            kinds("p(X) :- not q(X)."),
            vec![id("p"), LParen, var("X"), RParen, RuleArrow, Not, id("q"), LParen, var("X"), RParen, Dot]
        );
    }

    #[test]
    fn empty_input() {
        assert!(kinds("").is_empty());
        assert!(kinds("  % only a comment\n").is_empty());
    }

    #[test]
    fn cr_arrow() {
        assert_eq!(kinds("q(X) :+ ."), vec![id("q"), LParen, var("X"), RParen, CrArrow, Dot]);
    }

    #[test]
    fn unicode_arrows_and_negation() {
        assert_eq!(kinds("¬p ← q"), vec![Minus, id("p"), RuleArrow, id("q")]);
        assert_eq!(kinds(":~ a"), vec![WeakArrow, id("a")]);
    }

    #[test]
    fn relations_and_operators() {
        assert_eq!(
            kinds("X != Y, X+1 >= 2*Y mod 3, A <= B, A < B, A = B"),
            vec![
                var("X"),
                Neq,
                var("Y"),
                Comma,
                var("X"),
                Plus,
                Nat(1),
                Ge,
                Nat(2),
                Star,
                var("Y"),
                Mod,
                Nat(3),
                Comma,
                var("A"),
                Le,
                var("B"),
                Comma,
                var("A"),
                Lt,
                var("B"),
                Comma,
                var("A"),
                Eq,
                var("B")
            ]
        );
    }

    #[test]
    fn positions_are_tracked() {
        let toks = tokenize("a.\n  b(X).").unwrap();
        assert_eq!(toks[2].span.start, Pos::new(2, 3, 5));
        assert_eq!(toks[4].span.start, Pos::new(2, 5, 7));
    }

    #[test]
    fn invalid_character_reports_position() {
        let errs = tokenize("p(a).\nq(b) & r.").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].pos.line, 2);
        assert_eq!(errs[0].pos.col, 6);
    }

    #[test]
    fn leading_zero_rejected() {
        assert!(tokenize("p(007).").is_err());
        assert_eq!(kinds("p(0)."), vec![id("p"), LParen, Nat(0), RParen, Dot]);
    }
}
