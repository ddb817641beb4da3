//! Lexer, AST, parser and printer for sorted programs and counterpart text.

pub mod ast;
pub mod lexer;
pub mod parser;
mod print;

pub use ast::*;
pub use lexer::{tokenize, Token, TokenKind};

use crate::diag::{Diagnostic, Error};
use parser::Parser;

/// Parses a token stream into a three-part program.
pub fn parse_program(tokens: &[Token]) -> Result<Program, Vec<Diagnostic>> {
    Parser::new(tokens).program()
}

/// Parses a token stream holding exactly one (arithmetic or symbolic) term.
pub fn parse_arith(tokens: &[Token]) -> Result<Term, Vec<Diagnostic>> {
    Parser::new(tokens).single_term()
}

/// Parses counterpart text: plain rules (possibly disjunctive) and weak
/// constraints, without program parts or declarations.
pub fn parse_rules(tokens: &[Token]) -> Result<Vec<Rule>, Vec<Diagnostic>> {
    Parser::new(tokens).rules()
}

/// Tokenizes and parses program source.
pub fn parse_source(src: &str) -> Result<Program, Error> {
    let tokens = tokenize(src).map_err(Error::Syntax)?;
    parse_program(&tokens).map_err(Error::Syntax)
}

/// Tokenizes and parses counterpart text.
pub fn parse_rules_source(src: &str) -> Result<Vec<Rule>, Error> {
    let tokens = tokenize(src).map_err(Error::Syntax)?;
    parse_rules(&tokens).map_err(Error::Syntax)
}

/// Parses the inside of a `{l1, ..., ln}` literal list.
pub fn parse_literal_list(src: &str) -> Result<Vec<Literal>, Vec<Diagnostic>> {
    let tokens = tokenize(src)?;
    Parser::new(&tokens).literal_list().map_err(|e| vec![e])
}
