//! Recursive-descent parser over the token stream.
//!
//! Arithmetic binds `*` and `mod` tighter than `+` and `-`; all four are
//! left-associative. After a syntax error the parser skips to the next `.`
//! (or the next line, inside the declaration part) and keeps going, so one
//! run reports every recoverable error.

use super::ast::*;
use super::lexer::{Token, TokenKind};
use crate::diag::{Diagnostic, Pos, Span};

type PResult<T> = Result<T, Diagnostic>;

const SORTS_KW: (&str, &str) = ("sorts", "definition");
const PREDS_KW: (&str, &str) = ("predicates", "declaration");
const RULES_KW: (&str, &str) = ("program", "rules");

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Sorts,
    Rules,
    /// Counterpart (DLV) text: regular rules and weak constraints, no parts.
    Dlv,
}

pub struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    errors: Vec<Diagnostic>,
}

impl<'t> Parser<'t> {
    pub fn new(toks: &'t [Token]) -> Self {
        Self { toks, pos: 0, errors: Vec::new() }
    }

    fn peek(&self) -> Option<&'t TokenKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, n: usize) -> Option<&'t TokenKind> {
        self.toks.get(self.pos + n).map(|t| &t.kind)
    }

    fn here(&self) -> Pos {
        match self.toks.get(self.pos) {
            Some(t) => t.span.start,
            None => self.toks.last().map(|t| t.span.end).unwrap_or(Pos::new(1, 1, 0)),
        }
    }

    fn prev_end(&self) -> Pos {
        if self.pos == 0 {
            self.here()
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn span_from(&self, start: Pos) -> Span {
        Span::new(start, self.prev_end())
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> PResult<()> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        match self.peek() {
            Some(k) => Diagnostic::error(self.here(), format!("expected {what}, found `{k}`")),
            None => Diagnostic::error(self.here(), format!("expected {what}, found end of input")),
        }
    }

    fn at_keyword(&self, kw: (&str, &str)) -> bool {
        matches!(
            (self.peek(), self.peek_at(1)),
            (Some(TokenKind::Ident(a)), Some(TokenKind::Ident(b))) if a == kw.0 && b == kw.1
        )
    }

    fn at_any_keyword(&self) -> bool {
        self.at_keyword(SORTS_KW) || self.at_keyword(PREDS_KW) || self.at_keyword(RULES_KW)
    }

    /// Skips past the next `.`, stopping early at a part keyword.
    fn recover_to_dot(&mut self) {
        while !self.at_end() && !self.at_any_keyword() {
            if self.bump().map(|t| &t.kind) == Some(&TokenKind::Dot) {
                return;
            }
        }
    }

    fn keyword(&mut self, kw: (&str, &str)) -> Option<Span> {
        if self.at_keyword(kw) {
            let start = self.here();
            self.pos += 2;
            Some(self.span_from(start))
        } else {
            None
        }
    }

    // ---- programs ----------------------------------------------------------

    pub fn program(mut self) -> Result<Program, Vec<Diagnostic>> {
        let mut program = Program::default();

        match self.keyword(SORTS_KW) {
            Some(span) => program.part_spans[0] = span,
            None => self.errors.push(self.unexpected("`sorts definition`")),
        }
        while !self.at_end() && !self.at_keyword(PREDS_KW) {
            if self.at_keyword(SORTS_KW) || self.at_keyword(RULES_KW) {
                self.errors.push(Diagnostic::error(
                    self.here(),
                    "program part out of order; expected `predicates declaration`",
                ));
                self.pos += 2;
                continue;
            }
            match self.rule(Section::Sorts) {
                Ok(mut r) => {
                    r.index = program.sort_rules.len();
                    program.sort_rules.push(r);
                }
                Err(e) => {
                    self.errors.push(e);
                    self.recover_to_dot();
                }
            }
        }

        match self.keyword(PREDS_KW) {
            Some(span) => program.part_spans[1] = span,
            None => self.errors.push(self.unexpected("`predicates declaration`")),
        }
        let mut last_line = program.part_spans[1].end.line;
        while !self.at_end() && !self.at_keyword(RULES_KW) {
            if self.at_keyword(SORTS_KW) || self.at_keyword(PREDS_KW) {
                self.errors.push(Diagnostic::error(self.here(), "program part out of order; expected `program rules`"));
                self.pos += 2;
                continue;
            }
            let line = self.toks[self.pos].line();
            if line == last_line {
                self.errors.push(Diagnostic::error(self.here(), "each declaration must be on its own line"));
            }
            match self.declaration() {
                Ok(d) => {
                    last_line = self.prev_end().line;
                    program.declarations.push(d);
                }
                Err(e) => {
                    self.errors.push(e);
                    // skip the rest of the offending line
                    while !self.at_end() && !self.at_any_keyword() && self.toks[self.pos].line() == line {
                        self.pos += 1;
                    }
                    last_line = line;
                }
            }
        }

        match self.keyword(RULES_KW) {
            Some(span) => program.part_spans[2] = span,
            None => self.errors.push(self.unexpected("`program rules`")),
        }
        while !self.at_end() {
            if self.at_any_keyword() {
                self.errors
                    .push(Diagnostic::error(self.here(), "program part out of order; program rules must come last"));
                self.pos += 2;
                continue;
            }
            match self.rule(Section::Rules) {
                Ok(mut r) => {
                    r.index = program.rules.len();
                    program.rules.push(r);
                }
                Err(e) => {
                    self.errors.push(e);
                    self.recover_to_dot();
                }
            }
        }

        if self.errors.is_empty() {
            Ok(program)
        } else {
            Err(self.errors)
        }
    }

    fn declaration(&mut self) -> PResult<Declaration> {
        let start = self.here();
        let line = start.line;
        let pred = match self.peek() {
            Some(TokenKind::Ident(name)) => name.clone(),
            _ => return Err(self.unexpected("a predicate symbol")),
        };
        self.pos += 1;
        if self.peek() != Some(&TokenKind::LParen) {
            return Err(Diagnostic::error(
                start,
                format!("declaration of `{pred}` needs a sort list; write `{pred}()` for a 0-ary predicate"),
            ));
        }
        self.pos += 1;
        let mut sorts = Vec::new();
        if !self.eat(&TokenKind::RParen) {
            loop {
                match self.peek() {
                    Some(TokenKind::Ident(s)) => {
                        sorts.push(s.clone());
                        self.pos += 1;
                    }
                    _ => return Err(self.unexpected("a sort name")),
                }
                if self.eat(&TokenKind::Comma) {
                    continue;
                }
                self.expect(&TokenKind::RParen, "`,` or `)`")?;
                break;
            }
        }
        self.eat(&TokenKind::Dot);
        let span = self.span_from(start);
        if span.end.line != line {
            return Err(Diagnostic::error(start, "a declaration must fit on one line"));
        }
        Ok(Declaration { pred, sorts, span })
    }

    // ---- rules -------------------------------------------------------------

    fn rule(&mut self, section: Section) -> PResult<Rule> {
        let start = self.here();
        if self.eat(&TokenKind::WeakArrow) {
            if section != Section::Dlv {
                return Err(Diagnostic::error(start, "weak constraints are not part of the source language"));
            }
            let body = self.body()?;
            self.expect(&TokenKind::Dot, "`.`")?;
            return Ok(Rule { kind: RuleKind::Weak, head: vec![], body, index: 0, span: self.span_from(start) });
        }

        let mut head = Vec::new();
        if self.peek() != Some(&TokenKind::RuleArrow) {
            head.push(self.head_literal()?);
            while self.eat(&TokenKind::Or) || self.eat(&TokenKind::Ident("v".into())) {
                head.push(self.head_literal()?);
            }
        }

        let (kind, body) = match self.peek() {
            Some(TokenKind::Dot) => (RuleKind::Regular, Vec::new()),
            Some(TokenKind::RuleArrow) => {
                self.pos += 1;
                (RuleKind::Regular, self.body()?)
            }
            Some(TokenKind::CrArrow) => {
                self.pos += 1;
                if section == Section::Dlv {
                    return Err(Diagnostic::error(
                        start,
                        "consistency-restoring rules are not part of counterpart text",
                    ));
                }
                let body = if self.peek() == Some(&TokenKind::Dot) { Vec::new() } else { self.body()? };
                (RuleKind::Cr, body)
            }
            _ => return Err(self.unexpected("`.`, `:-` or `:+`")),
        };
        self.expect(&TokenKind::Dot, "`,` or `.`")?;
        let span = self.span_from(start);

        if head.is_empty() && kind == RuleKind::Regular && body.is_empty() {
            return Err(Diagnostic::error(start, "empty rule"));
        }
        if kind == RuleKind::Cr && head.len() != 1 {
            return Err(Diagnostic::error(start, "a consistency-restoring rule must have exactly one head literal"));
        }
        if section == Section::Sorts {
            if kind != RuleKind::Regular {
                return Err(Diagnostic::error(start, "only regular rules may appear in the sort definition"));
            }
            match head.as_slice() {
                [l] if !l.negated => {}
                [l] => {
                    return Err(Diagnostic::error(
                        l.span.start,
                        "sort definition heads must be atoms, not negated literals",
                    ))
                }
                _ => return Err(Diagnostic::error(start, "sort definition rules need exactly one head atom")),
            }
        }
        Ok(Rule { kind, head, body, index: 0, span })
    }

    fn head_literal(&mut self) -> PResult<Literal> {
        let lit = self.literal()?;
        if lit.is_relation() {
            return Err(Diagnostic::error(lit.span.start, "relation atoms may not appear in rule heads"));
        }
        Ok(lit)
    }

    fn body(&mut self) -> PResult<Vec<BodyLit>> {
        let mut body = vec![self.body_literal()?];
        while self.eat(&TokenKind::Comma) {
            body.push(self.body_literal()?);
        }
        Ok(body)
    }

    fn body_literal(&mut self) -> PResult<BodyLit> {
        let start = self.here();
        let naf = self.eat(&TokenKind::Not);
        let lit = self.literal()?;
        if naf && lit.is_relation() {
            return Err(Diagnostic::error(start, "relation atoms may not appear under `not`"));
        }
        Ok(BodyLit { naf, lit })
    }

    pub(crate) fn literal(&mut self) -> PResult<Literal> {
        let start = self.here();
        let negated = self.eat(&TokenKind::Minus);
        let lhs = self.term()?;
        let rel = match self.peek() {
            Some(TokenKind::Eq) => Some(RelOp::Eq),
            Some(TokenKind::Neq) => Some(RelOp::Neq),
            Some(TokenKind::Lt) => Some(RelOp::Lt),
            Some(TokenKind::Le) => Some(RelOp::Le),
            Some(TokenKind::Gt) => Some(RelOp::Gt),
            Some(TokenKind::Ge) => Some(RelOp::Ge),
            _ => None,
        };
        let atom = if let Some(op) = rel {
            self.pos += 1;
            if negated {
                return Err(Diagnostic::error(start, "relation atoms cannot be classically negated"));
            }
            let rhs = self.term()?;
            let atom = Atom::rel(op, lhs, rhs);
            if let Atom::Rel { kind: RelKind::Arith, lhs, rhs, .. } = &atom {
                if !lhs.is_arithmetic() || !rhs.is_arithmetic() {
                    return Err(Diagnostic::error(start, format!("`{}` compares arithmetic terms only", op.symbol())));
                }
            }
            atom
        } else {
            match lhs {
                Term::Const(name) => Atom::Pred { name, args: vec![] },
                Term::Func(name, args) => Atom::Pred { name, args },
                _ => return Err(Diagnostic::error(start, "expected an atom")),
            }
        };
        Ok(Literal { negated, atom, span: self.span_from(start) })
    }

    // ---- terms -------------------------------------------------------------

    pub(crate) fn term(&mut self) -> PResult<Term> {
        let start = self.here();
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => ArithOp::Add,
                Some(TokenKind::Minus) => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.product()?;
            lhs = arith(op, lhs, rhs, start)?;
        }
    }

    fn product(&mut self) -> PResult<Term> {
        let start = self.here();
        let mut lhs = self.primary()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Star) => ArithOp::Mul,
                Some(TokenKind::Mod) => ArithOp::Mod,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.primary()?;
            lhs = arith(op, lhs, rhs, start)?;
        }
    }

    fn primary(&mut self) -> PResult<Term> {
        let start = self.here();
        match self.peek() {
            Some(TokenKind::Var(v)) => {
                self.pos += 1;
                Ok(Term::Var(v.clone()))
            }
            Some(TokenKind::Nat(n)) => {
                self.pos += 1;
                Ok(Term::Nat(*n))
            }
            Some(TokenKind::Ident(name)) => {
                self.pos += 1;
                if !self.eat(&TokenKind::LParen) {
                    return Ok(Term::Const(name.clone()));
                }
                let mut args = vec![self.term()?];
                while self.eat(&TokenKind::Comma) {
                    args.push(self.term()?);
                }
                self.expect(&TokenKind::RParen, "`,` or `)`")?;
                Ok(Term::Func(name.clone(), args))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.term()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(Diagnostic::error(start, "unbalanced parenthesis"));
                }
                if !inner.is_arithmetic() {
                    return Err(Diagnostic::error(start, "only arithmetic terms may be parenthesized"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    // ---- entry points for non-program inputs --------------------------------

    pub fn rules(mut self) -> Result<Vec<Rule>, Vec<Diagnostic>> {
        let mut rules = Vec::new();
        while !self.at_end() {
            match self.rule(Section::Dlv) {
                Ok(mut r) => {
                    r.index = rules.len();
                    rules.push(r);
                }
                Err(e) => {
                    self.errors.push(e);
                    self.recover_to_dot();
                }
            }
        }
        if self.errors.is_empty() {
            Ok(rules)
        } else {
            Err(self.errors)
        }
    }

    pub fn single_term(mut self) -> Result<Term, Vec<Diagnostic>> {
        let t = self.term().map_err(|e| vec![e])?;
        if !self.at_end() {
            if self.peek() == Some(&TokenKind::RParen) {
                return Err(vec![Diagnostic::error(self.here(), "unbalanced parenthesis")]);
            }
            return Err(vec![self.unexpected("end of term")]);
        }
        Ok(t)
    }

    /// Comma-separated literals filling the whole token stream (the inside
    /// of a `{...}` answer-set line; braces are stripped by the caller).
    pub fn literal_list(mut self) -> PResult<Vec<Literal>> {
        let mut lits = Vec::new();
        if self.at_end() {
            return Ok(lits);
        }
        lits.push(self.literal()?);
        while self.eat(&TokenKind::Comma) {
            lits.push(self.literal()?);
        }
        if !self.at_end() {
            return Err(self.unexpected("`,` or `}`"));
        }
        Ok(lits)
    }
}

fn arith(op: ArithOp, lhs: Term, rhs: Term, start: Pos) -> PResult<Term> {
    if !lhs.is_arithmetic() || !rhs.is_arithmetic() {
        return Err(Diagnostic::error(start, format!("operands of `{}` must be arithmetic terms", op.symbol())));
    }
    Ok(Term::arith(op, lhs, rhs))
}
