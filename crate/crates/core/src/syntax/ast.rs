use std::collections::BTreeSet;

use crate::diag::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Mod,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Mod => "mod",
        }
    }

    /// Binding strength; higher binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul | ArithOp::Mod => 2,
        }
    }
}

/// A term of the language. Terms carry no span: they double as ground values
/// throughout grounding and solving.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Nat(u64),
    Const(String),
    Func(String, Vec<Term>),
    Arith(ArithOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_owned())
    }

    pub fn func(name: &str, args: Vec<Term>) -> Term {
        Term::Func(name.to_owned(), args)
    }

    pub fn arith(op: ArithOp, lhs: Term, rhs: Term) -> Term {
        Term::Arith(op, Box::new(lhs), Box::new(rhs))
    }

    /// No variables and no arithmetic symbols.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) | Term::Arith(..) => false,
            Term::Nat(_) | Term::Const(_) => true,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Syntactically an arithmetic term: a variable, a numeral, or an operation.
    pub fn is_arithmetic(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Nat(_) | Term::Arith(..))
    }

    pub fn is_symbolic_ground(&self) -> bool {
        matches!(self, Term::Const(_) | Term::Func(..)) && self.is_ground()
    }

    /// Appends variables in first-occurrence order, without duplicates.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Nat(_) | Term::Const(_) => {}
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Arith(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Nat(_) | Term::Const(_) => 1,
            Term::Func(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            Term::Arith(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelOp {
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Neq => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(self, RelOp::Eq | RelOp::Neq)
    }
}

/// Whether a relation compares arithmetic terms or symbolic terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelKind {
    Arith,
    Sym,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred { name: String, args: Vec<Term> },
    Rel { op: RelOp, kind: RelKind, lhs: Term, rhs: Term },
}

impl Atom {
    pub fn pred(name: &str, args: Vec<Term>) -> Atom {
        Atom::Pred { name: name.to_owned(), args }
    }

    /// Builds a relation atom, classifying it the way the parser does.
    pub fn rel(op: RelOp, lhs: Term, rhs: Term) -> Atom {
        let kind = if !op.is_identity()
            || matches!(lhs, Term::Nat(_) | Term::Arith(..))
            || matches!(rhs, Term::Nat(_) | Term::Arith(..))
        {
            RelKind::Arith
        } else {
            RelKind::Sym
        };
        Atom::Rel { op, kind, lhs, rhs }
    }

    pub fn pred_name(&self) -> Option<(&str, usize)> {
        match self {
            Atom::Pred { name, args } => Some((name, args.len())),
            Atom::Rel { .. } => None,
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Pred { args, .. } => args.iter().collect(),
            Atom::Rel { lhs, rhs, .. } => vec![lhs, rhs],
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<String>) {
        for t in self.terms() {
            t.collect_vars(out);
        }
    }
}

/// An atom or its classical negation (`-` and `¬` are the same symbol).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
    pub span: Span,
}

impl Literal {
    pub fn new(negated: bool, atom: Atom) -> Literal {
        Literal { negated, atom, span: Span::default() }
    }

    pub fn pos(atom: Atom) -> Literal {
        Literal::new(false, atom)
    }

    pub fn is_relation(&self) -> bool {
        matches!(self.atom, Atom::Rel { .. })
    }
}

/// A body element: a literal, possibly under default negation (`not`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BodyLit {
    pub naf: bool,
    pub lit: Literal,
}

impl BodyLit {
    pub fn pos(lit: Literal) -> BodyLit {
        BodyLit { naf: false, lit }
    }

    pub fn not(lit: Literal) -> BodyLit {
        BodyLit { naf: true, lit }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Regular,
    /// Consistency-restoring rule, `l :+ body.`
    Cr,
    /// Weak constraint `:~ body.`; only produced by the translator and the
    /// counterpart-text parser.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub kind: RuleKind,
    pub head: Vec<Literal>,
    /// Body literals in source order.
    pub body: Vec<BodyLit>,
    /// Ordinal of the rule within its program part, starting at 0.
    pub index: usize,
    pub span: Span,
}

impl Rule {
    pub fn new(kind: RuleKind, head: Vec<Literal>, body: Vec<BodyLit>) -> Rule {
        Rule { kind, head, body, index: 0, span: Span::default() }
    }

    pub fn pos_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter(|b| !b.naf).map(|b| &b.lit)
    }

    pub fn neg_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter(|b| b.naf).map(|b| &b.lit)
    }

    /// Every literal occurrence, head first.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head.iter().chain(self.body.iter().map(|b| &b.lit))
    }

    /// Distinct variables in first-occurrence order over head then body.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for lit in self.literals() {
            lit.atom.collect_vars(&mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Declaration {
    pub pred: String,
    pub sorts: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub sort_rules: Vec<Rule>,
    pub declarations: Vec<Declaration>,
    pub rules: Vec<Rule>,
    /// Spans of the `sorts definition`, `predicates declaration` and
    /// `program rules` keywords.
    pub part_spans: [Span; 3],
}

impl Program {
    /// Predicate symbols occurring in the sort definition, in first-occurrence order.
    pub fn sort_predicates(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for rule in &self.sort_rules {
            for lit in rule.literals() {
                if let Some((n, a)) = lit.atom.pred_name() {
                    if !out.iter().any(|(m, b)| m == n && *b == a) {
                        out.push((n.to_owned(), a));
                    }
                }
            }
        }
        out
    }

    pub fn sort_predicate_names(&self) -> BTreeSet<String> {
        self.sort_predicates().into_iter().map(|(n, _)| n).collect()
    }
}
