//! Ground literals, rules and programs shared by the grounders and solvers.

use std::collections::BTreeSet;
use std::fmt::{self, Display, Formatter};

use crate::syntax::{Atom, Literal, RuleKind, Term};

/// A ground literal `p(t1,...,tn)` or `-p(t1,...,tn)`.
///
/// Ordered by predicate, then arguments, then sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLiteral {
    pub pred: String,
    pub args: Vec<Term>,
    pub negated: bool,
}

impl GroundLiteral {
    pub fn new(negated: bool, pred: &str, args: Vec<Term>) -> Self {
        Self { pred: pred.to_owned(), args, negated }
    }

    pub fn atom(pred: &str, args: Vec<Term>) -> Self {
        Self::new(false, pred, args)
    }

    pub fn complement(&self) -> Self {
        Self { negated: !self.negated, ..self.clone() }
    }

    /// Converts a ground predicate literal of the AST; `None` for relations
    /// or non-ground arguments.
    pub fn from_literal(lit: &Literal) -> Option<Self> {
        match &lit.atom {
            Atom::Pred { name, args } if args.iter().all(Term::is_ground) => {
                Some(Self { pred: name.clone(), args: args.clone(), negated: lit.negated })
            }
            _ => None,
        }
    }

    pub fn to_literal(&self) -> Literal {
        Literal::new(self.negated, Atom::Pred { name: self.pred.clone(), args: self.args.clone() })
    }
}

impl Display for GroundLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}

/// A consistent set of ground literals.
pub type AnswerSet = BTreeSet<GroundLiteral>;

/// Renders `{l1, l2, ...}` with literals sorted by their printed form.
pub fn format_literal_set<'a>(lits: impl IntoIterator<Item = &'a GroundLiteral>) -> String {
    let mut items: Vec<String> = lits.into_iter().map(ToString::to_string).collect();
    items.sort();
    format!("{{{}}}", items.join(", "))
}

pub fn is_consistent(set: &AnswerSet) -> bool {
    set.iter().all(|l| !l.negated || !set.contains(&l.complement()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub kind: RuleKind,
    pub head: Vec<GroundLiteral>,
    pub pos: Vec<GroundLiteral>,
    /// Literals under `not`.
    pub neg: Vec<GroundLiteral>,
    /// Index of the non-ground rule this instance came from.
    pub origin: usize,
    /// Name term `rn(i, t1, ..., tn)` of a ground consistency-restoring rule.
    pub name: Option<Term>,
}

impl GroundRule {
    pub fn regular(head: Vec<GroundLiteral>, pos: Vec<GroundLiteral>, neg: Vec<GroundLiteral>) -> Self {
        Self { kind: RuleKind::Regular, head, pos, neg, origin: 0, name: None }
    }

    pub fn fact(lit: GroundLiteral) -> Self {
        Self::regular(vec![lit], vec![], vec![])
    }

    pub fn is_disjunctive(&self) -> bool {
        self.head.len() > 1
    }
}

impl Display for GroundRule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(ToString::to_string).collect();
        let body: Vec<String> =
            self.pos.iter().map(ToString::to_string).chain(self.neg.iter().map(|l| format!("not {l}"))).collect();
        if self.kind == RuleKind::Weak {
            return write!(f, ":~ {}.", body.join(", "));
        }
        let arrow = if self.kind == RuleKind::Cr { ":+" } else { ":-" };
        f.write_str(&head.join(" v "))?;
        match (body.is_empty(), self.kind == RuleKind::Cr, head.is_empty()) {
            (true, true, _) => write!(f, " {arrow} ."),
            (true, false, _) => f.write_str("."),
            (false, _, true) => write!(f, "{arrow} {}.", body.join(", ")),
            (false, _, false) => write!(f, " {arrow} {}.", body.join(", ")),
        }
    }
}

/// A weak constraint `:~ pos, not neg.` with no weight or level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakConstraint {
    pub pos: Vec<GroundLiteral>,
    pub neg: Vec<GroundLiteral>,
}

impl WeakConstraint {
    pub fn violated_by(&self, set: &AnswerSet) -> bool {
        self.pos.iter().all(|l| set.contains(l)) && !self.neg.iter().any(|l| set.contains(l))
    }
}

impl Display for WeakConstraint {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let body: Vec<String> =
            self.pos.iter().map(ToString::to_string).chain(self.neg.iter().map(|l| format!("not {l}"))).collect();
        write!(f, ":~ {}.", body.join(", "))
    }
}

/// The sort-respecting grounding of a program's rules, split into regular
/// rules and consistency-restoring rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub regular: Vec<GroundRule>,
    pub cr: Vec<GroundRule>,
    /// Atoms of the sort definition's answer set referenced by emitted
    /// instances; they were simplified away as satisfied conditions.
    pub sort_facts: BTreeSet<GroundLiteral>,
}

impl GroundProgram {
    /// All rules ordered by origin, regular and consistency-restoring alike.
    pub fn rules_in_order(&self) -> Vec<&GroundRule> {
        let mut all: Vec<&GroundRule> = self.regular.iter().chain(&self.cr).collect();
        all.sort_by_key(|r| r.origin);
        all
    }
}
