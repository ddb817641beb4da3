//! Source-form rendering. Output reparses to a structurally identical AST.

use std::fmt::{self, Display, Formatter};

use super::ast::*;

fn write_args(f: &mut Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Nat(n) => write!(f, "{n}"),
            Term::Func(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
            Term::Arith(op, lhs, rhs) => {
                let prec = op.precedence();
                let wrap_l = matches!(&**lhs, Term::Arith(o, ..) if o.precedence() < prec);
                let wrap_r = matches!(&**rhs, Term::Arith(o, ..) if o.precedence() <= prec);
                let sep = if *op == ArithOp::Mod { " mod " } else { op.symbol() };
                if wrap_l {
                    write!(f, "({lhs})")?;
                } else {
                    write!(f, "{lhs}")?;
                }
                f.write_str(sep)?;
                if wrap_r {
                    write!(f, "({rhs})")
                } else {
                    write!(f, "{rhs}")
                }
            }
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred { name, args } => {
                f.write_str(name)?;
                if args.is_empty() {
                    Ok(())
                } else {
                    write_args(f, args)
                }
            }
            Atom::Rel { op, lhs, rhs, .. } => write!(f, "{lhs} {} {rhs}", op.symbol()),
        }
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl Display for BodyLit {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.naf {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.lit)
    }
}

pub(crate) fn write_joined<T: Display>(f: &mut Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl Display for Rule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.kind {
            RuleKind::Weak => {
                f.write_str(":~ ")?;
                write_joined(f, &self.body, ", ")?;
                return f.write_str(".");
            }
            RuleKind::Regular | RuleKind::Cr => {}
        }
        write_joined(f, &self.head, " v ")?;
        let arrow = if self.kind == RuleKind::Cr { ":+" } else { ":-" };
        if self.body.is_empty() {
            if self.kind == RuleKind::Cr {
                write!(f, " {arrow} ")?;
            }
            return f.write_str(".");
        }
        if self.head.is_empty() {
            write!(f, "{arrow} ")?;
        } else {
            write!(f, " {arrow} ")?;
        }
        write_joined(f, &self.body, ", ")?;
        f.write_str(".")
    }
}

impl Display for Declaration {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        write_joined(f, &self.sorts, ",")?;
        f.write_str(")")
    }
}

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "sorts definition")?;
        for r in &self.sort_rules {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "predicates declaration")?;
        for d in &self.declarations {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "program rules")?;
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
