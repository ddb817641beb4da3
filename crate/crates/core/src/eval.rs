//! Substitutions, arithmetic evaluation and one-way matching of terms.

use std::collections::BTreeMap;

use crate::syntax::{ArithOp, Atom, RelKind, RelOp, Term};

pub type Subst = BTreeMap<String, Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Unbound(String),
    /// Arithmetic applied to a symbolic value.
    NonNumeric,
    /// A final arithmetic value below zero.
    Negative(i128),
    DivByZero,
    Overflow,
}

fn eval_int(term: &Term, s: &Subst) -> Result<i128, EvalError> {
    match term {
        Term::Nat(n) => Ok(i128::from(*n)),
        Term::Var(v) => match s.get(v) {
            Some(Term::Nat(n)) => Ok(i128::from(*n)),
            Some(_) => Err(EvalError::NonNumeric),
            None => Err(EvalError::Unbound(v.clone())),
        },
        Term::Const(_) | Term::Func(..) => Err(EvalError::NonNumeric),
        Term::Arith(op, l, r) => {
            let (l, r) = (eval_int(l, s)?, eval_int(r, s)?);
            let v = match op {
                ArithOp::Add => l.checked_add(r),
                ArithOp::Sub => l.checked_sub(r),
                ArithOp::Mul => l.checked_mul(r),
                ArithOp::Mod => {
                    if r == 0 {
                        return Err(EvalError::DivByZero);
                    }
                    l.checked_rem(r)
                }
            };
            v.ok_or(EvalError::Overflow)
        }
    }
}

fn to_nat(v: i128) -> Result<Term, EvalError> {
    if v < 0 {
        Err(EvalError::Negative(v))
    } else {
        u64::try_from(v).map(Term::Nat).map_err(|_| EvalError::Overflow)
    }
}

/// Applies `s` and evaluates arithmetic, producing a ground term.
/// Intermediate results may be negative; the final value may not.
pub fn eval(term: &Term, s: &Subst) -> Result<Term, EvalError> {
    match term {
        Term::Nat(_) | Term::Const(_) => Ok(term.clone()),
        Term::Var(v) => s.get(v).cloned().ok_or_else(|| EvalError::Unbound(v.clone())),
        Term::Func(name, args) => {
            let args = args.iter().map(|a| eval(a, s)).collect::<Result<_, _>>()?;
            Ok(Term::Func(name.clone(), args))
        }
        Term::Arith(..) => to_nat(eval_int(term, s)?),
    }
}

/// Applies `s` without evaluating arithmetic; unbound variables stay.
pub fn substitute(term: &Term, s: &Subst) -> Term {
    match term {
        Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| term.clone()),
        Term::Nat(_) | Term::Const(_) => term.clone(),
        Term::Func(name, args) => Term::Func(name.clone(), args.iter().map(|a| substitute(a, s)).collect()),
        Term::Arith(op, l, r) => Term::arith(*op, substitute(l, s), substitute(r, s)),
    }
}

/// Truth value of a relation atom under `s`. `Err` means the instance is
/// meaningless (unbound, non-numeric or negative operand) and is dropped.
pub fn eval_relation(op: RelOp, kind: RelKind, lhs: &Term, rhs: &Term, s: &Subst) -> Result<bool, EvalError> {
    let (l, r) = (eval(lhs, s)?, eval(rhs, s)?);
    if op.is_identity() {
        if kind == RelKind::Arith && !(matches!(l, Term::Nat(_)) && matches!(r, Term::Nat(_))) {
            return Err(EvalError::NonNumeric);
        }
        return Ok((l == r) == (op == RelOp::Eq));
    }
    let (Term::Nat(l), Term::Nat(r)) = (l, r) else {
        return Err(EvalError::NonNumeric);
    };
    Ok(match op {
        RelOp::Lt => l < r,
        RelOp::Le => l <= r,
        RelOp::Gt => l > r,
        RelOp::Ge => l >= r,
        RelOp::Eq | RelOp::Neq => unreachable!(),
    })
}

pub fn eval_relation_atom(atom: &Atom, s: &Subst) -> Result<bool, EvalError> {
    match atom {
        Atom::Rel { op, kind, lhs, rhs } => eval_relation(*op, *kind, lhs, rhs, s),
        Atom::Pred { .. } => unreachable!("not a relation atom"),
    }
}

/// Extends `s` so that `pattern` matches the ground term `value`. Arithmetic
/// sub-patterns with unbound variables match anything; callers re-check the
/// fully instantiated atom afterwards.
pub fn match_term(pattern: &Term, value: &Term, s: &mut Subst) -> bool {
    match pattern {
        Term::Var(v) => match s.get(v) {
            Some(bound) => bound == value,
            None => {
                s.insert(v.clone(), value.clone());
                true
            }
        },
        Term::Nat(_) | Term::Const(_) => pattern == value,
        Term::Func(name, args) => match value {
            Term::Func(vname, vargs) if vname == name && vargs.len() == args.len() => {
                args.iter().zip(vargs).all(|(p, v)| match_term(p, v, s))
            }
            _ => false,
        },
        Term::Arith(..) => match eval(pattern, s) {
            Ok(v) => &v == value,
            Err(EvalError::Unbound(_)) => true,
            Err(_) => false,
        },
    }
}

pub fn match_args(patterns: &[Term], values: &[Term], s: &mut Subst) -> bool {
    patterns.len() == values.len() && patterns.iter().zip(values).all(|(p, v)| match_term(p, v, s))
}
