//! A plain grounder for counterpart programs: safe rules without sorts.
//!
//! The domain of possibly-true literals is the fixpoint of all rules with
//! default negation ignored; every rule is then instantiated by joining its
//! positive body against that domain.

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::{Diagnostic, Error, Result};
use crate::eval::{eval, eval_relation_atom, match_args, Subst};
use crate::ground::{GroundLiteral, GroundRule, WeakConstraint};
use crate::syntax::{Atom, Literal, Rule, RuleKind, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundCounterpart {
    pub rules: Vec<GroundRule>,
    pub weaks: Vec<WeakConstraint>,
}

type Key = (String, bool, usize);

#[derive(Default)]
struct Domain {
    set: BTreeSet<GroundLiteral>,
    by_key: BTreeMap<Key, Vec<Vec<Term>>>,
}

impl Domain {
    fn insert(&mut self, l: GroundLiteral) -> bool {
        if !self.set.insert(l.clone()) {
            return false;
        }
        self.by_key.entry((l.pred, l.negated, l.args.len())).or_default().push(l.args);
        true
    }
}

fn pos_preds(rule: &Rule) -> Vec<&Literal> {
    rule.pos_body().filter(|l| !l.is_relation()).collect()
}

fn check_safe(rule: &Rule) -> std::result::Result<(), Diagnostic> {
    let mut bound = Vec::new();
    for l in pos_preds(rule) {
        for t in l.atom.terms() {
            plain_vars(t, &mut bound);
        }
    }
    let unsafe_vars: Vec<String> = rule.vars().into_iter().filter(|v| !bound.contains(v)).collect();
    if unsafe_vars.is_empty() {
        Ok(())
    } else {
        Err(Diagnostic::error(
            rule.span.start,
            format!("unsafe rule `{rule}`: {} not in a positive body atom", unsafe_vars.join(", ")),
        ))
    }
}

fn plain_vars(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) if !out.contains(v) => out.push(v.clone()),
        Term::Func(_, args) => args.iter().for_each(|a| plain_vars(a, out)),
        _ => {}
    }
}

fn join(lits: &[&Literal], dom: &Domain, s: &Subst, out: &mut Vec<Subst>) {
    let Some((first, rest)) = lits.split_first() else {
        out.push(s.clone());
        return;
    };
    let Atom::Pred { name, args } = &first.atom else { unreachable!() };
    let Some(rows) = dom.by_key.get(&(name.clone(), first.negated, args.len())) else { return };
    for row in rows {
        let mut ext = s.clone();
        if match_args(args, row, &mut ext) {
            join(rest, dom, &ext, out);
        }
    }
}

fn ground_lit(l: &Literal, s: &Subst) -> Option<GroundLiteral> {
    let Atom::Pred { name, args } = &l.atom else { unreachable!() };
    let values = args.iter().map(|a| eval(a, s)).collect::<std::result::Result<Vec<_>, _>>().ok()?;
    Some(GroundLiteral::new(l.negated, name, values))
}

/// Substitutions under which every positive body literal is in the domain
/// and every relation holds.
fn matches(rule: &Rule, dom: &Domain) -> Vec<Subst> {
    let mut substs = Vec::new();
    join(&pos_preds(rule), dom, &Subst::new(), &mut substs);
    substs.retain(|s| {
        rule.pos_body().all(|l| {
            if l.is_relation() {
                matches!(eval_relation_atom(&l.atom, s), Ok(true))
            } else {
                ground_lit(l, s).is_some_and(|g| dom.set.contains(&g))
            }
        })
    });
    substs
}

/// Grounds parsed counterpart rules.
pub fn ground_counterpart(rules: &[Rule], atom_cap: usize) -> Result<GroundCounterpart> {
    let errors: Vec<Diagnostic> = rules.iter().filter_map(|r| check_safe(r).err()).collect();
    if !errors.is_empty() {
        return Err(Error::Check(errors));
    }
    let mut dom = Domain::default();
    loop {
        let mut changed = false;
        for rule in rules.iter().filter(|r| r.kind != RuleKind::Weak) {
            for s in matches(rule, &dom) {
                for h in &rule.head {
                    if let Some(g) = ground_lit(h, &s) {
                        changed |= dom.insert(g);
                    }
                }
            }
            if dom.set.len() > atom_cap {
                return Err(Error::Capacity(format!("counterpart domain exceeds {atom_cap} literals")));
            }
        }
        if !changed {
            break;
        }
    }

    let mut out = GroundCounterpart::default();
    let mut seen_rules = BTreeSet::new();
    let mut seen_weaks = BTreeSet::new();
    for (origin, rule) in rules.iter().enumerate() {
        for s in matches(rule, &dom) {
            let Some(head) = rule.head.iter().map(|h| ground_lit(h, &s)).collect::<Option<Vec<_>>>() else { continue };
            let pos: Vec<GroundLiteral> = pos_preds(rule).iter().map(|l| ground_lit(l, &s).unwrap()).collect();
            let neg: Vec<GroundLiteral> =
                rule.neg_body().filter_map(|l| ground_lit(l, &s)).filter(|g| dom.set.contains(g)).collect();
            if rule.kind == RuleKind::Weak {
                let w = WeakConstraint { pos, neg };
                if seen_weaks.insert(w.clone()) {
                    out.weaks.push(w);
                }
            } else {
                let g = GroundRule { kind: RuleKind::Regular, head, pos, neg, origin, name: None };
                if seen_rules.insert((g.head.clone(), g.pos.clone(), g.neg.clone())) {
                    out.rules.push(g);
                }
            }
        }
    }
    Ok(out)
}
