//! Sort-respecting grounding of program rules.
//!
//! Each variable ranges over the intersection of the values allowed by every
//! defined-sort position it occupies. Instances are then evaluated: arithmetic
//! is computed, every declared atom is re-checked against its declaration, and
//! relation and sort-definition conditions are decided and removed.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::diag::{Diagnostic, Error, Result};
use crate::eval::{eval, eval_relation_atom, match_args, match_term, Subst};
use crate::ground::{GroundLiteral, GroundProgram, GroundRule};
use crate::sortcheck::{DeclarationTable, SortInterpretation, NAT};
use crate::syntax::{Atom, Literal, Program, Rule, RuleKind, Term};
use crate::{CheckedProgram, Limits};

struct Context<'a> {
    sorts: &'a SortInterpretation,
    decls: &'a DeclarationTable,
    sort_preds: BTreeSet<String>,
}

impl<'a> Context<'a> {
    fn new(program: &Program, sorts: &'a SortInterpretation, decls: &'a DeclarationTable) -> Self {
        Self { sorts, decls, sort_preds: program.sort_predicate_names() }
    }

    /// Candidate values per variable, in the rule's variable order. Errors
    /// name a variable no defined-sort position constrains.
    fn candidates(&self, rule: &Rule) -> std::result::Result<Vec<(String, Vec<Term>)>, Diagnostic> {
        let mut allowed: BTreeMap<String, BTreeSet<Term>> = BTreeMap::new();
        let mut restrict = |found: BTreeMap<String, BTreeSet<Term>>| {
            for (v, vals) in found {
                match allowed.get_mut(&v) {
                    Some(cur) => cur.retain(|t| vals.contains(t)),
                    None => {
                        allowed.insert(v, vals);
                    }
                }
            }
        };

        let head_len = rule.head.len();
        for (i, lit) in rule.literals().enumerate() {
            let Atom::Pred { name, args } = &lit.atom else { continue };
            let naf = i >= head_len && rule.body[i - head_len].naf;
            if self.sort_preds.contains(name) {
                if naf || lit.negated {
                    continue;
                }
                let mut found: BTreeMap<String, BTreeSet<Term>> =
                    free_vars(args).into_iter().map(|v| (v, BTreeSet::new())).collect();
                for atom in self.sorts.atoms_of(name, args.len()) {
                    let mut s = Subst::new();
                    if match_args(args, &atom.args, &mut s) {
                        for (v, vals) in found.iter_mut() {
                            vals.insert(s[v].clone());
                        }
                    }
                }
                restrict(found);
            } else if let Some(decl) = self.decls.get(name, args.len()) {
                for (arg, sort) in args.iter().zip(decl) {
                    if sort == NAT || has_arith(arg) {
                        continue;
                    }
                    let Some(members) = self.sorts.members(sort) else { continue };
                    let mut found: BTreeMap<String, BTreeSet<Term>> =
                        free_vars(std::slice::from_ref(arg)).into_iter().map(|v| (v, BTreeSet::new())).collect();
                    if found.is_empty() {
                        continue;
                    }
                    for m in members {
                        let mut s = Subst::new();
                        if match_term(arg, m, &mut s) {
                            for (v, vals) in found.iter_mut() {
                                vals.insert(s[v].clone());
                            }
                        }
                    }
                    restrict(found);
                }
            }
        }

        let mut out = Vec::new();
        for v in rule.vars() {
            match allowed.remove(&v) {
                Some(vals) => out.push((v, vals.into_iter().collect())),
                None => {
                    return Err(Diagnostic::error(
                        rule.span.start,
                        format!("variable {v} occupies no position of a defined sort, so its values are unbounded"),
                    ))
                }
            }
        }
        Ok(out)
    }

    fn ground_literal(&self, lit: &Literal, s: &Subst) -> Option<GroundLiteral> {
        let Atom::Pred { name, args } = &lit.atom else { unreachable!() };
        let values: Vec<Term> = args.iter().map(|a| eval(a, s)).collect::<std::result::Result<_, _>>().ok()?;
        if let Some(decl) = self.decls.get(name, values.len()) {
            if !values.iter().zip(decl).all(|(t, sort)| self.sorts.has_sort(t, sort)) {
                return None;
            }
        }
        Some(GroundLiteral::new(lit.negated, name, values))
    }

    /// The ground instance of `rule` under `s`, or `None` if it is dropped.
    /// Satisfied sort-definition atoms are added to `used`.
    fn instance(&self, rule: &Rule, s: &Subst, used: &mut Vec<GroundLiteral>) -> Option<GroundRule> {
        let head = rule.head.iter().map(|l| self.ground_literal(l, s)).collect::<Option<Vec<_>>>()?;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        let mark = used.len();
        for b in &rule.body {
            if b.lit.is_relation() {
                if !eval_relation_atom(&b.lit.atom, s).ok()? {
                    used.truncate(mark);
                    return None;
                }
                continue;
            }
            let Atom::Pred { name, args } = &b.lit.atom else { unreachable!() };
            if self.sort_preds.contains(name) {
                let values: Vec<Term> = match args.iter().map(|a| eval(a, s)).collect() {
                    Ok(v) => v,
                    Err(_) if b.naf => continue,
                    Err(_) => {
                        used.truncate(mark);
                        return None;
                    }
                };
                let atom = GroundLiteral::atom(name, values);
                let holds = !b.lit.negated && self.sorts.contains(&atom);
                if holds == b.naf {
                    used.truncate(mark);
                    return None;
                }
                if holds {
                    used.push(atom);
                }
                continue;
            }
            let Some(g) = self.ground_literal(&b.lit, s) else {
                used.truncate(mark);
                return None;
            };
            if b.naf {
                neg.push(g);
            } else {
                pos.push(g);
            }
        }
        Some(GroundRule { kind: rule.kind, head, pos, neg, origin: rule.index, name: None })
    }
}

fn free_vars(args: &[Term]) -> Vec<String> {
    fn walk(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Var(v) if !out.contains(v) => out.push(v.clone()),
            Term::Func(_, a) => a.iter().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    let mut out = Vec::new();
    args.iter().for_each(|a| walk(a, &mut out));
    out
}

fn has_arith(t: &Term) -> bool {
    match t {
        Term::Arith(..) => true,
        Term::Func(_, a) => a.iter().any(has_arith),
        _ => false,
    }
}

/// Reports every rule with a variable that no defined sort bounds.
pub fn check_safety(
    program: &Program,
    sorts: &SortInterpretation,
    decls: &DeclarationTable,
) -> std::result::Result<(), Vec<Diagnostic>> {
    let ctx = Context::new(program, sorts, decls);
    let errors: Vec<Diagnostic> = program.rules.iter().filter_map(|r| ctx.candidates(r).err()).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

/// Ground instances of one rule respecting sorts, in substitution order with
/// the rule's first variable varying fastest. Duplicates are removed.
/// `cr_index` is the 1-based position of a consistency-restoring rule among
/// the program's consistency-restoring rules; it is ignored for other rules.
pub fn ground_rule(
    rule: &Rule,
    cr_index: u64,
    checked: &CheckedProgram,
    limits: &Limits,
) -> Result<(Vec<GroundRule>, BTreeSet<GroundLiteral>)> {
    let ctx = Context::new(&checked.program, &checked.sorts, &checked.decls);
    let name = (rule.kind == RuleKind::Cr).then_some((checked.fresh.rn.as_str(), cr_index));
    ground_with(&ctx, rule, name, limits)
}

fn ground_with(
    ctx: &Context<'_>,
    rule: &Rule,
    name: Option<(&str, u64)>,
    limits: &Limits,
) -> Result<(Vec<GroundRule>, BTreeSet<GroundLiteral>)> {
    let cands = ctx.candidates(rule).map_err(|d| Error::Check(vec![d]))?;
    let total = cands.iter().try_fold(1u64, |acc, (_, vals)| acc.checked_mul(vals.len() as u64)).unwrap_or(u64::MAX);
    if total > limits.substitution_cap {
        return Err(Error::Capacity(format!(
            "rule at {} has {total} candidate substitutions (cap {})",
            rule.span.start, limits.substitution_cap
        )));
    }
    let mut out = Vec::new();
    let mut facts = BTreeSet::new();
    if total == 0 {
        return Ok((out, facts));
    }
    let mut seen = HashSet::new();
    let mut idx = vec![0usize; cands.len()];
    let mut used = Vec::new();
    loop {
        let s: Subst = cands.iter().zip(&idx).map(|((v, vals), &i)| (v.clone(), vals[i].clone())).collect();
        used.clear();
        if let Some(mut g) = ctx.instance(rule, &s, &mut used) {
            if let Some((rn, i)) = name {
                let mut args = vec![Term::Nat(i)];
                args.extend(cands.iter().map(|(v, _)| s[v].clone()));
                g.name = Some(Term::func(rn, args));
            }
            if seen.insert((g.head.clone(), g.pos.clone(), g.neg.clone())) {
                facts.extend(used.drain(..));
                out.push(g);
            }
        }
        // odometer, first position fastest
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok((out, facts));
            }
            idx[k] += 1;
            if idx[k] < cands[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Grounds all program rules. Consistency-restoring instances are named
/// `rn(i, t1, ..., tn)` where `i` is the 1-based position of the rule among
/// the consistency-restoring rules and `t1..tn` are the values of its
/// variables in name order.
pub fn ground_program(checked: &CheckedProgram, limits: &Limits) -> Result<GroundProgram> {
    let ctx = Context::new(&checked.program, &checked.sorts, &checked.decls);
    let mut gp = GroundProgram::default();
    let mut cr_index = 0u64;
    for rule in &checked.program.rules {
        let name = if rule.kind == RuleKind::Cr {
            cr_index += 1;
            Some((checked.fresh.rn.as_str(), cr_index))
        } else {
            None
        };
        let (instances, facts) = ground_with(&ctx, rule, name, limits)?;
        gp.sort_facts.extend(facts);
        if name.is_some() {
            gp.cr.extend(instances);
        } else {
            gp.regular.extend(instances);
        }
    }
    Ok(gp)
}
