//! Compilation to a weak-constraint counterpart and recovery of answer sets.
//!
//! Every rule gets the sort atoms of its declared atoms appended to its body.
//! A consistency-restoring rule `l :+ body.` named `N` becomes
//!
//! ```text
//! appl(N) v -appl(N) :- body.
//! :~ appl(N), body.
//! l :- appl(N), body.
//! ```

pub mod dlv;
pub mod external;

use std::collections::BTreeSet;

use crate::aspcore;
use crate::diag::Result;
use crate::ground::AnswerSet;
use crate::sortcheck::NAT;
use crate::syntax::{parse_rules_source, Atom, BodyLit, Literal, Program, Rule, RuleKind, Term};
use crate::{CheckedProgram, Limits};

/// Symbols the counterpart introduces, chosen not to clash with the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshNames {
    pub appl: String,
    pub rn: String,
}

fn collect_term_symbols(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::Func(f, args) => {
            out.insert(f.clone());
            args.iter().for_each(|a| collect_term_symbols(a, out));
        }
        Term::Arith(_, l, r) => {
            collect_term_symbols(l, out);
            collect_term_symbols(r, out);
        }
        Term::Var(_) | Term::Nat(_) => {}
    }
}

fn fresh(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_owned();
    }
    (1..).map(|i| format!("{base}{i}")).find(|s| !used.contains(s)).unwrap()
}

impl FreshNames {
    pub fn for_program(program: &Program) -> Self {
        let mut used = BTreeSet::new();
        for rule in program.sort_rules.iter().chain(&program.rules) {
            for lit in rule.literals() {
                if let Some((name, _)) = lit.atom.pred_name() {
                    used.insert(name.to_owned());
                }
                for t in lit.atom.terms() {
                    collect_term_symbols(t, &mut used);
                }
            }
        }
        for d in &program.declarations {
            used.insert(d.pred.clone());
            used.extend(d.sorts.iter().cloned());
        }
        Self { appl: fresh("appl", &used), rn: fresh("rn", &used) }
    }
}

/// `rn(i, X1, ..., Xn)` over the rule's distinct variables in order of first
/// occurrence, head first.
pub fn name_cr_rule(rule: &Rule, index: u64, rn: &str) -> Term {
    let mut args = vec![Term::Nat(index)];
    args.extend(rule.vars().iter().map(|v| Term::var(v)));
    Term::func(rn, args)
}

/// The translated program: the sort definition followed by the transformed
/// rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterpartProgram {
    pub rules: Vec<Rule>,
    pub appl: String,
}

/// Sort atoms `s_j(t_j)` for the declared atoms of `rule`, head first, then
/// body in order, arguments left to right; duplicates and atoms already in
/// the positive body are skipped.
pub fn sort_atoms(rule: &Rule, checked: &CheckedProgram) -> Vec<Literal> {
    let present: BTreeSet<&Literal> = rule.body.iter().filter(|b| !b.naf).map(|b| &b.lit).collect();
    let mut out: Vec<Literal> = Vec::new();
    for lit in rule.literals() {
        let Atom::Pred { name, args } = &lit.atom else { continue };
        let Some(sorts) = checked.decls.get(name, args.len()) else { continue };
        for (t, s) in args.iter().zip(sorts) {
            if s == NAT {
                continue;
            }
            let atom = Literal::pos(Atom::pred(s, vec![t.clone()]));
            if !present.contains(&atom) && !out.contains(&atom) {
                out.push(atom);
            }
        }
    }
    out
}

pub fn translate(checked: &CheckedProgram) -> CounterpartProgram {
    let appl = checked.fresh.appl.as_str();
    let mut rules: Vec<Rule> = checked.program.sort_rules.clone();
    let mut cr_index = 0;
    for rule in &checked.program.rules {
        let mut body = rule.body.clone();
        body.extend(sort_atoms(rule, checked).into_iter().map(BodyLit::pos));
        if rule.kind != RuleKind::Cr {
            rules.push(Rule::new(rule.kind, rule.head.clone(), body));
            continue;
        }
        cr_index += 1;
        let name = name_cr_rule(rule, cr_index, &checked.fresh.rn);
        let appl_atom = Atom::pred(appl, vec![name]);
        let with_appl: Vec<BodyLit> =
            std::iter::once(BodyLit::pos(Literal::pos(appl_atom.clone()))).chain(body.iter().cloned()).collect();
        rules.push(Rule::new(
            RuleKind::Regular,
            vec![Literal::pos(appl_atom.clone()), Literal::new(true, appl_atom)],
            body,
        ));
        rules.push(Rule::new(RuleKind::Weak, vec![], with_appl.clone()));
        rules.push(Rule::new(RuleKind::Regular, rule.head.clone(), with_appl));
    }
    CounterpartProgram { rules, appl: appl.to_owned() }
}

/// One rule per line.
pub fn emit_dlv_text(counterpart: &CounterpartProgram) -> String {
    counterpart.rules.iter().map(|r| format!("{r}\n")).collect()
}

/// Drops every literal of predicate `appl`, either sign.
pub fn strip_appl(set: &AnswerSet, appl: &str) -> AnswerSet {
    set.iter().filter(|l| l.pred != appl).cloned().collect()
}

/// Translates, emits, re-parses and grounds the counterpart, then returns its
/// weak-minimal answer sets with `appl` literals removed, ordered by
/// cardinality then literal order. These include the atoms of the sort
/// definition.
pub fn solve_counterpart(checked: &CheckedProgram, limits: &Limits) -> Result<Vec<AnswerSet>> {
    let counterpart = translate(checked);
    let rules = parse_rules_source(&emit_dlv_text(&counterpart))?;
    let ground = dlv::ground_counterpart(&rules, limits.atom_cap)?;
    let sets = aspcore::answer_sets_weak(&ground.rules, &ground.weaks, 0, limits.candidate_cap)?;
    let mut out: Vec<AnswerSet> = sets.iter().map(|a| strip_appl(a, &counterpart.appl)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundLiteral;
    use crate::load;
    use crate::syntax::tokenize;

    fn checked(src: &str) -> CheckedProgram {
        load(src, &Limits::default()).unwrap()
    }

    fn tokens(text: &str) -> Vec<String> {
        tokenize(text).unwrap().iter().map(|t| t.kind.to_string()).collect()
    }

    #[test]
    fn rule_names() {
        let r = &parse_rules_source("p(X,Y) :- q(Z,X,Y).").unwrap()[0];
        assert_eq!(name_cr_rule(r, 1, "rn").to_string(), "rn(1,X,Y,Z)");
        let r = &parse_rules_source("q(X).").unwrap()[0];
        assert_eq!(name_cr_rule(r, 1, "rn").to_string(), "rn(1,X)");
        let r = &parse_rules_source("q.").unwrap()[0];
        assert_eq!(name_cr_rule(r, 7, "rn").to_string(), "rn(7)");
    }

    #[test]
    fn weak_example_matches_listing() {
        let c = checked(include_str!("../../tests/corpus/weak_example.sp"));
        let text = emit_dlv_text(&translate(&c));
        let golden = include_str!("../../tests/corpus/weak_example.dlv.golden");
        assert_eq!(tokens(&text), tokens(golden), "{text}");
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn no_cr_rules_no_appl() {
        let c = checked(include_str!("../../tests/corpus/p1.sp"));
        let text = emit_dlv_text(&translate(&c));
        assert!(!text.contains("appl") && !text.contains(":~"));
        assert!(text.lines().any(|l| l == "q(X,Y) :- p(X), r(X,Y), s1(X), s3(Y)."), "{text}");
        assert!(text.starts_with("s1(1).\ns1(2).\ns2(X+1) :- s1(X).\n"));
    }

    #[test]
    fn ground_cr_rule_triple() {
        let c = checked("sorts definition\ns(a).\npredicates declaration\nq()\nprogram rules\nq :+ .\n");
        let text = emit_dlv_text(&translate(&c));
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(lines, ["appl(rn(1)) v -appl(rn(1)).", ":~ appl(rn(1)).", "q :- appl(rn(1))."]);
    }

    #[test]
    fn clashing_symbols_get_fresh_names() {
        let c = checked("sorts definition\ns(appl).\ns(rn).\npredicates declaration\nq(s)\nprogram rules\nq(X) :+ .\n");
        assert_eq!(c.fresh, FreshNames { appl: "appl1".into(), rn: "rn1".into() });
        assert!(emit_dlv_text(&translate(&c)).contains("appl1(rn1(1,X))"));
    }

    #[test]
    fn strip() {
        let appl = |neg, i| GroundLiteral::new(neg, "appl", vec![Term::func("rn", vec![Term::Nat(i)])]);
        let p = GroundLiteral::atom("p", vec![]);
        let set: AnswerSet = [appl(true, 2), p.clone(), appl(false, 1)].into_iter().collect();
        assert_eq!(strip_appl(&set, "appl"), [p.clone()].into_iter().collect());
        let plain: AnswerSet = [p].into_iter().collect();
        assert_eq!(strip_appl(&plain, "appl"), plain);
    }

    #[test]
    fn weak_example_counterpart_answer_set() {
        let c = checked(include_str!("../../tests/corpus/weak_example.sp"));
        let sets = solve_counterpart(&c, &Limits::default()).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(crate::ground::format_literal_set(&sets[0]), "{-p(a), q(a), s(a)}");
    }

    #[test]
    fn empty_counterpart() {
        let c = CounterpartProgram { rules: vec![], appl: "appl".into() };
        assert_eq!(emit_dlv_text(&c), "");
    }
}
