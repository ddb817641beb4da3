//! Answer sets of ground programs: reduct, answer-set test, enumeration and
//! cardinality minimization of violated weak constraints.

mod engine;
pub mod oracle;
mod sat;

use std::collections::BTreeSet;

use crate::diag::Result;
use crate::ground::{is_consistent, AnswerSet, GroundLiteral, GroundRule, WeakConstraint};

pub use engine::Engine;

pub const DEFAULT_NODE_CAP: u64 = 1 << 22;

/// The Gelfond-Lifschitz reduct of `rules` with respect to `candidate`.
pub fn reduct(rules: &[GroundRule], candidate: &AnswerSet) -> Vec<GroundRule> {
    rules
        .iter()
        .filter(|r| !r.neg.iter().any(|l| candidate.contains(l)))
        .map(|r| GroundRule { neg: Vec::new(), ..r.clone() })
        .collect()
}

/// Least set closed under a negation-free program whose heads have at most
/// one literal; headless rules are ignored.
pub fn least_model(rules: &[GroundRule]) -> AnswerSet {
    let mut m = AnswerSet::new();
    loop {
        let mut changed = false;
        for r in rules {
            if let [h] = r.head.as_slice() {
                if !m.contains(h) && r.pos.iter().all(|l| m.contains(l)) {
                    m.insert(h.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

fn closed_under(rules: &[GroundRule], set: &AnswerSet) -> bool {
    rules.iter().all(|r| {
        !(r.pos.iter().all(|l| set.contains(l)) && r.neg.iter().all(|l| !set.contains(l)))
            || r.head.iter().any(|l| set.contains(l))
    })
}

/// Whether `candidate` is an answer set of the regular ground `rules`:
/// consistent, closed under the reduct, and minimal among closed sets.
pub fn is_answer_set(rules: &[GroundRule], candidate: &AnswerSet) -> bool {
    if !is_consistent(candidate) {
        return false;
    }
    let red = reduct(rules, candidate);
    if !closed_under(&red, candidate) {
        return false;
    }
    if red.iter().all(|r| r.head.len() <= 1) {
        return &least_model(&red) == candidate;
    }
    let members: Vec<&GroundLiteral> = candidate.iter().collect();
    if members.len() <= 20 {
        let full = (1u32 << members.len()) - 1;
        return (0..full).all(|mask| {
            let sub: AnswerSet =
                members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| (*l).clone()).collect();
            !closed_under(&red, &sub)
        });
    }
    !sat::has_smaller_model(&red, candidate)
}

/// Answer sets of regular ground rules ordered by cardinality, then by
/// literal order. `limit == 0` means all.
pub fn answer_sets(rules: &[GroundRule], limit: usize, node_cap: u64) -> Result<Vec<AnswerSet>> {
    let mut all = Engine::new(rules, node_cap).all()?;
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if limit > 0 {
        all.truncate(limit);
    }
    Ok(all)
}

/// Whether the program has at least one answer set.
pub fn is_consistent_program(rules: &[GroundRule], node_cap: u64) -> Result<bool> {
    Ok(Engine::new(rules, node_cap).first()?.is_some())
}

pub fn violations(weaks: &[WeakConstraint], set: &AnswerSet) -> usize {
    weaks.iter().filter(|w| w.violated_by(set)).count()
}

/// Answer sets violating the fewest weak constraints.
pub fn answer_sets_weak(
    rules: &[GroundRule],
    weaks: &[WeakConstraint],
    limit: usize,
    node_cap: u64,
) -> Result<Vec<AnswerSet>> {
    let all = answer_sets(rules, 0, node_cap)?;
    let Some(best) = all.iter().map(|a| violations(weaks, a)).min() else {
        return Ok(all);
    };
    let mut out: Vec<AnswerSet> = all.into_iter().filter(|a| violations(weaks, a) == best).collect();
    if limit > 0 {
        out.truncate(limit);
    }
    Ok(out)
}

/// Literals occurring in some rule head.
pub fn head_literals(rules: &[GroundRule]) -> BTreeSet<GroundLiteral> {
    rules.iter().flat_map(|r| r.head.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    fn lit(s: &str) -> GroundLiteral {
        let (neg, rest) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
        let (pred, args) = match rest.split_once('(') {
            Some((p, a)) => (
                p,
                a.trim_end_matches(')')
                    .split(',')
                    .map(|x| match x.parse() {
                        Ok(n) => Term::Nat(n),
                        Err(_) => Term::constant(x),
                    })
                    .collect(),
            ),
            None => (rest, vec![]),
        };
        GroundLiteral::new(neg, pred, args)
    }

    fn rule(head: &[&str], pos: &[&str], neg: &[&str]) -> GroundRule {
        let v = |xs: &[&str]| xs.iter().map(|x| lit(x)).collect();
        GroundRule::regular(v(head), v(pos), v(neg))
    }

    fn set(xs: &[&str]) -> AnswerSet {
        xs.iter().map(|x| lit(x)).collect()
    }

    fn solve(rules: &[GroundRule]) -> Vec<AnswerSet> {
        answer_sets(rules, 0, DEFAULT_NODE_CAP).unwrap()
    }

    #[test]
    fn reduct_examples() {
        let r = vec![rule(&["p"], &[], &["q"])];
        assert_eq!(reduct(&r, &set(&["p"])), vec![rule(&["p"], &[], &[])]);
        assert!(reduct(&r, &set(&["q"])).is_empty());
        let r = vec![rule(&["p(a)"], &[], &["q(a)"]), rule(&["-p(a)"], &[], &[])];
        assert_eq!(reduct(&r, &set(&["-p(a)", "q(a)"])), vec![rule(&["-p(a)"], &[], &[])]);
    }

    #[test]
    fn answer_set_test() {
        let r = vec![rule(&["a", "b"], &[], &[])];
        assert!(!is_answer_set(&r, &set(&["a", "b"])));
        assert!(is_answer_set(&r, &set(&["a"])));
        assert!(!is_answer_set(&[rule(&["a"], &[], &[])], &AnswerSet::new()));
    }

    #[test]
    fn inconsistent_regular_part() {
        let r = vec![rule(&["p(a)"], &[], &["q(a)"]), rule(&["-p(a)"], &[], &[])];
        assert!(solve(&r).is_empty());
    }

    #[test]
    fn default_with_exception_atom() {
        let r = vec![rule(&["p(a)"], &["c(a)"], &["ab(a)", "-p(a)"]), rule(&["c(a)"], &[], &[])];
        assert_eq!(solve(&r), vec![set(&["c(a)", "p(a)"])]);
    }

    #[test]
    fn empty_program() {
        assert_eq!(solve(&[]), vec![AnswerSet::new()]);
    }

    #[test]
    fn even_loop_and_ordering() {
        let r = vec![rule(&["a"], &[], &["b"]), rule(&["b"], &[], &["a"]), rule(&["c"], &["a"], &[])];
        assert_eq!(solve(&r), vec![set(&["b"]), set(&["a", "c"])]);
        assert_eq!(answer_sets(&r, 1, DEFAULT_NODE_CAP).unwrap(), vec![set(&["b"])]);
    }

    #[test]
    fn odd_loop_has_no_answer_set() {
        assert!(solve(&[rule(&["a"], &[], &["a"])]).is_empty());
        assert!(!is_consistent_program(&[rule(&["a"], &[], &["a"])], DEFAULT_NODE_CAP).unwrap());
    }

    #[test]
    fn unsupported_loops_are_not_stable() {
        let r = vec![rule(&["a"], &["b"], &[]), rule(&["b"], &["a"], &[])];
        assert_eq!(solve(&r), vec![AnswerSet::new()]);
    }

    #[test]
    fn disjunctive_minimality() {
        let r = vec![rule(&["a", "b"], &[], &[]), rule(&["a"], &["b"], &[]), rule(&["b"], &["a"], &[])];
        assert_eq!(solve(&r), vec![set(&["a", "b"])]);
        let r = vec![rule(&["a", "b", "c"], &[], &[]), rule(&["a"], &["b"], &[])];
        assert_eq!(solve(&r), vec![set(&["a"]), set(&["c"])]);
    }

    #[test]
    fn constraints_prune() {
        let r = vec![rule(&["a", "b"], &[], &[]), rule(&[], &["a"], &[])];
        assert_eq!(solve(&r), vec![set(&["b"])]);
    }

    #[test]
    fn weak_minimization() {
        let r = vec![rule(&["a", "b"], &[], &[])];
        let w = vec![WeakConstraint { pos: vec![lit("a")], neg: vec![] }];
        assert_eq!(answer_sets_weak(&r, &w, 0, DEFAULT_NODE_CAP).unwrap(), vec![set(&["b"])]);
        assert_eq!(answer_sets_weak(&r, &[], 0, DEFAULT_NODE_CAP).unwrap(), solve(&r));
    }

    #[test]
    fn node_cap_is_a_capacity_error() {
        let rules: Vec<GroundRule> = (0..12)
            .flat_map(|i| {
                let (a, b) = (format!("a{i}"), format!("b{i}"));
                [rule(&[&a], &[], &[&b]), rule(&[&b], &[], &[&a])]
            })
            .collect();
        assert!(matches!(answer_sets(&rules, 0, 100), Err(crate::Error::Capacity(_))));
        assert_eq!(answer_sets(&rules, 0, DEFAULT_NODE_CAP).unwrap().len(), 1 << 12);
    }
}
