//! A small DPLL procedure used to decide minimality for disjunctive programs.

use std::collections::BTreeMap;

use crate::ground::{AnswerSet, GroundLiteral, GroundRule};

type Clause = Vec<(usize, bool)>;

fn dpll(assign: &mut Vec<Option<bool>>, clauses: &[Clause]) -> bool {
    let mut trail = Vec::new();
    let ok = loop {
        let mut unit = None;
        let mut conflict = false;
        for c in clauses {
            let mut open = None;
            let mut open_count = 0;
            let mut sat = false;
            for &(v, pol) in c {
                match assign[v] {
                    Some(b) if b == pol => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open_count += 1;
                        open = Some((v, pol));
                    }
                }
            }
            if sat {
                continue;
            }
            match open_count {
                0 => {
                    conflict = true;
                    break;
                }
                1 => {
                    unit = open;
                    break;
                }
                _ => {}
            }
        }
        if conflict {
            break false;
        }
        match unit {
            Some((v, pol)) => {
                assign[v] = Some(pol);
                trail.push(v);
            }
            None => break true,
        }
    };
    let result = ok
        && match assign.iter().position(Option::is_none) {
            None => true,
            Some(v) => [false, true].into_iter().any(|b| {
                assign[v] = Some(b);
                let r = dpll(assign, clauses);
                assign[v] = None;
                r
            }),
        };
    for v in trail {
        assign[v] = None;
    }
    result
}

/// Whether some proper subset of `0..n` satisfies every `(pos, head)` rule,
/// i.e. contains a head variable whenever it contains all `pos` variables.
pub(crate) fn proper_submodel(n: usize, rules: &[(Vec<usize>, Vec<usize>)]) -> bool {
    let mut clauses: Vec<Clause> = rules
        .iter()
        .map(|(pos, head)| pos.iter().map(|&p| (p, false)).chain(head.iter().map(|&h| (h, true))).collect())
        .collect();
    clauses.push((0..n).map(|i| (i, false)).collect());
    dpll(&mut vec![None; n], &clauses)
}

/// Whether a proper subset of `m` is closed under the negation-free `rules`.
pub(crate) fn has_smaller_model(rules: &[GroundRule], m: &AnswerSet) -> bool {
    let index: BTreeMap<&GroundLiteral, usize> = m.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let relevant: Vec<(Vec<usize>, Vec<usize>)> = rules
        .iter()
        .filter_map(|r| {
            let pos = r.pos.iter().map(|l| index.get(l).copied()).collect::<Option<Vec<_>>>()?;
            Some((pos, r.head.iter().filter_map(|l| index.get(l).copied()).collect()))
        })
        .collect();
    proper_submodel(m.len(), &relevant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submodels() {
        // a v b. with M = {a, b}
        assert!(proper_submodel(2, &[(vec![], vec![0, 1])]));
        // a v b. a :- b. b :- a.
        assert!(!proper_submodel(2, &[(vec![], vec![0, 1]), (vec![1], vec![0]), (vec![0], vec![1])]));
        assert!(!proper_submodel(0, &[]));
    }
}
