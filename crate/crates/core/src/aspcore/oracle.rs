//! Brute-force reference: enumerate every consistent set of head literals
//! and keep those that are minimal models of their reduct.
//!
//! Exponential by design; only for cross-checking on small programs.

use std::collections::BTreeMap;

use crate::ground::{AnswerSet, GroundLiteral, GroundRule, WeakConstraint};

pub const MAX_LITERALS: usize = 20;

struct Masks {
    head: u32,
    pos: u32,
    neg: u32,
}

fn closed(rules: &[Masks], set: u32) -> bool {
    rules.iter().all(|r| r.pos & !set != 0 || r.neg & set != 0 || r.head & set != 0)
}

/// All answer sets, ordered by cardinality then literal order. `None` if the
/// program has more than [`MAX_LITERALS`] head literals.
pub fn answer_sets(rules: &[GroundRule]) -> Option<Vec<AnswerSet>> {
    let mut lits: Vec<&GroundLiteral> = rules.iter().flat_map(|r| &r.head).collect();
    lits.sort();
    lits.dedup();
    if lits.len() > MAX_LITERALS {
        return None;
    }
    let index: BTreeMap<&GroundLiteral, u32> = lits.iter().enumerate().map(|(i, l)| (*l, 1u32 << i)).collect();
    let mut clash = Vec::new();
    for (l, bit) in &index {
        if let Some(other) = index.get(&l.complement()) {
            clash.push(bit | other);
        }
    }
    let masks: Vec<Masks> = rules
        .iter()
        .map(|r| {
            let bits = |ls: &[GroundLiteral], missing: u32| {
                ls.iter().fold(0, |acc, l| acc | index.get(l).copied().unwrap_or(missing))
            };
            // a positive body literal that heads nothing can never hold
            Masks { head: bits(&r.head, 0), pos: bits(&r.pos, 1 << 31), neg: bits(&r.neg, 0) }
        })
        .collect();

    let mut out = Vec::new();
    for m in 0..(1u64 << lits.len()) {
        let m = m as u32;
        if clash.iter().any(|c| m & c == *c) || !closed(&masks, m) {
            continue;
        }
        let reduct: Vec<Masks> =
            masks.iter().filter(|r| r.neg & m == 0).map(|r| Masks { head: r.head, pos: r.pos, neg: 0 }).collect();
        let minimal = if reduct.iter().all(|r| r.head.count_ones() <= 1) {
            least(&reduct) == m
        } else {
            no_closed_submask(&reduct, m)
        };
        if minimal {
            out.push(lits.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, l)| (*l).clone()).collect());
        }
    }
    out.sort_by(|a: &AnswerSet, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Some(out)
}

fn least(rules: &[Masks]) -> u32 {
    let mut m = 0;
    loop {
        let next = rules.iter().filter(|r| r.pos & !m == 0).fold(m, |acc, r| acc | r.head);
        if next == m {
            return m;
        }
        m = next;
    }
}

fn no_closed_submask(reduct: &[Masks], m: u32) -> bool {
    let mut sub = m;
    while sub != 0 {
        sub = (sub - 1) & m;
        if closed(reduct, sub) {
            return false;
        }
    }
    true
}

/// Answer sets violating the fewest weak constraints.
pub fn answer_sets_weak(rules: &[GroundRule], weaks: &[WeakConstraint]) -> Option<Vec<AnswerSet>> {
    let all = answer_sets(rules)?;
    let best = all.iter().map(|a| super::violations(weaks, a)).min();
    Some(all.into_iter().filter(|a| Some(super::violations(weaks, a)) == best).collect())
}
