//! Abductive supports and answer sets of programs with consistency-restoring
//! rules.
//!
//! A support is a set X of ground cr-rules such that the regular rules plus
//! X read as regular rules have an answer set, and no smaller set does.

use crate::aspcore;
use crate::diag::Result;
use crate::ground::{AnswerSet, GroundProgram, GroundRule};
use crate::syntax::{RuleKind, Term};

/// The regular rule obtained by reading `:+` as `:-`.
pub fn alpha(rule: &GroundRule) -> GroundRule {
    GroundRule { kind: RuleKind::Regular, ..rule.clone() }
}

pub fn alpha_all<'a>(rules: impl IntoIterator<Item = &'a GroundRule>) -> Vec<GroundRule> {
    rules.into_iter().map(alpha).collect()
}

/// Indices into the program's cr-rules.
pub type Support = Vec<usize>;

/// Calls `f` on every `k`-subset of `0..n` in colex order until it returns
/// `false`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<bool>) -> Result<()> {
    if k > n {
        return Ok(());
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if !f(&c)? {
            return Ok(());
        }
        // next combination in colex order
        let mut j = 0;
        while j < k {
            let limit = if j + 1 == k { n } else { c[j + 1] };
            if c[j] + 1 < limit {
                break;
            }
            j += 1;
        }
        if j == k {
            return Ok(());
        }
        c[j] += 1;
        for (t, slot) in c.iter_mut().enumerate().take(j) {
            *slot = t;
        }
    }
}

fn with_support(ground: &GroundProgram, support: &[usize]) -> Vec<GroundRule> {
    let mut rules = ground.regular.clone();
    rules.extend(support.iter().map(|&i| alpha(&ground.cr[i])));
    rules
}

/// All abductive supports: every consistent subset of the smallest
/// consistent cardinality, in colex order. Empty if no subset restores
/// consistency.
pub fn find_supports(ground: &GroundProgram, node_cap: u64) -> Result<Vec<Support>> {
    let n = ground.cr.len();
    for k in 0..=n {
        let mut found = Vec::new();
        for_each_subset(n, k, |x| {
            if aspcore::is_consistent_program(&with_support(ground, x), node_cap)? {
                found.push(x.to_vec());
            }
            Ok(true)
        })?;
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(Vec::new())
}

/// Names `rn(i, ...)` of the rules in a support.
pub fn support_names(ground: &GroundProgram, support: &[usize]) -> Vec<Term> {
    support.iter().filter_map(|&i| ground.cr[i].name.clone()).collect()
}

/// An answer set with the support that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub answer_set: AnswerSet,
    pub support: Support,
}

/// Answer sets of the ground program, each with the first support (in
/// colex order) witnessing it. Sort-definition atoms are not included.
/// `limit == 0` means all.
pub fn solve(ground: &GroundProgram, limit: usize, node_cap: u64) -> Result<Vec<Solution>> {
    let supports = find_supports(ground, node_cap)?;
    let mut out: Vec<Solution> = Vec::new();
    for x in supports {
        for a in aspcore::answer_sets(&with_support(ground, &x), 0, node_cap)? {
            if !out.iter().any(|s| s.answer_set == a) {
                out.push(Solution { answer_set: a, support: x.clone() });
            }
        }
    }
    out.sort_by(|a, b| a.answer_set.len().cmp(&b.answer_set.len()).then_with(|| a.answer_set.cmp(&b.answer_set)));
    if limit > 0 {
        out.truncate(limit);
    }
    Ok(out)
}

pub fn sparc_answer_sets(ground: &GroundProgram, limit: usize, node_cap: u64) -> Result<Vec<AnswerSet>> {
    Ok(solve(ground, limit, node_cap)?.into_iter().map(|s| s.answer_set).collect())
}

/// Re-checks a solution: the answer set must be an answer set of the
/// regular rules plus its support.
pub fn verify(ground: &GroundProgram, sol: &Solution) -> bool {
    aspcore::is_answer_set(&with_support(ground, &sol.support), &sol.answer_set)
}
