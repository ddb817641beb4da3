//! Branch-and-propagate search for answer sets of ground regular programs.
//!
//! Literals are treated as atoms; `p` and `-p` may not both hold. Only
//! literals occurring in some head can be true. Each node propagates rule
//! satisfaction, supportedness and consistency, and every total assignment
//! is checked for minimality against the reduct.

use std::collections::BTreeMap;

use super::sat;
use crate::diag::{Error, Result};
use crate::ground::{AnswerSet, GroundLiteral, GroundRule};

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const OPEN: i8 = 0;

#[derive(Clone, Debug)]
struct IRule {
    head: Vec<usize>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

pub struct Engine {
    lits: Vec<GroundLiteral>,
    rules: Vec<IRule>,
    head_of: Vec<Vec<usize>>,
    complement: Vec<Option<usize>>,
    node_cap: u64,
    nodes: u64,
}

/// Conflict marker for propagation.
struct Conflict;

fn assign(v: &mut [i8], a: usize, val: i8, changed: &mut bool) -> std::result::Result<(), Conflict> {
    match v[a] {
        OPEN => {
            v[a] = val;
            *changed = true;
            Ok(())
        }
        x if x == val => Ok(()),
        _ => Err(Conflict),
    }
}

impl Engine {
    pub fn new(rules: &[GroundRule], node_cap: u64) -> Self {
        let mut heads: Vec<GroundLiteral> = rules.iter().flat_map(|r| r.head.iter().cloned()).collect();
        heads.sort();
        heads.dedup();
        let index: BTreeMap<&GroundLiteral, usize> = heads.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut irules = Vec::new();
        for r in rules {
            let Some(pos) = r.pos.iter().map(|l| index.get(l).copied()).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let neg = r.neg.iter().filter_map(|l| index.get(l).copied()).collect();
            let head = r.head.iter().map(|l| index[l]).collect();
            irules.push(IRule { head, pos, neg });
        }
        let mut head_of = vec![Vec::new(); heads.len()];
        for (ri, r) in irules.iter().enumerate() {
            for &h in &r.head {
                if !head_of[h].contains(&ri) {
                    head_of[h].push(ri);
                }
            }
        }
        let complement = heads.iter().map(|l| index.get(&l.complement()).copied()).collect();
        drop(index);
        Self { lits: heads, rules: irules, head_of, complement, node_cap, nodes: 0 }
    }

    fn body_false(&self, r: &IRule, v: &[i8]) -> bool {
        r.pos.iter().any(|&a| v[a] == FALSE) || r.neg.iter().any(|&a| v[a] == TRUE)
    }

    fn propagate(&self, v: &mut [i8]) -> std::result::Result<(), Conflict> {
        loop {
            let mut changed = false;
            for r in &self.rules {
                if self.body_false(r, v) {
                    continue;
                }
                let open_body: Vec<(usize, i8)> = r
                    .pos
                    .iter()
                    .filter(|&&a| v[a] == OPEN)
                    .map(|&a| (a, FALSE))
                    .chain(r.neg.iter().filter(|&&a| v[a] == OPEN).map(|&a| (a, TRUE)))
                    .collect();
                if r.head.iter().any(|&h| v[h] == TRUE) {
                    continue;
                }
                let open_head: Vec<usize> = r.head.iter().copied().filter(|&h| v[h] == OPEN).collect();
                match (open_body.len(), open_head.len()) {
                    (0, 0) => return Err(Conflict),
                    (0, 1) => assign(v, open_head[0], TRUE, &mut changed)?,
                    (1, 0) => assign(v, open_body[0].0, open_body[0].1, &mut changed)?,
                    _ => {}
                }
            }
            for a in 0..self.lits.len() {
                if v[a] == FALSE {
                    continue;
                }
                if v[a] == TRUE {
                    if let Some(c) = self.complement[a] {
                        assign(v, c, FALSE, &mut changed)?;
                    }
                }
                let mut supporters = self.head_of[a]
                    .iter()
                    .map(|&ri| &self.rules[ri])
                    .filter(|r| !self.body_false(r, v) && !r.head.iter().any(|&h| h != a && v[h] == TRUE));
                let first = supporters.next();
                let second = supporters.next();
                match (first, second) {
                    (None, _) => assign(v, a, FALSE, &mut changed)?,
                    (Some(r), None) if v[a] == TRUE => {
                        for &p in &r.pos {
                            assign(v, p, TRUE, &mut changed)?;
                        }
                        for &n in &r.neg {
                            assign(v, n, FALSE, &mut changed)?;
                        }
                        for &h in &r.head {
                            if h != a {
                                assign(v, h, FALSE, &mut changed)?;
                            }
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Whether the total assignment `v` is an answer set.
    fn stable(&self, v: &[i8]) -> bool {
        let in_m = |a: usize| v[a] == TRUE;
        let mut relevant: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for r in &self.rules {
            if r.neg.iter().any(|&a| in_m(a)) || !r.pos.iter().all(|&a| in_m(a)) {
                continue;
            }
            let h: Vec<usize> = r.head.iter().copied().filter(|&a| in_m(a)).collect();
            if h.is_empty() {
                return false;
            }
            relevant.push((r.pos.clone(), h));
        }
        if relevant.iter().all(|(_, h)| h.len() == 1) {
            let mut least = vec![false; v.len()];
            loop {
                let mut changed = false;
                for (pos, h) in &relevant {
                    if !least[h[0]] && pos.iter().all(|&p| least[p]) {
                        least[h[0]] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            return (0..v.len()).all(|a| least[a] == in_m(a));
        }
        let members: Vec<usize> = (0..v.len()).filter(|&a| in_m(a)).collect();
        let local = |a: usize| members.binary_search(&a).unwrap();
        let local_rules: Vec<(Vec<usize>, Vec<usize>)> = relevant
            .iter()
            .map(|(p, h)| (p.iter().map(|&a| local(a)).collect(), h.iter().map(|&a| local(a)).collect()))
            .collect();
        !sat::proper_submodel(members.len(), &local_rules)
    }

    fn to_set(&self, v: &[i8]) -> AnswerSet {
        (0..v.len()).filter(|&a| v[a] == TRUE).map(|a| self.lits[a].clone()).collect()
    }

    fn search(&mut self, mut v: Vec<i8>, out: &mut Vec<AnswerSet>, stop_at_first: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::Capacity(format!("answer-set search exceeded {} nodes", self.node_cap)));
        }
        if self.propagate(&mut v).is_err() {
            return Ok(());
        }
        match v.iter().position(|&x| x == OPEN) {
            None => {
                if self.stable(&v) {
                    out.push(self.to_set(&v));
                }
                Ok(())
            }
            Some(a) => {
                for val in [FALSE, TRUE] {
                    if stop_at_first && !out.is_empty() {
                        break;
                    }
                    let mut next = v.clone();
                    next[a] = val;
                    self.search(next, out, stop_at_first)?;
                }
                Ok(())
            }
        }
    }

    /// Every answer set, in search order.
    pub fn all(&mut self) -> Result<Vec<AnswerSet>> {
        let mut out = Vec::new();
        self.search(vec![OPEN; self.lits.len()], &mut out, false)?;
        Ok(out)
    }

    pub fn first(&mut self) -> Result<Option<AnswerSet>> {
        let mut out = Vec::new();
        self.search(vec![OPEN; self.lits.len()], &mut out, true)?;
        Ok(out.into_iter().next())
    }

    /// Nodes explored so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}
