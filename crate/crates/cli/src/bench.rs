//! Random shortest-path instances and their breadth-first-search oracle.
//!
//! The encoding makes every edge a consistency-restoring choice, so a
//! minimal abductive support is exactly the edge set of a shortest path.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sparc_core::ground::AnswerSet;
use sparc_core::syntax::Term;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchInstance {
    pub vertices: usize,
    pub density: f64,
    pub seed: u64,
    pub edges: Vec<(usize, usize)>,
    pub source: usize,
    pub target: usize,
    /// Breadth-first-search distance from source to target.
    pub distance: usize,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BenchError {
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("density must lie in (0, 1], got {0}")]
    Density(f64),
    #[error("density {density} gives no edge on {vertices} vertices")]
    NoEdges { vertices: usize, density: f64 },
}

/// Distances from `from`; `None` for unreachable vertices.
pub fn bfs(n: usize, edges: &[(usize, usize)], from: usize) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    let mut dist = vec![None; n];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A simple digraph with `round(d * n * (n - 1))` edges drawn uniformly
/// from the seed, and the first vertex pair (in lexicographic order) at the
/// largest finite distance.
pub fn gen_shortest_path(n: usize, density: f64, seed: u64) -> Result<BenchInstance, BenchError> {
    if n < 2 {
        return Err(BenchError::TooFewVertices(n));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(BenchError::Density(density));
    }
    let pairs = n * (n - 1);
    let e = (density * pairs as f64).round() as usize;
    if e == 0 {
        return Err(BenchError::NoEdges { vertices: n, density });
    }
    let mut all: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = all[..e].to_vec();
    edges.sort_unstable();

    // at least one edge exists, so some pair is at distance >= 1
    let mut best = (0, 0, 0);
    for u in 0..n {
        for (v, d) in bfs(n, &edges, u).into_iter().enumerate() {
            if let Some(d) = d {
                if d > best.2 {
                    best = (u, v, d);
                }
            }
        }
    }
    Ok(BenchInstance { vertices: n, density, seed, edges, source: best.0, target: best.1, distance: best.2 })
}

impl BenchInstance {
    /// The program text of the instance.
    pub fn program(&self) -> String {
        let mut s = String::from("sorts definition\n");
        for v in 0..self.vertices {
            let _ = writeln!(s, "vertex({v}).");
        }
        for (u, v) in &self.edges {
            let _ = writeln!(s, "edge({u},{v}).");
        }
        s.push_str("predicates declaration\nin(vertex,vertex)\nreach(vertex)\nprogram rules\n");
        s.push_str("in(X,Y) :+ edge(X,Y).\n");
        let _ = writeln!(s, "reach({}).", self.source);
        s.push_str("reach(Y) :- reach(X), in(X,Y).\n");
        let _ = writeln!(s, ":- not reach({}).", self.target);
        s
    }

    /// The chosen edges of an answer set, checked to form a simple path
    /// from source to target. Returns its length.
    pub fn path_length(&self, answer: &AnswerSet) -> Option<usize> {
        let chosen: BTreeSet<(usize, usize)> = answer
            .iter()
            .filter(|l| l.pred == "in" && !l.negated)
            .map(|l| match l.args.as_slice() {
                [Term::Nat(u), Term::Nat(v)] => Some((*u as usize, *v as usize)),
                _ => None,
            })
            .collect::<Option<_>>()?;
        if !chosen.iter().all(|e| self.edges.binary_search(e).is_ok()) {
            return None;
        }
        let mut at = self.source;
        let mut visited = BTreeSet::from([at]);
        let mut steps = 0;
        while at != self.target {
            let mut next = chosen.iter().filter(|(u, _)| *u == at).map(|(_, v)| *v);
            let v = next.next()?;
            if next.next().is_some() || !visited.insert(v) {
                return None;
            }
            at = v;
            steps += 1;
        }
        (steps == chosen.len()).then_some(steps)
    }
}
