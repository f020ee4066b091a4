//! Maximum independent set by branch and bound.
//!
//! The search is a maximum-clique search on the complement graph with a
//! greedy colouring bound. A colour class in the complement is a clique of
//! the original graph, and an independent set meets each clique at most once,
//! so the number of classes covering the candidates bounds what they can add.

use crate::error::{Error, Result};
use crate::lattice_graph::LatticeGraph;

use super::{min_degree_greedy_is, Algorithm, IndependentSet};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

struct Search<'a> {
    /// Closed neighbourhoods in search order: `closed[i]` contains `i` and its neighbours.
    closed: &'a [BitSet],
    /// Open neighbourhoods in search order.
    open: &'a [BitSet],
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// Candidates sorted by greedy clique-cover class, with the class counts.
    fn cover(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<BitSet> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let len = self.open.len();
        for v in candidates.iter() {
            // v may join a class if it is adjacent to every member
            match classes.iter().position(|c| c.is_subset_of(&self.open[v])) {
                Some(k) => {
                    classes[k].insert(v);
                    members[k].push(v);
                }
                None => {
                    let mut c = BitSet::empty(len);
                    c.insert(v);
                    classes.push(c);
                    members.push(vec![v]);
                }
            }
        }
        let mut order = Vec::new();
        let mut bound = Vec::new();
        for (k, m) in members.into_iter().enumerate() {
            for v in m {
                order.push(v);
                bound.push(k + 1);
            }
        }
        (order, bound)
    }

    fn expand(&mut self, mut candidates: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::SearchBudget(self.limit));
        }
        let (order, bound) = self.cover(&candidates);
        for i in (0..order.len()).rev() {
            if self.current.len() + bound[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            self.current.push(v);
            let next = candidates.and_not(&self.closed[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            candidates.remove(v);
        }
        Ok(())
    }
}

/// Degeneracy (smallest-last) order: low-degree vertices first.
fn degeneracy_order(g: &LatticeGraph) -> Vec<u32> {
    let len = g.vertex_count();
    let mut degree: Vec<usize> = (0..len as u32).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; len];
    let mut order = Vec::with_capacity(len);
    let mut heap: std::collections::BTreeSet<(usize, u32)> =
        (0..len as u32).map(|v| (degree[v as usize], v)).collect();
    while let Some((_, v)) = heap.pop_first() {
        removed[v as usize] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u as usize] {
                heap.remove(&(degree[u as usize], u));
                degree[u as usize] -= 1;
                heap.insert((degree[u as usize], u));
            }
        }
    }
    order
}

/// A maximum independent set, or [`Error::SearchBudget`] once `node_limit`
/// search nodes have been expanded.
pub fn exact_max_is(g: &LatticeGraph, node_limit: u64) -> Result<IndependentSet> {
    let len = g.vertex_count();
    let order = degeneracy_order(g);
    let mut position = vec![0usize; len];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut open = vec![BitSet::empty(len); len];
    for (i, &v) in order.iter().enumerate() {
        for &u in g.neighbors(v) {
            open[i].insert(position[u as usize]);
        }
    }
    let closed: Vec<BitSet> = open
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut c = b.clone();
            c.insert(i);
            c
        })
        .collect();

    let warm = min_degree_greedy_is(g);
    let mut search = Search {
        closed: &closed,
        open: &open,
        current: Vec::new(),
        best: warm.vertices().iter().map(|&v| position[v as usize]).collect(),
        nodes: 0,
        limit: node_limit,
    };
    if len > 0 {
        search.expand(BitSet::full(len))?;
    }
    debug_assert!(search.best.iter().all(|&i| !search.best.iter().any(|&j| open[i].contains(j))));
    let vertices = search.best.iter().map(|&i| order[i]).collect();
    IndependentSet::new(g, vertices, Algorithm::Exact)
}
