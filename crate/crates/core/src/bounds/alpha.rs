//! Exact maximum independent set by branch and bound.
//!
//! Branches on the vertex of largest degree in the candidate set (take it,
//! or drop it) and prunes with a greedy clique cover of the candidates.
//! Candidates with no neighbours left are taken outright.

use crate::error::{Error, Result};
use crate::graph::{BitGraph, BitSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for AlphaBudget {
    fn default() -> Self {
        AlphaBudget {
            max_vertices: 2000,
            max_nodes: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    pub size: usize,
    /// A maximum independent set, ascending.
    pub witness: Vec<usize>,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

/// Number of cliques in a first-fit clique cover of `cand`.
fn cover_bound(g: &BitGraph, cand: &BitSet) -> usize {
    let mut rest = cand.clone();
    let mut count = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut common = g.row(v).clone();
        common.intersect_with(&rest);
        while let Some(x) = common.first() {
            rest.remove(x);
            common.intersect_with(g.row(x));
        }
        count += 1;
    }
    count
}

impl Search<'_> {
    fn run(&mut self, mut cand: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Budget(format!(
                "exact alpha exceeded {} search nodes",
                self.max_nodes
            )));
        }
        let pushed = self.current.len();

        // take isolated candidates, pick the branching vertex among the rest
        let mut branch: Option<(usize, usize)> = None;
        for v in cand.clone().iter() {
            let deg = self.g.row(v).intersection_count(&cand);
            if deg == 0 {
                self.current.push(v);
                cand.remove(v);
            } else if branch.is_none_or(|(_, d)| deg > d) {
                branch = Some((v, deg));
            }
        }

        let Some((v, _)) = branch else {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            self.current.truncate(pushed);
            return Ok(());
        };

        if self.current.len() + cover_bound(self.g, &cand) > self.best.len() {
            let mut with = cand.clone();
            with.difference_with(self.g.row(v));
            with.remove(v);
            self.current.push(v);
            let r = self.run(with);
            self.current.pop();
            r?;

            cand.remove(v);
            if self.current.len() + cover_bound(self.g, &cand) > self.best.len() {
                self.run(cand)?;
            }
        }
        self.current.truncate(pushed);
        Ok(())
    }
}

pub fn exact_alpha(g: &BitGraph, budget: AlphaBudget) -> Result<AlphaResult> {
    if g.order() > budget.max_vertices {
        return Err(Error::Budget(format!(
            "graph has {} vertices, exact alpha limited to {}",
            g.order(),
            budget.max_vertices
        )));
    }
    let mut search = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    search.run(BitSet::full(g.order()))?;
    let mut witness = search.best;
    witness.sort_unstable();
    debug_assert!(g.is_independent(&witness));
    Ok(AlphaResult {
        size: witness.len(),
        witness,
        nodes: search.nodes,
    })
}
