//! Exact injective chromatic index by DSATUR branch and bound on the
//! conflict graph.
//!
//! The same backtracking engine also serves the reduction engine, where some
//! conflict nodes are precolored and only a subset is free.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::conflict::{build_conflict_graph, Color, Coloring, ConflictGraph};
use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Color assignments tried.
    pub nodes: u64,
    #[serde(serialize_with = "micros")]
    pub elapsed: Duration,
}

fn micros<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Found(Coloring),
    /// The search space was exhausted.
    NoneExists,
    BudgetExhausted,
}

/// Backtracking state over a conflict graph. `color[i] == 0` is uncolored.
pub(crate) struct Search<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    color: Vec<usize>,
    /// `seen[i][c]`: colored neighbors of `i` carrying color `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    free: Vec<usize>,
    deferred: Vec<bool>,
    symmetry: bool,
    max_used: usize,
    budget: u64,
    pub(crate) nodes: u64,
}

pub(crate) enum Outcome {
    Found(Vec<usize>),
    NoneExists,
    BudgetExhausted,
}

impl<'a> Search<'a> {
    /// `fixed[i]` pins node `i`; nodes listed in `free` are searched, all
    /// others are ignored. Colors are `1..=k`.
    pub(crate) fn new(adj: &'a [Vec<usize>], k: usize, fixed: &[usize], free: Vec<usize>) -> Self {
        let n = adj.len();
        let mut s = Search {
            adj,
            k,
            color: vec![0; n],
            seen: vec![vec![0; k + 1]; n],
            saturation: vec![0; n],
            free,
            deferred: vec![false; n],
            symmetry: false,
            max_used: 0,
            budget: u64::MAX,
            nodes: 0,
        };
        for (i, &c) in fixed.iter().enumerate() {
            if c != 0 {
                s.assign(i, c);
            }
        }
        s
    }

    /// New colors may only be `max used + 1`. Only sound without pins.
    pub(crate) fn with_symmetry_breaking(mut self) -> Self {
        self.symmetry = true;
        self
    }

    pub(crate) fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Deferred nodes are branched on only after every other free node.
    pub(crate) fn defer(&mut self, node: usize) {
        self.deferred[node] = true;
    }

    fn assign(&mut self, i: usize, c: usize) {
        self.color[i] = c;
        for &j in &self.adj[i] {
            if c < self.seen[j].len() {
                if self.seen[j][c] == 0 {
                    self.saturation[j] += 1;
                }
                self.seen[j][c] += 1;
            }
        }
    }

    fn unassign(&mut self, i: usize) {
        let c = self.color[i];
        self.color[i] = 0;
        for &j in &self.adj[i] {
            if c < self.seen[j].len() {
                self.seen[j][c] -= 1;
                if self.seen[j][c] == 0 {
                    self.saturation[j] -= 1;
                }
            }
        }
    }

    /// Max saturation, then larger conflict degree, then smaller id;
    /// deferred nodes lose to any non-deferred one.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &i in &self.free {
            if self.color[i] != 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let ki = (!self.deferred[i], self.saturation[i], self.adj[i].len());
                    let kb = (!self.deferred[b], self.saturation[b], self.adj[b].len());
                    ki > kb || (ki == kb && i < b)
                }
            };
            if better {
                best = Some(i);
            }
        }
        best
    }

    pub(crate) fn run(&mut self) -> Outcome {
        match self.descend() {
            Some(true) => Outcome::Found(self.color.clone()),
            Some(false) => Outcome::NoneExists,
            None => Outcome::BudgetExhausted,
        }
    }

    /// `Some(found)` or `None` when the budget ran out.
    fn descend(&mut self) -> Option<bool> {
        let Some(i) = self.pick() else {
            return Some(true);
        };
        let top = if self.symmetry {
            (self.max_used + 1).min(self.k)
        } else {
            self.k
        };
        for c in 1..=top {
            if self.seen[i][c] > 0 {
                continue;
            }
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            let saved = self.max_used;
            self.max_used = self.max_used.max(c);
            self.assign(i, c);
            match self.descend() {
                Some(true) => return Some(true),
                Some(false) => {}
                None => {
                    self.unassign(i);
                    self.max_used = saved;
                    return None;
                }
            }
            self.unassign(i);
            self.max_used = saved;
        }
        Some(false)
    }
}

fn to_coloring(cg: &ConflictGraph, colors: &[usize], k: usize) -> Coloring {
    let mut col = Coloring::new(k as Color);
    for (i, &c) in colors.iter().enumerate() {
        if c != 0 {
            col.set(cg.edge(i), c as Color);
        }
    }
    col
}

/// Decision form: is there an injective coloring with at most `k` colors?
pub fn color_with_k(cg: &ConflictGraph, k: usize, budget: Option<u64>) -> (Decision, SearchStats) {
    let start = Instant::now();
    let n = cg.node_count();
    let mut search = Search::new(cg.adjacency(), k, &vec![0; n], (0..n).collect())
        .with_symmetry_breaking()
        .with_budget(budget.unwrap_or(DEFAULT_BUDGET));
    let decision = match search.run() {
        Outcome::Found(colors) => Decision::Found(to_coloring(cg, &colors, k)),
        Outcome::NoneExists => Decision::NoneExists,
        Outcome::BudgetExhausted => Decision::BudgetExhausted,
    };
    (
        decision,
        SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub chi: usize,
    pub witness: Coloring,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("search budget exhausted; injective chromatic index lies in [{lower}, {upper}]")]
pub struct BudgetExhausted {
    pub lower: usize,
    pub upper: usize,
    /// A valid coloring with `upper` colors.
    pub witness: Coloring,
    pub stats: SearchStats,
}

/// Greedy clique: from every start node, repeatedly add the highest-degree
/// node adjacent to the whole clique. Returns the largest size found.
pub(crate) fn greedy_clique(cg: &ConflictGraph) -> usize {
    let adj = cg.adjacency();
    let mut best = 0;
    for start in 0..adj.len() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = adj[start].clone();
        while !candidates.is_empty() {
            let &next = candidates
                .iter()
                .max_by(|&&a, &&b| adj[a].len().cmp(&adj[b].len()).then(b.cmp(&a)))
                .expect("nonempty");
            clique.push(next);
            candidates.retain(|&c| c != next && adj[next].binary_search(&c).is_ok());
        }
        best = best.max(clique.len());
    }
    best
}

/// Greedy DSATUR without backtracking; returns the colors per node.
pub(crate) fn greedy_dsatur(cg: &ConflictGraph) -> Vec<usize> {
    let adj = cg.adjacency();
    let n = adj.len();
    let mut color = vec![0usize; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    for _ in 0..n {
        let i = (0..n)
            .filter(|&i| color[i] == 0)
            .max_by(|&a, &b| {
                let sa = seen[a].iter().filter(|&&x| x).count();
                let sb = seen[b].iter().filter(|&&x| x).count();
                sa.cmp(&sb).then(adj[a].len().cmp(&adj[b].len())).then(b.cmp(&a))
            })
            .expect("uncolored node remains");
        let c = (1..).find(|&c| !seen[i].get(c).copied().unwrap_or(false)).expect("unbounded");
        color[i] = c;
        for &j in &adj[i] {
            if seen[j].len() <= c {
                seen[j].resize(c + 1, false);
            }
            seen[j][c] = true;
        }
    }
    color
}

/// Minimum number of colors of an injective edge-coloring of `g`.
///
/// Brackets the answer between a greedy clique and a greedy DSATUR coloring,
/// then lowers the upper bound one color at a time until the decision search
/// proves the next value impossible.
pub fn chi_injective_exact(g: &Graph, budget: Option<u64>) -> Result<ExactResult, BudgetExhausted> {
    let start = Instant::now();
    let cg = build_conflict_graph(g);
    if cg.node_count() == 0 {
        return Ok(ExactResult {
            chi: 0,
            witness: Coloring::new(0),
            stats: SearchStats {
                nodes: 0,
                elapsed: start.elapsed(),
            },
        });
    }
    let lower = greedy_clique(&cg);
    let greedy = greedy_dsatur(&cg);
    let mut upper = greedy.iter().copied().max().unwrap_or(0);
    let mut witness = to_coloring(&cg, &greedy, upper);
    let mut remaining = budget.unwrap_or(DEFAULT_BUDGET);
    let mut nodes = 0u64;
    while upper > lower {
        let (decision, stats) = color_with_k(&cg, upper - 1, Some(remaining));
        nodes += stats.nodes;
        remaining = remaining.saturating_sub(stats.nodes);
        match decision {
            Decision::Found(col) => {
                upper = col.colors_used();
                witness = col.with_k(upper as Color);
            }
            Decision::NoneExists => break,
            Decision::BudgetExhausted => {
                return Err(BudgetExhausted {
                    lower,
                    upper,
                    witness,
                    stats: SearchStats {
                        nodes,
                        elapsed: start.elapsed(),
                    },
                })
            }
        }
    }
    Ok(ExactResult {
        chi: upper,
        witness,
        stats: SearchStats {
            nodes,
            elapsed: start.elapsed(),
        },
    })
}
