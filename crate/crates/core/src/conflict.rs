//! The "sees" relation between edges and injective colorings checked against it.
//!
//! Edge `f` sees edge `e` when some third edge joins an endpoint of `e` to an
//! endpoint of `f`. For non-adjacent edges that is distance two in the line
//! graph; for adjacent edges it means the two lie in a triangle. An injective
//! edge-coloring is exactly a proper vertex coloring of the resulting
//! conflict graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError};

pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConflictError {
    #[error("an edge does not see itself ({0})")]
    SameEdge(EdgeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Does `f` see `e` in `g`?
pub fn sees(g: &Graph, e: EdgeId, f: EdgeId) -> Result<bool, ConflictError> {
    let (a, b) = g.endpoints(e)?;
    let (c, d) = g.endpoints(f)?;
    if e == f {
        return Err(ConflictError::SameEdge(e));
    }
    for x in [a, b] {
        for y in [c, d] {
            if x == y {
                continue;
            }
            if let Some(h) = g.edge_between(x, y) {
                if h != e && h != f {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// One node per live edge of the source graph, adjacent when the edges see
/// each other. Node `i` corresponds to the `i`-th live edge in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    edges: Vec<EdgeId>,
    node_of: Vec<Option<usize>>,
    adj: Vec<Vec<usize>>,
}

/// Builds the conflict graph by two-hop enumeration: for each edge `e`, each
/// edge `h` touching `e`, and each edge `f` touching the far end of `h`.
pub fn build_conflict_graph(g: &Graph) -> ConflictGraph {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut node_of = vec![None; g.edge_bound()];
    for (i, e) in edges.iter().enumerate() {
        node_of[e.0] = Some(i);
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); edges.len()];
    for (i, &e) in edges.iter().enumerate() {
        let (a, b) = g.endpoints(e).expect("live edge");
        for x in [a, b] {
            for &(y, h) in g.incident(x) {
                if h == e {
                    continue;
                }
                for &(_, f) in g.incident(y) {
                    if f == h || f == e {
                        continue;
                    }
                    let j = node_of[f.0].expect("live edge");
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
    }
    ConflictGraph {
        edges,
        node_of,
        adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
    }
}

impl ConflictGraph {
    pub fn node_count(&self) -> usize {
        self.edges.len()
    }

    pub fn conflict_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edge(&self, node: usize) -> EdgeId {
        self.edges[node]
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn node(&self, e: EdgeId) -> Option<usize> {
        self.node_of.get(e.0).copied().flatten()
    }

    /// Sorted neighbor nodes of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn conflicts(&self, e: EdgeId, f: EdgeId) -> bool {
        match (self.node(e), self.node(f)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// `F(e)`: the edges that see `e`.
    pub fn seen_by(&self, e: EdgeId) -> Vec<EdgeId> {
        self.node(e)
            .map(|i| self.adj[i].iter().map(|&j| self.edges[j]).collect())
            .unwrap_or_default()
    }
}

/// A partial map from edges to colors, with the palette size `k` recorded.
///
/// Colors outside `1..=k` can be stored (coloring files are untrusted);
/// [`validate`] reports them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    k: Color,
    colors: BTreeMap<EdgeId, Color>,
}

impl Coloring {
    pub fn new(k: Color) -> Self {
        Coloring {
            k,
            colors: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn with_k(mut self, k: Color) -> Self {
        self.k = k;
        self
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.colors.get(&e).copied()
    }

    pub fn set(&mut self, e: EdgeId, c: Color) {
        self.colors.insert(e, c);
    }

    pub fn erase(&mut self, e: EdgeId) -> Option<Color> {
        self.colors.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Color {
        self.colors.values().copied().max().unwrap_or(0)
    }
}

/// Colors of `1..=k` not used on `F(e)`.
pub fn available_colors(cg: &ConflictGraph, col: &Coloring, e: EdgeId) -> BTreeSet<Color> {
    let mut free: BTreeSet<Color> = (1..=col.k()).collect();
    for f in cg.seen_by(e) {
        if let Some(c) = col.get(f) {
            free.remove(&c);
        }
    }
    free
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Edges of the graph without a color.
    pub uncolored: Vec<EdgeId>,
    /// Colored ids that are not edges of the graph.
    pub unknown: Vec<EdgeId>,
    /// Assignments outside `1..=k`.
    pub out_of_range: Vec<(EdgeId, Color)>,
    /// Pairs of edges that see each other and share a color.
    pub conflicts: Vec<(EdgeId, EdgeId, Color)>,
}

impl ValidationReport {
    pub fn is_total(&self) -> bool {
        self.uncolored.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.uncolored.is_empty()
            && self.unknown.is_empty()
            && self.out_of_range.is_empty()
            && self.conflicts.is_empty()
    }
}

pub fn validate(cg: &ConflictGraph, col: &Coloring) -> ValidationReport {
    let mut report = ValidationReport::default();
    for &e in cg.edges() {
        if col.get(e).is_none() {
            report.uncolored.push(e);
        }
    }
    for (e, c) in col.iter() {
        if cg.node(e).is_none() {
            report.unknown.push(e);
        } else if c == 0 || c > col.k() {
            report.out_of_range.push((e, c));
        }
    }
    for (i, &e) in cg.edges().iter().enumerate() {
        let Some(ce) = col.get(e) else { continue };
        for &j in cg.neighbors(i) {
            if j <= i {
                continue;
            }
            let f = cg.edge(j);
            if col.get(f) == Some(ce) {
                report.conflicts.push((e, f, ce));
            }
        }
    }
    report
}
