//! Simple undirected graphs with stable vertex and edge ids.
//!
//! Vertices and edges are tombstoned on removal, so ids handed out before a
//! deletion keep referring to the same objects afterwards. The reduction
//! engine relies on this: a coloring of `G - v` is keyed by the same edge ids
//! as the coloring of `G` it is extended into.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum degree the reduction engine is built for.
pub const DEFAULT_DEGREE_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    alive: Vec<bool>,
    edges: Vec<Option<(VertexId, VertexId)>>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
    live_vertices: usize,
    degree_cap: usize,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new(0)
    }
}

impl Graph {
    /// `n` isolated vertices with ids `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            alive: vec![true; n],
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            lookup: HashMap::new(),
            live_vertices: n,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in pairs {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// True when some vertex is above the configured degree cap. Such graphs
    /// are still fully usable; only the reduction engine refuses them.
    pub fn exceeds_degree_cap(&self) -> bool {
        self.max_degree() > self.degree_cap
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.alive.push(true);
        self.adj.push(Vec::new());
        self.live_vertices += 1;
        VertexId(self.alive.len() - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.lookup.contains_key(&key(u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let e = EdgeId(self.edges.len());
        self.edges.push(Some(key(u, v)));
        self.adj[u.0].push((v, e));
        self.adj[v.0].push((u, e));
        self.lookup.insert(key(u, v), e);
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        let (u, v) = self.endpoints(e)?;
        self.edges[e.0] = None;
        self.lookup.remove(&key(u, v));
        self.adj[u.0].retain(|&(_, f)| f != e);
        self.adj[v.0].retain(|&(_, f)| f != e);
        Ok(())
    }

    /// Deletes `v` and its incident edges, returning the removed edge ids.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<EdgeId>, GraphError> {
        self.check_vertex(v)?;
        let incident: Vec<EdgeId> = self.adj[v.0].iter().map(|&(_, e)| e).collect();
        for &e in &incident {
            self.remove_edge(e)?;
        }
        self.alive[v.0] = false;
        self.live_vertices -= 1;
        Ok(incident)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.alive.get(v.0).copied().unwrap_or(false)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.0), Some(Some(_)))
    }

    /// One past the largest vertex id ever issued.
    pub fn vertex_bound(&self) -> usize {
        self.alive.len()
    }

    /// One past the largest edge id ever issued.
    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.live_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.lookup.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i))
    }

    /// Live edges in id order, with normalized endpoints (`u < v`).
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|(u, v)| (EdgeId(i), u, v)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _, _)| e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        match self.edges.get(e.0) {
            Some(Some(uv)) => Ok(*uv),
            _ => Err(GraphError::UnknownEdge(e)),
        }
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&key(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.lookup.contains_key(&key(u, v))
    }

    /// `d(v) = |N(v)|`.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v.0].len())
    }

    /// Degree without the existence check; dead or unknown ids have degree 0.
    pub fn deg(&self, v: VertexId) -> usize {
        self.adj.get(v.0).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(|&(u, _)| u)
    }

    /// `(neighbor, edge)` pairs at `v`.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        self.adj.get(v.0).map_or(&[], Vec::as_slice)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.deg(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.deg(v)).min().unwrap_or(0)
    }

    /// `|E(G[S])|` for a vertex subset given as ids.
    pub fn induced_edge_count(&self, subset: &[VertexId]) -> usize {
        let mut inside = vec![false; self.vertex_bound()];
        for v in subset {
            if let Some(slot) = inside.get_mut(v.0) {
                *slot = true;
            }
        }
        self.edges()
            .filter(|&(_, u, v)| inside[u.0] && inside[v.0])
            .count()
    }

    /// An edge is light when both endpoints have degree 2.
    pub fn is_light(&self, e: EdgeId) -> Result<bool, GraphError> {
        let (u, v) = self.endpoints(e)?;
        Ok(self.deg(u) == 2 && self.deg(v) == 2)
    }

    /// Renumbers live vertices and edges to contiguous ids in order.
    pub fn compacted(&self) -> Graph {
        let mut remap = vec![usize::MAX; self.vertex_bound()];
        for (i, v) in self.vertices().enumerate() {
            remap[v.0] = i;
        }
        let mut g = Graph::new(self.vertex_count()).with_degree_cap(self.degree_cap);
        for (_, u, v) in self.edges() {
            g.add_edge(VertexId(remap[u.0]), VertexId(remap[v.0]))
                .expect("source graph is simple");
        }
        g
    }

    /// Copy with vertex `i` renamed to `perm[i]`; edges are inserted in the
    /// original edge order. Requires a compact graph.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_bound());
        let mut g = Graph::new(self.vertex_bound()).with_degree_cap(self.degree_cap);
        for (_, u, v) in self.edges() {
            g.add_edge(VertexId(perm[u.0]), VertexId(perm[v.0]))
                .expect("permutation preserves simplicity");
        }
        g
    }

    /// Breadth-first distances from `source`, bounded by `radius`.
    pub fn ball(&self, source: VertexId, radius: usize) -> Vec<(VertexId, usize)> {
        let mut dist = vec![usize::MAX; self.vertex_bound()];
        let mut out = Vec::new();
        if !self.contains_vertex(source) {
            return out;
        }
        let mut queue = VecDeque::from([source]);
        dist[source.0] = 0;
        while let Some(u) = queue.pop_front() {
            out.push((u, dist[u.0]));
            if dist[u.0] == radius {
                continue;
            }
            for w in self.neighbors(u) {
                if dist[w.0] == usize::MAX {
                    dist[w.0] = dist[u.0] + 1;
                    queue.push_back(w);
                }
            }
        }
        out
    }
}

/// The graph `H` obtained from `G` by deleting every degree-1 vertex once.
///
/// `H` shares the id space of `G`, so the back-mapping to `G` is the identity
/// on surviving vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    source: Graph,
    core: Graph,
}

impl CoreGraph {
    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn graph(&self) -> &Graph {
        &self.core
    }

    pub fn source_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.core.contains_vertex(v).then_some(v)
    }

    pub fn source_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.core.contains_edge(e).then_some(e)
    }

    /// `d_H(v)`.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.core.degree(v)
    }

    /// `d_G(v)` for a vertex of `H`.
    pub fn source_degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.core.degree(v)?;
        self.source.degree(v)
    }

    pub fn classify(&self, v: VertexId) -> Result<VertexClass, GraphError> {
        classify_in(&self.core, v)
    }

    /// Wraps a graph as its own core, for callers that already hold `H`.
    pub fn identity(g: &Graph) -> CoreGraph {
        CoreGraph {
            source: g.clone(),
            core: g.clone(),
        }
    }
}

/// Deletes exactly the vertices with `d_G(v) = 1`. Vertices whose degree
/// drops to 1 as a consequence stay.
pub fn derive_core(g: &Graph) -> CoreGraph {
    let mut core = g.clone();
    let pendant: Vec<VertexId> = g.vertices().filter(|&v| g.deg(v) == 1).collect();
    for v in pendant {
        core.remove_vertex(v).expect("vertex is live");
    }
    CoreGraph {
        source: g.clone(),
        core,
    }
}

/// Repeatedly deletes vertices of degree at most 1 until none remain.
pub fn peel_iterated(g: &Graph) -> Graph {
    let mut h = g.clone();
    loop {
        let low: Vec<VertexId> = h.vertices().filter(|&v| h.deg(v) <= 1).collect();
        if low.is_empty() {
            return h;
        }
        for v in low {
            h.remove_vertex(v).expect("vertex is live");
        }
    }
}

/// Degree class of a vertex: a `k_j`-vertex has degree `k` and `j` neighbors
/// of degree 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    /// Degree 0 or 1.
    Low { degree: usize },
    Two(usize),
    Three(usize),
    /// A `3_1`-vertex whose 2-neighbor is a `2_1`-vertex.
    ThreeOnePlus,
    Four(usize),
    /// Degree 5 or more.
    High { degree: usize, twos: usize },
}

impl VertexClass {
    pub fn degree(self) -> usize {
        match self {
            VertexClass::Low { degree } | VertexClass::High { degree, .. } => degree,
            VertexClass::Two(_) => 2,
            VertexClass::Three(_) | VertexClass::ThreeOnePlus => 3,
            VertexClass::Four(_) => 4,
        }
    }

    /// Number of degree-2 neighbors.
    pub fn twos(self) -> usize {
        match self {
            VertexClass::Low { .. } => 0,
            VertexClass::Two(j) | VertexClass::Three(j) | VertexClass::Four(j) => j,
            VertexClass::ThreeOnePlus => 1,
            VertexClass::High { twos, .. } => twos,
        }
    }

    /// Poor 3-vertices are the `3_{1+}` and `3_2` ones. `Three(1)` is always
    /// the non-poor `3_1`.
    pub fn is_poor(self) -> bool {
        matches!(self, VertexClass::ThreeOnePlus | VertexClass::Three(2))
    }

    pub fn is_three_two(self) -> bool {
        self == VertexClass::Three(2)
    }

    pub fn is_two_one(self) -> bool {
        self == VertexClass::Two(1)
    }

    pub fn is_two_zero(self) -> bool {
        self == VertexClass::Two(0)
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Low { degree } => write!(f, "{degree}-vertex"),
            VertexClass::Two(j) => write!(f, "2_{j}"),
            VertexClass::Three(j) => write!(f, "3_{j}"),
            VertexClass::ThreeOnePlus => write!(f, "3_1+"),
            VertexClass::Four(j) => write!(f, "4_{j}"),
            VertexClass::High { degree, twos } => write!(f, "{degree}_{twos}"),
        }
    }
}

fn count_twos(g: &Graph, v: VertexId) -> usize {
    g.neighbors(v).filter(|&u| g.deg(u) == 2).count()
}

/// Class of `v` with all degrees measured in `g`. Never cached.
pub fn classify_in(g: &Graph, v: VertexId) -> Result<VertexClass, GraphError> {
    let degree = g.degree(v)?;
    let twos = count_twos(g, v);
    Ok(match degree {
        0 | 1 => VertexClass::Low { degree },
        2 => VertexClass::Two(twos),
        3 if twos == 1 => {
            let two = g.neighbors(v).find(|&u| g.deg(u) == 2).expect("one 2-neighbor");
            if count_twos(g, two) == 1 {
                VertexClass::ThreeOnePlus
            } else {
                VertexClass::Three(1)
            }
        }
        3 => VertexClass::Three(twos),
        4 => VertexClass::Four(twos),
        _ => VertexClass::High { degree, twos },
    })
}

/// Classes of every vertex of `g`, indexed by vertex id; dead ids get `None`.
pub fn classify_all(g: &Graph) -> Vec<Option<VertexClass>> {
    (0..g.vertex_bound())
        .map(|i| classify_in(g, VertexId(i)).ok())
        .collect()
}
