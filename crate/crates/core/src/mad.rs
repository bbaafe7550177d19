//! Exact maximum average degree.
//!
//! `mad(G)` is the largest `2|E(G[S])|/|S|` over nonempty vertex sets `S`.
//! [`mad_exact`] finds it with Goldberg's min-cut test inside a binary search
//! over a grid of step `1/(n²+1)`. Two different candidate values `2a/b` and
//! `2c/d` with `b, d <= n` are at least `2/n²` apart, so the last grid cell
//! that still admits a denser set contains exactly one candidate, and the cut
//! that proved it is a witness for the maximum.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexId, DEFAULT_DEGREE_CAP};

/// Largest graph [`mad_bruteforce`] accepts.
pub const BRUTEFORCE_MAX_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MadError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has {0} vertices; brute force is capped at {BRUTEFORCE_MAX_VERTICES}")]
    TooLarge(usize),
}

/// An exact, reduced, nonnegative rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Density(Ratio<i64>);

impl Density {
    pub fn new(numer: i64, denom: i64) -> Self {
        Density(Ratio::new(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Density(Ratio::from_integer(n))
    }

    /// `2|E|/|V|` for a set with the given counts.
    pub fn average_degree(edges: usize, vertices: usize) -> Self {
        Density::new(2 * edges as i64, vertices as i64)
    }

    /// The eligibility threshold `8/3`.
    pub fn eight_thirds() -> Self {
        Density::new(8, 3)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Decimal rendering truncated to `places` digits; an annotation only.
    pub fn to_decimal(&self, places: usize) -> String {
        let (n, d) = (self.numer(), self.denom());
        let sign = if n < 0 { "-" } else { "" };
        let n = n.unsigned_abs();
        let d = d.unsigned_abs();
        let mut out = format!("{sign}{}", n / d);
        if places > 0 {
            out.push('.');
            let mut rem = n % d;
            for _ in 0..places {
                rem *= 10;
                out.push(char::from(b'0' + (rem / d) as u8));
                rem %= d;
            }
        }
        out
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MadResult {
    pub value: Density,
    /// A vertex set attaining `value`, sorted.
    pub witness: Vec<VertexId>,
}

fn density_of(g: &Graph, set: &[VertexId]) -> Density {
    Density::average_degree(g.induced_edge_count(set), set.len())
}

/// Goldberg's test: is there a set `S` with `2|E(S)|/|S| > t/scale`?
/// Returns the source side of a minimum cut when there is.
fn denser_than(g: &Graph, ids: &[VertexId], t: i64, scale: i64) -> Option<Vec<VertexId>> {
    let n = ids.len();
    let (s, sink) = (n, n + 1);
    let mut index = vec![usize::MAX; g.vertex_bound()];
    for (i, v) in ids.iter().enumerate() {
        index[v.0] = i;
    }
    let base = scale * g.max_degree() as i64;
    let mut net = FlowNetwork::new(n + 2);
    for (i, &v) in ids.iter().enumerate() {
        net.add_arc(s, i, base);
        net.add_arc(i, sink, base + t - scale * g.deg(v) as i64);
    }
    for (_, u, v) in g.edges() {
        net.add_edge(index[u.0], index[v.0], scale);
    }
    let cut = net.max_flow(s, sink);
    if cut >= base * n as i64 {
        return None;
    }
    let side = net.source_side(s);
    Some(ids.iter().enumerate().filter(|(i, _)| side[*i]).map(|(_, &v)| v).collect())
}

/// Exact `mad(g)` with a witness set.
pub fn mad_exact(g: &Graph) -> Result<MadResult, MadError> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n == 0 {
        return Err(MadError::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok(MadResult {
            value: Density::integer(0),
            witness: vec![ids[0]],
        });
    }
    let scale = (n * n + 1) as i64;
    // Largest t in [lo, hi) with a set denser than t/scale; t = 0 always works.
    let mut lo = 0i64;
    let mut hi = g.max_degree() as i64 * scale;
    let mut best = denser_than(g, &ids, 0, scale).expect("an edge is denser than 0");
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match denser_than(g, &ids, mid, scale) {
            Some(set) => {
                lo = mid;
                best = set;
            }
            None => hi = mid,
        }
    }
    best.sort();
    Ok(MadResult {
        value: density_of(g, &best),
        witness: best,
    })
}

/// Exhaustive maximum over all nonempty vertex subsets.
pub fn mad_bruteforce(g: &Graph) -> Result<Density, MadError> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n == 0 {
        return Err(MadError::EmptyGraph);
    }
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(MadError::TooLarge(n));
    }
    let mut index = vec![usize::MAX; g.vertex_bound()];
    for (i, v) in ids.iter().enumerate() {
        index[v.0] = i;
    }
    let mut adj = vec![0u32; n];
    for (_, u, v) in g.edges() {
        adj[index[u.0]] |= 1 << index[v.0];
        adj[index[v.0]] |= 1 << index[u.0];
    }
    let mut best = Density::integer(0);
    for mask in 1u32..(1u32 << n) {
        let mut twice_edges = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            twice_edges += (adj[i] & mask).count_ones();
            rest &= rest - 1;
        }
        let d = Density::new(twice_edges as i64, mask.count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eligibility {
    pub max_degree: usize,
    pub mad: Density,
    pub mad_witness: Vec<VertexId>,
    pub eligible: bool,
}

impl Eligibility {
    /// One-line reason, used in diagnostics.
    pub fn explain(&self) -> String {
        let mut reasons = Vec::new();
        if self.max_degree > DEFAULT_DEGREE_CAP {
            reasons.push(format!("maximum degree {} exceeds {DEFAULT_DEGREE_CAP}", self.max_degree));
        }
        if self.mad >= Density::eight_thirds() {
            reasons.push(format!("mad {} is not below 8/3", self.mad));
        }
        if reasons.is_empty() {
            format!("eligible: maximum degree {}, mad {} < 8/3", self.max_degree, self.mad)
        } else {
            format!("ineligible: {}", reasons.join("; "))
        }
    }
}

/// `Δ(g) <= 4` and `mad(g) < 8/3`, compared exactly.
pub fn is_eligible(g: &Graph) -> Eligibility {
    let max_degree = g.max_degree();
    let (mad, mad_witness) = match mad_exact(g) {
        Ok(r) => (r.value, r.witness),
        Err(MadError::EmptyGraph) | Err(MadError::TooLarge(_)) => (Density::integer(0), Vec::new()),
    };
    let eligible = max_degree <= DEFAULT_DEGREE_CAP
        && mad.cmp(&Density::eight_thirds()) == Ordering::Less;
    Eligibility {
        max_degree,
        mad,
        mad_witness,
        eligible,
    }
}
