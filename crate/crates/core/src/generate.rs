//! Seeded graph generators and per-configuration gadgets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Graph, VertexId, DEFAULT_DEGREE_CAP};
use crate::mad::{is_eligible, mad_exact};
use crate::reduce::config::ConfigKind;

/// Random simple graph on `n` vertices: up to `edges` uniformly drawn pairs,
/// skipping any that would push a degree past `max_degree`.
pub fn gen_random_bounded(n: usize, edges: usize, max_degree: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n).with_degree_cap(max_degree.max(DEFAULT_DEGREE_CAP));
    if n < 2 {
        return g;
    }
    let mut attempts = 0;
    while g.edge_count() < edges && attempts < 50 * edges.max(1) {
        attempts += 1;
        let u = VertexId(rng.gen_range(0..n));
        let v = VertexId(rng.gen_range(0..n));
        if u == v || g.has_edge(u, v) || g.deg(u) >= max_degree || g.deg(v) >= max_degree {
            continue;
        }
        g.add_edge(u, v).expect("checked simple");
    }
    g
}

/// A random graph with maximum degree at most 4 and mad below 8/3.
///
/// Starts from about `n + n/3` random edges under the degree cap, then
/// deletes a random edge of the densest subgraph until the graph is
/// eligible. Deterministic in `(n, seed)`.
pub fn gen_random_eligible(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = n + rng.gen_range(0..=n / 3);
    let mut g = gen_random_bounded(n, target, DEFAULT_DEGREE_CAP, rng.gen());
    while !is_eligible(&g).eligible {
        let witness = mad_exact(&g).expect("nonempty").witness;
        let inside: Vec<_> = g
            .edges()
            .filter(|(_, u, v)| witness.contains(u) && witness.contains(v))
            .map(|(e, _, _)| e)
            .collect();
        let &e = inside.choose(&mut rng).expect("dense witness has edges");
        g.remove_edge(e).expect("live edge");
    }
    g.compacted()
}

/// A small eligible graph in which `kind` fires at exactly one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Gadget {
    pub kind: ConfigKind,
    #[serde(skip)]
    pub graph: Graph,
    /// Named vertices of the construction; `v` is the witness.
    pub roles: Vec<(&'static str, VertexId)>,
}

impl Gadget {
    pub fn witness(&self) -> VertexId {
        self.role("v").expect("every gadget names its witness")
    }

    pub fn role(&self, name: &str) -> Option<VertexId> {
        self.roles.iter().find(|(r, _)| *r == name).map(|&(_, v)| v)
    }
}

/// Builds a graph from paths written as `a-b-c`; vertices are numbered in
/// order of first appearance.
fn from_paths(kind: ConfigKind, paths: &str, named: &[&'static str]) -> Gadget {
    let mut names: Vec<&str> = Vec::new();
    let mut pairs = Vec::new();
    for path in paths.split_whitespace() {
        let mut ids = Vec::new();
        for name in path.split('-') {
            let i = names.iter().position(|&n| n == name).unwrap_or_else(|| {
                names.push(name);
                names.len() - 1
            });
            ids.push(i);
        }
        pairs.extend(ids.windows(2).map(|w| (w[0], w[1])));
    }
    let roles = named
        .iter()
        .map(|&r| (r, VertexId(names.iter().position(|&n| n == r).expect("role appears in a path"))))
        .collect();
    let graph = Graph::from_edges(names.len(), &pairs).expect("gadget is simple");
    Gadget { kind, graph, roles }
}

/// The gadget for `kind`.
pub fn gen_gadget(kind: ConfigKind) -> Gadget {
    use ConfigKind::*;
    let (paths, roles): (&str, &[&'static str]) = match kind {
        DegreeOne => ("c0-c1-c2-c3-c4-c0 c0-v", &["v", "c0"]),
        ThreeTwoPoorTriple => (
            "v-v1 v-v2 v-v3 v1-a1-a2-v2 v2-b1-b2-v3 v3-c1-c2-v1",
            &["v", "v1", "v2", "v3"],
        ),
        PoorBesidePoor => (
            "v-p v-a-c v-b p-x-b p-y-c b-s1-s2-c b-t1-t2-c",
            &["v", "p"],
        ),
        ThreeTwoBesideTwoOne => (
            "v-u-a2-h1 v-b-h2 v-h1 h1-s1-s2-h2 h1-t1-t2-h2",
            &["v", "u"],
        ),
        TrianglePendant => ("v-v1-v2-v v-u u-c1-c2-c3-c4-u", &["v", "v1", "v2"]),
        AllSmallNeighbors => ("a-b a-p1-v-p3-b a-q1-q2-b", &["v", "p1", "p3"]),
        DoubleThreeTwo => (
            "v-v1 v-v2 v-v3 v1-x1-v3 v1-y1-b v2-x2-v3 v2-y2-b v3-s-t-b",
            &["v", "v1", "v2", "v3", "x1", "y1", "x2", "y2"],
        ),
        ThreeTwoAndThreeOnePlus => (
            "v-v1 v-v2 v-a v1-x1-a v1-y1-b v2-x2-x2'-a v2-b a-s-t-b",
            &["v", "v1", "v2", "x2", "x2'"],
        ),
        FourWithTwoOneAndTwoSmall => (
            "v-v1-x1-h v-v2-h v-v3-h2 v-v4-h v4-h2 h-s-t-h2",
            &["v", "v1", "v2", "v3", "v4", "x1"],
        ),
        FourWithTwoTwoOnes => (
            "v-v1-x1-a v-v2-x2-b v-v3-d v-v4-a v4-b a-d-b",
            &["v", "v1", "v2", "v3", "v4", "x1", "x2"],
        ),
    };
    from_paths(kind, paths, roles)
}
