//! Brute-force oracles shared by the integration tests. None of these call
//! the library's conflict, mad, or solver code.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use injective_edge::graph::{EdgeId, Graph, VertexId};

pub fn edge_list(g: &Graph) -> Vec<(EdgeId, usize, usize)> {
    g.edges().map(|(e, u, v)| (e, u.0, v.0)).collect()
}

/// Distance between two edges in the line graph, by breadth-first search.
pub fn line_distance(g: &Graph, from: EdgeId, to: EdgeId) -> Option<usize> {
    let edges = edge_list(g);
    let index = |e: EdgeId| edges.iter().position(|x| x.0 == e).unwrap();
    let touches = |a: usize, b: usize| {
        let (_, p, q) = edges[a];
        let (_, r, s) = edges[b];
        a != b && (p == r || p == s || q == r || q == s)
    };
    let start = index(from);
    let goal = index(to);
    let mut dist = vec![usize::MAX; edges.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for b in 0..edges.len() {
            if dist[b] == usize::MAX && touches(a, b) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    (dist[goal] != usize::MAX).then_some(dist[goal])
}

pub fn common_triangle(g: &Graph, e: EdgeId, f: EdgeId) -> bool {
    let (a, b) = g.endpoints(e).unwrap();
    let (c, d) = g.endpoints(f).unwrap();
    let spanned: BTreeSet<VertexId> = [a, b, c, d].into_iter().collect();
    if spanned.len() != 3 {
        return false;
    }
    let s: Vec<VertexId> = spanned.into_iter().collect();
    g.has_edge(s[0], s[1]) && g.has_edge(s[1], s[2]) && g.has_edge(s[0], s[2])
}

/// The defining relation: line distance exactly two, or a shared triangle.
pub fn sees_oracle(g: &Graph, e: EdgeId, f: EdgeId) -> bool {
    e != f && (line_distance(g, e, f) == Some(2) || common_triangle(g, e, f))
}

/// Index pairs of conflicting edges, positions as in `edge_list`.
pub fn conflict_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let edges = edge_list(g);
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if sees_oracle(g, edges[i].0, edges[j].0) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether some assignment of `k` colors to `m` edges avoids every pair,
/// by plain enumeration of all `k^m` assignments.
pub fn colorable_by_enumeration(m: usize, pairs: &[(usize, usize)], k: usize) -> bool {
    if m == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colors = vec![0usize; m];
    loop {
        if pairs.iter().all(|&(i, j)| colors[i] != colors[j]) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return false;
            }
            colors[pos] += 1;
            if colors[pos] < k {
                break;
            }
            colors[pos] = 0;
            pos += 1;
        }
    }
}

/// Injective chromatic index by enumeration.
pub fn chi_by_enumeration(g: &Graph) -> usize {
    let m = g.edge_count();
    let pairs = conflict_pairs(g);
    (0..=m).find(|&k| colorable_by_enumeration(m, &pairs, k)).unwrap()
}

/// `2|E(G[S])| / |S|` as a reduced pair, counted directly.
pub fn subset_density(g: &Graph, subset: &[VertexId]) -> (i64, i64) {
    let inside: BTreeSet<VertexId> = subset.iter().copied().collect();
    let edges = g
        .edges()
        .filter(|(_, u, v)| inside.contains(u) && inside.contains(v))
        .count() as i64;
    reduce(2 * edges, inside.len() as i64)
}

pub fn reduce(p: i64, q: i64) -> (i64, i64) {
    let (mut a, mut b) = (p.abs(), q.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let d = a.max(1);
    (p / d, q / d)
}

/// Whether the coloring is total and conflict-free, checked pair by pair.
pub fn valid_by_scan(g: &Graph, colors: &dyn Fn(EdgeId) -> Option<u32>, k: u32) -> bool {
    let edges = edge_list(g);
    if edges.iter().any(|&(e, _, _)| !matches!(colors(e), Some(c) if (1..=k).contains(&c))) {
        return false;
    }
    conflict_pairs(g)
        .into_iter()
        .all(|(i, j)| colors(edges[i].0) != colors(edges[j].0))
}

/// A few named small graphs.
pub fn named(name: &str) -> Graph {
    let pairs: &[(usize, usize)] = match name {
        "C3" => &[(0, 1), (1, 2), (2, 0)],
        "P4" => &[(0, 1), (1, 2), (2, 3)],
        "K1,3" => &[(0, 1), (0, 2), (0, 3)],
        "K4" => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "C5" => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        _ => panic!("unknown graph {name}"),
    };
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(n, pairs).unwrap()
}
