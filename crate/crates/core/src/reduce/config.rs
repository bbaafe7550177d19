//! Reducible configurations and their detectors.
//!
//! Every detector reads degrees from two graphs: the ambient graph `G`
//! (for `d_G`) and its core `H` (for `d_H` and every vertex class). During
//! the reduction loop pendant vertices are always removed first, so by the
//! time the other detectors match, `H = G`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{classify_all, derive_core, EdgeId, Graph, VertexClass, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    /// A vertex with `d_G(v) <= 1`.
    DegreeOne,
    /// A 3-vertex adjacent to three poor 3-vertices.
    ThreeTwoPoorTriple,
    /// A `3_1`- or `3_2`-vertex adjacent to a poor 3-vertex.
    PoorBesidePoor,
    /// A `3_2`-vertex adjacent to a `2_1`-vertex.
    ThreeTwoBesideTwoOne,
    /// Triangle `v v1 v2` with `d_H(v1) = d_H(v2) = 2`, where `d_H(v) != 4`
    /// or another neighbor of `v` has `d_H < 3`.
    TrianglePendant,
    /// A vertex without a neighbor of degree at least 3.
    AllSmallNeighbors,
    /// A 3-vertex adjacent to two `3_2`-vertices.
    DoubleThreeTwo,
    /// A 3-vertex adjacent to a `3_2`-vertex and a `3_{1+}`-vertex.
    ThreeTwoAndThreeOnePlus,
    /// A 4-vertex with a `2_1`-neighbor `v1`, two neighbors that are each
    /// `2_0` or `3_2`, and a last neighbor `v4` with `d_G(v4) <= 3`.
    FourWithTwoOneAndTwoSmall,
    /// A 4-vertex with two `2_1`-neighbors and a third neighbor that is a
    /// 2-vertex or a poor 3-vertex.
    FourWithTwoTwoOnes,
}

impl ConfigKind {
    /// Scan priority order.
    pub const ALL: [ConfigKind; 10] = [
        ConfigKind::DegreeOne,
        ConfigKind::ThreeTwoPoorTriple,
        ConfigKind::PoorBesidePoor,
        ConfigKind::ThreeTwoBesideTwoOne,
        ConfigKind::TrianglePendant,
        ConfigKind::AllSmallNeighbors,
        ConfigKind::DoubleThreeTwo,
        ConfigKind::ThreeTwoAndThreeOnePlus,
        ConfigKind::FourWithTwoOneAndTwoSmall,
        ConfigKind::FourWithTwoTwoOnes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::DegreeOne => "degree-one",
            ConfigKind::ThreeTwoPoorTriple => "three-two-poor-triple",
            ConfigKind::PoorBesidePoor => "poor-beside-poor",
            ConfigKind::ThreeTwoBesideTwoOne => "three-two-beside-two-one",
            ConfigKind::TrianglePendant => "triangle-pendant",
            ConfigKind::AllSmallNeighbors => "all-small-neighbors",
            ConfigKind::DoubleThreeTwo => "double-three-two",
            ConfigKind::ThreeTwoAndThreeOnePlus => "three-two-and-three-one-plus",
            ConfigKind::FourWithTwoOneAndTwoSmall => "four-with-two-one-and-two-small",
            ConfigKind::FourWithTwoTwoOnes => "four-with-two-two-ones",
        }
    }

    /// Kinds whose extension is argued locally, with explicit erase and
    /// recolor steps. The others rely on the generic deepening search.
    pub fn has_local_proof(self) -> bool {
        matches!(
            self,
            ConfigKind::TrianglePendant
                | ConfigKind::AllSmallNeighbors
                | ConfigKind::DoubleThreeTwo
                | ConfigKind::ThreeTwoAndThreeOnePlus
                | ConfigKind::FourWithTwoOneAndTwoSmall
                | ConfigKind::FourWithTwoTwoOnes
        )
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ConfigKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown configuration kind '{s}' (expected one of: {})", names.join(", "))
            })
    }
}

/// A matched reducible configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub kind: ConfigKind,
    /// Named roles; the first entry is the distinguished vertex `v`.
    pub roles: Vec<(&'static str, VertexId)>,
    /// Vertices removed before recursing.
    pub deletion: Vec<VertexId>,
    /// Colored edges the extension may erase and recolor.
    pub recolor_hints: Vec<EdgeId>,
}

impl Configuration {
    pub fn witness(&self) -> VertexId {
        self.roles[0].1
    }

    pub fn role(&self, name: &str) -> Option<VertexId> {
        self.roles.iter().find(|(r, _)| *r == name).map(|&(_, v)| v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.roles.iter().map(|&(_, v)| v)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at", self.kind)?;
        for (role, v) in &self.roles {
            write!(f, " {role}={}", v.0 + 1)?;
        }
        Ok(())
    }
}

/// Edges within line-graph distance `radius` of `seeds`, seeds included.
pub fn edges_near(g: &Graph, seeds: &[EdgeId], radius: usize) -> BTreeSet<EdgeId> {
    let mut dist = vec![usize::MAX; g.edge_bound()];
    let mut queue = VecDeque::new();
    for &e in seeds {
        if g.contains_edge(e) && dist[e.0] == usize::MAX {
            dist[e.0] = 0;
            queue.push_back(e);
        }
    }
    let mut out = BTreeSet::new();
    while let Some(e) = queue.pop_front() {
        out.insert(e);
        if dist[e.0] == radius {
            continue;
        }
        let (a, b) = g.endpoints(e).expect("live edge");
        for x in [a, b] {
            for &(_, f) in g.incident(x) {
                if dist[f.0] == usize::MAX {
                    dist[f.0] = dist[e.0] + 1;
                    queue.push_back(f);
                }
            }
        }
    }
    out
}

/// Detector state for one ambient graph and the graph classes are read from.
pub struct Scan<'a> {
    g: &'a Graph,
    h: Graph,
    class: Vec<Option<VertexClass>>,
}

impl<'a> Scan<'a> {
    /// Classes measured in the core of `g`.
    pub fn new(g: &'a Graph) -> Self {
        Scan::with_core(g, derive_core(g).graph().clone())
    }

    /// Classes measured in `h`, which must share `g`'s id space.
    pub fn with_core(g: &'a Graph, h: Graph) -> Self {
        let class = classify_all(&h);
        Scan { g, h, class }
    }

    fn cls(&self, v: VertexId) -> Option<VertexClass> {
        self.class.get(v.0).copied().flatten()
    }

    fn is(&self, v: VertexId, pred: impl Fn(VertexClass) -> bool) -> bool {
        self.cls(v).is_some_and(pred)
    }

    fn dh(&self, v: VertexId) -> usize {
        self.h.deg(v)
    }

    fn nbrs(&self, v: VertexId) -> Vec<VertexId> {
        let mut n: Vec<VertexId> = self.h.neighbors(v).collect();
        n.sort();
        n
    }

    fn other_neighbor(&self, v: VertexId, not: VertexId) -> VertexId {
        self.h
            .neighbors(v)
            .find(|&u| u != not)
            .expect("2-vertex has a second neighbor")
    }

    fn edge(&self, u: VertexId, v: VertexId) -> EdgeId {
        self.g.edge_between(u, v).expect("core edges are ambient edges")
    }

    fn build(
        &self,
        kind: ConfigKind,
        roles: Vec<(&'static str, VertexId)>,
        deletion: Vec<VertexId>,
        erase: Vec<EdgeId>,
    ) -> Configuration {
        let missing: Vec<EdgeId> = deletion
            .iter()
            .flat_map(|&v| self.g.incident(v).iter().map(|&(_, e)| e))
            .collect();
        let mut hints: BTreeSet<EdgeId> = erase.into_iter().collect();
        hints.extend(
            edges_near(self.g, &missing, 2)
                .into_iter()
                .filter(|&e| self.g.is_light(e).unwrap_or(false)),
        );
        for e in &missing {
            hints.remove(e);
        }
        Configuration {
            kind,
            roles,
            deletion,
            recolor_hints: hints.into_iter().collect(),
        }
    }

    /// Every match of `kind`, at most one per distinguished vertex, ordered
    /// by that vertex.
    pub fn detect(&self, kind: ConfigKind) -> Vec<Configuration> {
        let candidates: Vec<VertexId> = match kind {
            ConfigKind::DegreeOne => self.g.vertices().collect(),
            _ => self.h.vertices().collect(),
        };
        candidates
            .into_iter()
            .filter_map(|v| self.detect_at(kind, v))
            .collect()
    }

    /// The match of `kind` with distinguished vertex `v`, if any.
    pub fn detect_at(&self, kind: ConfigKind, v: VertexId) -> Option<Configuration> {
        match kind {
            ConfigKind::DegreeOne => self.degree_one(v),
            ConfigKind::ThreeTwoPoorTriple => self.poor_triple(v),
            ConfigKind::PoorBesidePoor => self.poor_beside_poor(v),
            ConfigKind::ThreeTwoBesideTwoOne => self.three_two_beside_two_one(v),
            ConfigKind::TrianglePendant => self.triangle_pendant(v),
            ConfigKind::AllSmallNeighbors => self.all_small(v),
            ConfigKind::DoubleThreeTwo => self.double_three_two(v),
            ConfigKind::ThreeTwoAndThreeOnePlus => self.three_two_and_three_one_plus(v),
            ConfigKind::FourWithTwoOneAndTwoSmall => self.four_two_one_two_small(v),
            ConfigKind::FourWithTwoTwoOnes => self.four_two_two_ones(v),
        }
    }

    /// First match in priority order.
    pub fn first(&self) -> Option<Configuration> {
        ConfigKind::ALL
            .into_iter()
            .find_map(|kind| self.detect(kind).into_iter().next())
    }

    /// Every match of every kind, in priority order.
    pub fn all(&self) -> Vec<Configuration> {
        ConfigKind::ALL.into_iter().flat_map(|k| self.detect(k)).collect()
    }

    fn degree_one(&self, v: VertexId) -> Option<Configuration> {
        if !self.g.contains_vertex(v) || self.g.deg(v) > 1 {
            return None;
        }
        Some(self.build(ConfigKind::DegreeOne, vec![("v", v)], vec![v], Vec::new()))
    }

    fn poor_triple(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) != 3 {
            return None;
        }
        let n = self.nbrs(v);
        if !n.iter().all(|&u| self.is(u, VertexClass::is_poor)) {
            return None;
        }
        Some(self.build(
            ConfigKind::ThreeTwoPoorTriple,
            vec![("v", v), ("v1", n[0]), ("v2", n[1]), ("v3", n[2])],
            vec![n[0]],
            Vec::new(),
        ))
    }

    fn poor_beside_poor(&self, v: VertexId) -> Option<Configuration> {
        if !self.is(v, |c| matches!(c, VertexClass::Three(1) | VertexClass::Three(2) | VertexClass::ThreeOnePlus)) {
            return None;
        }
        let p = self.nbrs(v).into_iter().find(|&u| self.is(u, VertexClass::is_poor))?;
        Some(self.build(ConfigKind::PoorBesidePoor, vec![("v", v), ("p", p)], vec![p], Vec::new()))
    }

    fn three_two_beside_two_one(&self, v: VertexId) -> Option<Configuration> {
        if !self.is(v, VertexClass::is_three_two) {
            return None;
        }
        let u = self.nbrs(v).into_iter().find(|&u| self.is(u, VertexClass::is_two_one))?;
        Some(self.build(
            ConfigKind::ThreeTwoBesideTwoOne,
            vec![("v", v), ("u", u)],
            vec![u],
            Vec::new(),
        ))
    }

    fn triangle_pendant(&self, v: VertexId) -> Option<Configuration> {
        let n = self.nbrs(v);
        for (i, &v1) in n.iter().enumerate() {
            for &v2 in &n[i + 1..] {
                if self.dh(v1) != 2 || self.dh(v2) != 2 || !self.h.has_edge(v1, v2) {
                    continue;
                }
                let weak_rest = n
                    .iter()
                    .any(|&u| u != v1 && u != v2 && self.dh(u) < 3);
                if self.dh(v) != 4 || weak_rest {
                    return Some(self.build(
                        ConfigKind::TrianglePendant,
                        vec![("v", v), ("v1", v1), ("v2", v2)],
                        vec![v1],
                        Vec::new(),
                    ));
                }
            }
        }
        None
    }

    fn all_small(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) == 0 || self.h.neighbors(v).any(|u| self.dh(u) >= 3) {
            return None;
        }
        let roles = std::iter::once(("v", v))
            .chain(self.nbrs(v).into_iter().zip(["v1", "v2", "v3", "v4"]).map(|(u, r)| (r, u)))
            .collect();
        Some(self.build(ConfigKind::AllSmallNeighbors, roles, vec![v], Vec::new()))
    }

    /// The two neighbors of a `3_2`-vertex other than `v`, sorted.
    fn twig(&self, w: VertexId, v: VertexId) -> (VertexId, VertexId) {
        let rest: Vec<VertexId> = self.nbrs(w).into_iter().filter(|&u| u != v).collect();
        (rest[0], rest[1])
    }

    fn double_three_two(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) != 3 {
            return None;
        }
        let n = self.nbrs(v);
        let threes: Vec<VertexId> = n
            .iter()
            .copied()
            .filter(|&u| self.is(u, VertexClass::is_three_two))
            .collect();
        if threes.len() < 2 {
            return None;
        }
        let (v1, v2) = (threes[0], threes[1]);
        let v3 = n.iter().copied().find(|&u| u != v1 && u != v2)?;
        let (x1, y1) = self.twig(v1, v);
        let (x2, y2) = self.twig(v2, v);
        Some(self.build(
            ConfigKind::DoubleThreeTwo,
            vec![
                ("v", v),
                ("v1", v1),
                ("v2", v2),
                ("v3", v3),
                ("x1", x1),
                ("y1", y1),
                ("x2", x2),
                ("y2", y2),
            ],
            vec![v1],
            vec![self.edge(v2, x2)],
        ))
    }

    fn three_two_and_three_one_plus(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) != 3 {
            return None;
        }
        let n = self.nbrs(v);
        let v1 = n.iter().copied().find(|&u| self.is(u, VertexClass::is_three_two))?;
        let v2 = n
            .iter()
            .copied()
            .find(|&u| self.is(u, |c| c == VertexClass::ThreeOnePlus))?;
        let x2 = self.nbrs(v2).into_iter().find(|&u| self.dh(u) == 2)?;
        let x2b = self.other_neighbor(x2, v2);
        Some(self.build(
            ConfigKind::ThreeTwoAndThreeOnePlus,
            vec![("v", v), ("v1", v1), ("v2", v2), ("x2", x2), ("x2'", x2b)],
            vec![x2],
            Vec::new(),
        ))
    }

    fn four_two_one_two_small(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) != 4 {
            return None;
        }
        let n = self.nbrs(v);
        let small = |u: VertexId| self.is(u, |c| c.is_two_zero() || c.is_three_two());
        // (v1, v2, v3, v4), with v2 the 2_0-vertex when there is one.
        let mut fallback = None;
        for &v1 in n.iter().filter(|&&u| self.is(u, VertexClass::is_two_one)) {
            let rest: Vec<VertexId> = n.iter().copied().filter(|&u| u != v1).collect();
            for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let (p, q, v4) = (rest[a], rest[b], rest[c]);
                if !small(p) || !small(q) || self.g.deg(v4) > 3 {
                    continue;
                }
                let zero_first = if self.is(q, VertexClass::is_two_zero) && !self.is(p, VertexClass::is_two_zero) {
                    (q, p)
                } else {
                    (p, q)
                };
                if self.is(zero_first.0, VertexClass::is_two_zero) {
                    return Some(self.nine_two_zero(v, v1, zero_first, v4));
                }
                fallback.get_or_insert((v1, zero_first, v4));
            }
        }
        let (v1, (v2, v3), v4) = fallback?;
        let x1 = self.other_neighbor(v1, v);
        let (y21, y22) = self.twig(v2, v);
        Some(self.build(
            ConfigKind::FourWithTwoOneAndTwoSmall,
            vec![
                ("v", v),
                ("v1", v1),
                ("v2", v2),
                ("v3", v3),
                ("v4", v4),
                ("x1", x1),
                ("y21", y21),
                ("y22", y22),
            ],
            vec![v2],
            vec![self.edge(v, v3), self.edge(v1, x1)],
        ))
    }

    fn nine_two_zero(
        &self,
        v: VertexId,
        v1: VertexId,
        (v2, v3): (VertexId, VertexId),
        v4: VertexId,
    ) -> Configuration {
        let x1 = self.other_neighbor(v1, v);
        self.build(
            ConfigKind::FourWithTwoOneAndTwoSmall,
            vec![("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4), ("x1", x1)],
            vec![v1],
            vec![self.edge(v1, x1)],
        )
    }

    fn four_two_two_ones(&self, v: VertexId) -> Option<Configuration> {
        if self.dh(v) != 4 {
            return None;
        }
        let n = self.nbrs(v);
        let ones: Vec<VertexId> = n
            .iter()
            .copied()
            .filter(|&u| self.is(u, VertexClass::is_two_one))
            .collect();
        if ones.len() < 2 {
            return None;
        }
        let (v1, v2) = (ones[0], ones[1]);
        let v3 = n
            .iter()
            .copied()
            .filter(|&u| u != v1 && u != v2)
            .find(|&u| self.dh(u) == 2 || self.is(u, VertexClass::is_poor))?;
        let x1 = self.other_neighbor(v1, v);
        let x2 = self.other_neighbor(v2, v);
        Some(self.build(
            ConfigKind::FourWithTwoTwoOnes,
            vec![("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("x1", x1), ("x2", x2)],
            vec![v1],
            vec![self.edge(v2, x2)],
        ))
    }
}

/// The first reducible configuration of `g` in priority order: pendant and
/// isolated vertices first, then the remaining kinds, ties broken by the
/// smallest distinguished vertex.
pub fn find_reducible(g: &Graph) -> Option<Configuration> {
    Scan::new(g).first()
}

/// Every configuration of `g`, in priority order.
pub fn find_all_reducible(g: &Graph) -> Vec<Configuration> {
    Scan::new(g).all()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, pairs).unwrap()
    }

    #[test]
    fn pendant_is_degree_one() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]);
        let c = find_reducible(&g).unwrap();
        assert_eq!(c.kind, ConfigKind::DegreeOne);
        assert_eq!(c.witness(), VertexId(5));
        assert_eq!(c.deletion, vec![VertexId(5)]);
    }

    #[test]
    fn triangle_with_three_apex() {
        // triangle 0,1,2 with apex 0 also joined to a 5-cycle at 3.
        let g = graph(
            8,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)],
        );
        // 0 and 3 are adjacent 3_2-vertices, so poor-beside-poor wins overall.
        assert_eq!(find_reducible(&g).unwrap().kind, ConfigKind::PoorBesidePoor);
        let c = Scan::new(&g).detect(ConfigKind::TrianglePendant).remove(0);
        assert_eq!(c.witness(), VertexId(0));
        assert_eq!(c.deletion, vec![VertexId(1)]);
    }

    #[test]
    fn path_interior_has_all_small_neighbors() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let c = find_reducible(&c5).unwrap();
        assert_eq!(c.kind, ConfigKind::AllSmallNeighbors);
        assert_eq!(c.witness(), VertexId(0));
    }

    #[test]
    fn isolated_vertex_counts_as_degree_one() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 0)]);
        let c = find_reducible(&g).unwrap();
        assert_eq!((c.kind, c.witness()), (ConfigKind::DegreeOne, VertexId(3)));
    }

    #[test]
    fn k4_has_no_configuration() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(find_reducible(&k4).is_none());
    }

    #[test]
    fn edges_near_counts_line_distance() {
        let p = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let near = edges_near(&p, &[EdgeId(0)], 2);
        assert_eq!(near, [EdgeId(0), EdgeId(1), EdgeId(2)].into_iter().collect());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ConfigKind::ALL {
            assert_eq!(k.name().parse::<ConfigKind>().unwrap(), k);
        }
        assert!("nonsense".parse::<ConfigKind>().is_err());
    }

    #[test]
    fn hints_exclude_missing_edges() {
        // 0-1-2-3-4-5-0 with chord-free cycle: all edges light.
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let c = find_reducible(&c6).unwrap();
        assert_eq!(c.deletion, vec![VertexId(0)]);
        let missing = [EdgeId(0), EdgeId(5)];
        assert!(c.recolor_hints.iter().all(|e| !missing.contains(e)));
        assert_eq!(c.recolor_hints, vec![EdgeId(1), EdgeId(2), EdgeId(3), EdgeId(4)]);
    }
}
