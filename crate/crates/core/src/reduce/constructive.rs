//! The delete, recurse, extend loop that produces 7-colorings.

use serde::Serialize;
use thiserror::Error;

use crate::conflict::{build_conflict_graph, Color, Coloring};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::mad::{is_eligible, Eligibility};
use crate::reduce::config::{find_reducible, ConfigKind, Configuration};
use crate::reduce::extend::{extend_coloring, ExtendError, Extension};

/// Palette size guaranteed for eligible graphs.
pub const THEOREM_COLORS: Color = 7;

#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("{}", .0.explain())]
    Ineligible(Box<Eligibility>),
    /// No configuration on a nonempty graph: a detector coverage bug when
    /// the graph is eligible.
    #[error("no reducible configuration in a graph with {vertices} vertices and {edges} edges")]
    NoConfiguration { vertices: usize, edges: usize },
    /// Extension failed after full deepening: the proof contract was violated.
    #[error("extension failed after {kind} at vertex {}: {source}", .witness.0 + 1)]
    ExtensionFailed {
        kind: ConfigKind,
        witness: VertexId,
        source: ExtendError,
    },
    #[error("maximum degree {0} exceeds 4")]
    DegreeTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub kind: ConfigKind,
    pub witness: VertexId,
    /// Deepening level the extension needed.
    pub level: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructiveColoring {
    pub coloring: Coloring,
    /// Reduction steps, outermost first.
    pub steps: Vec<StepRecord>,
}

impl ConstructiveColoring {
    pub fn colors_used(&self) -> usize {
        self.coloring.colors_used()
    }

    /// Steps whose extension needed the distance-two fallback.
    pub fn fallbacks(&self) -> impl Iterator<Item = &StepRecord> {
        self.steps.iter().filter(|s| s.level >= crate::reduce::extend::FALLBACK_LEVEL)
    }
}

fn missing_edges(g: &Graph, deletion: &[VertexId]) -> Vec<EdgeId> {
    let mut missing: Vec<EdgeId> = deletion
        .iter()
        .flat_map(|&v| g.incident(v).iter().map(|&(_, e)| e))
        .collect();
    missing.sort();
    missing.dedup();
    missing
}

fn delete(g: &Graph, deletion: &[VertexId]) -> Graph {
    let mut smaller = g.clone();
    for &v in deletion {
        if smaller.contains_vertex(v) {
            smaller.remove_vertex(v).expect("vertex is live");
        }
    }
    smaller
}

/// Extends a coloring of `g` minus the configuration's deletion set to `g`.
pub fn extend_over(
    g: &Graph,
    config: &Configuration,
    inner: &Coloring,
) -> Result<Extension, EngineError> {
    let cg = build_conflict_graph(g);
    let missing = missing_edges(g, &config.deletion);
    extend_coloring(g, &cg, inner, &missing, &config.recolor_hints, THEOREM_COLORS).map_err(
        |source| EngineError::ExtensionFailed {
            kind: config.kind,
            witness: config.witness(),
            source,
        },
    )
}

/// Runs the reduction loop without checking eligibility first.
pub fn reduce_and_color(g: &Graph) -> Result<ConstructiveColoring, EngineError> {
    if g.max_degree() > 4 {
        return Err(EngineError::DegreeTooLarge(g.max_degree()));
    }
    let mut work = g.clone();
    let mut stack: Vec<(Graph, Configuration)> = Vec::new();
    while work.edge_count() > 0 {
        let config = find_reducible(&work).ok_or(EngineError::NoConfiguration {
            vertices: work.vertex_count(),
            edges: work.edge_count(),
        })?;
        let smaller = delete(&work, &config.deletion);
        debug_assert!(smaller.vertex_count() < work.vertex_count());
        stack.push((std::mem::replace(&mut work, smaller), config));
    }
    let mut coloring = Coloring::new(THEOREM_COLORS);
    let mut steps = Vec::with_capacity(stack.len());
    while let Some((graph, config)) = stack.pop() {
        let ext = extend_over(&graph, &config, &coloring)?;
        coloring = ext.coloring;
        steps.push(StepRecord {
            kind: config.kind,
            witness: config.witness(),
            level: ext.level,
        });
    }
    steps.reverse();
    Ok(ConstructiveColoring { coloring, steps })
}

/// A valid injective coloring with at most seven colors of an eligible graph.
pub fn color_constructive(g: &Graph) -> Result<ConstructiveColoring, EngineError> {
    let eligibility = is_eligible(g);
    if !eligibility.eligible {
        return Err(EngineError::Ineligible(Box::new(eligibility)));
    }
    reduce_and_color(g)
}

/// One reduction step on a given configuration: delete, color the rest with
/// the reduction loop, and extend. Returns the extension of the outer step.
pub fn reduce_once(g: &Graph, config: &Configuration) -> Result<Extension, EngineError> {
    let inner = reduce_and_color(&delete(g, &config.deletion))?;
    extend_over(g, config, &inner.coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::validate;

    fn check(g: &Graph) -> ConstructiveColoring {
        let out = color_constructive(g).unwrap();
        let report = validate(&build_conflict_graph(g), &out.coloring);
        assert!(report.is_valid(), "{report:?}");
        assert!(out.colors_used() <= 7);
        out
    }

    #[test]
    fn c5() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let out = check(&g);
        assert!(out.colors_used() >= 2);
    }

    #[test]
    fn edgeless() {
        let out = color_constructive(&Graph::new(3)).unwrap();
        assert!(out.coloring.is_empty());
        assert!(out.steps.is_empty());
        let out = color_constructive(&Graph::new(0)).unwrap();
        assert!(out.coloring.is_empty());
    }

    #[test]
    fn spider_with_three_legs() {
        let g = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)],
        )
        .unwrap();
        check(&g);
    }

    #[test]
    fn rejects_ineligible() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(color_constructive(&k4), Err(EngineError::Ineligible(_))));
    }

    #[test]
    fn each_step_deletes_a_vertex() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6)]).unwrap();
        let out = check(&g);
        assert!(out.steps.len() <= g.vertex_count());
    }
}
