//! Extending a coloring of `G - X` back to `G`.
//!
//! The search deepens over three recolor sets: the uncolored edges alone,
//! then those plus the configuration's hint edges, then everything within
//! line-graph distance two of the uncolored edges. Each level is searched
//! exhaustively, with light edges branched on last.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::conflict::{Color, Coloring, ConflictGraph};
use crate::exact::{Outcome, Search};
use crate::graph::{EdgeId, Graph};
use crate::reduce::config::edges_near;

/// Search nodes allowed per deepening level.
pub const LEVEL_BUDGET: u64 = 2_000_000;

/// The deepest level; reaching it means the hints were not enough.
pub const FALLBACK_LEVEL: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub coloring: Coloring,
    /// 0: uncolored edges only, 1: plus hints, 2: plus distance-two ball.
    pub level: u8,
}

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
pub enum ExtendError {
    #[error("no extension with {k} colors even after recoloring every edge within distance two")]
    Exhausted { k: Color },
    #[error("edge {0} is not in the conflict graph")]
    UnknownEdge(EdgeId),
}

fn try_level(
    cg: &ConflictGraph,
    g: &Graph,
    partial: &Coloring,
    free: &BTreeSet<EdgeId>,
    k: Color,
) -> Result<Option<Coloring>, ExtendError> {
    let n = cg.node_count();
    let mut fixed = vec![0usize; n];
    for (i, &e) in cg.edges().iter().enumerate() {
        if !free.contains(&e) {
            if let Some(c) = partial.get(e) {
                fixed[i] = c as usize;
            }
        }
    }
    let mut nodes = Vec::with_capacity(free.len());
    for &e in free {
        nodes.push(cg.node(e).ok_or(ExtendError::UnknownEdge(e))?);
    }
    let mut search = Search::new(cg.adjacency(), k as usize, &fixed, nodes.clone())
        .with_budget(LEVEL_BUDGET);
    for (&e, &i) in free.iter().zip(&nodes) {
        if g.is_light(e).unwrap_or(false) {
            search.defer(i);
        }
    }
    Ok(match search.run() {
        Outcome::Found(colors) => {
            let mut out = partial.clone().with_k(k);
            for (&e, &i) in free.iter().zip(&nodes) {
                out.set(e, colors[i] as Color);
            }
            Some(out)
        }
        Outcome::NoneExists | Outcome::BudgetExhausted => None,
    })
}

/// Extends `partial`, valid on its domain, to a valid total coloring of `g`
/// with colors `1..=k`, changing colors only on `missing`, on the hints, and
/// (as a last resort) on the distance-two neighborhood of `missing`.
pub fn extend_coloring(
    g: &Graph,
    cg: &ConflictGraph,
    partial: &Coloring,
    missing: &[EdgeId],
    recolor_hints: &[EdgeId],
    k: Color,
) -> Result<Extension, ExtendError> {
    let mut free: BTreeSet<EdgeId> = missing.iter().copied().collect();
    free.extend(cg.edges().iter().copied().filter(|&e| partial.get(e).is_none()));
    if free.is_empty() {
        return Ok(Extension {
            coloring: partial.clone().with_k(k),
            level: 0,
        });
    }
    let seeds: Vec<EdgeId> = free.iter().copied().collect();
    let mut previous: Option<BTreeSet<EdgeId>> = None;
    for level in 0..=FALLBACK_LEVEL {
        match level {
            1 => free.extend(recolor_hints.iter().copied().filter(|&e| g.contains_edge(e))),
            2 => free.extend(edges_near(g, &seeds, 2)),
            _ => {}
        }
        if previous.as_ref() == Some(&free) {
            continue;
        }
        if let Some(coloring) = try_level(cg, g, partial, &free, k)? {
            return Ok(Extension { coloring, level });
        }
        previous = Some(free.clone());
    }
    Err(ExtendError::Exhausted { k })
}
