//! Injective edge-coloring of graphs with maximum degree at most four and
//! maximum average degree below 8/3.
//!
//! Two edges `e` and `f` conflict when a third edge joins an endpoint of `e`
//! to an endpoint of `f`. Every eligible graph admits a conflict-free
//! coloring with seven colors; [`reduce::color_constructive`] builds one.

pub mod conflict;
pub mod exact;
mod flow;
pub mod graph;
pub mod mad;
pub mod reduce;
pub mod generate;
pub mod io;
pub mod report;
