//! Reducible configurations, the reduction loop, and discharging.

pub mod config;
pub mod constructive;
pub mod discharge;
pub mod extend;

pub use config::{edges_near, find_all_reducible, find_reducible, ConfigKind, Configuration, Scan};
pub use constructive::{
    color_constructive, reduce_and_color, reduce_once, ConstructiveColoring, EngineError, StepRecord,
    THEOREM_COLORS,
};
pub use discharge::{apply_discharging, audit_charges, charges_initial, AuditReport, Charge, ChargeReport};
pub use extend::{extend_coloring, ExtendError, Extension};
