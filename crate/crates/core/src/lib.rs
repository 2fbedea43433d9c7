//! Control cabinet layout optimization.
//!
//! Components are arranged by a permutation ([`Layout`]) that is shelf-packed onto
//! DIN-rail rows ([`Placement`]). Each layout is scored on two minimized objectives,
//! a heat-placement penalty and total Manhattan wire length, and searched with a
//! Pareto simulated annealing engine ([`psa`]) that keeps a non-dominated archive.

pub mod bench;
pub mod datasets;
pub mod edit;
pub mod error;
pub mod io;
pub mod model;
pub mod objectives;
pub mod oracle;
pub mod placement;
pub mod psa;

pub use error::{Error, Result};
pub use model::{dominates, normalize_edges, validate_components, CabinetSpec, Component, Edge, ObjectiveVector};
pub use objectives::{evaluate, heat_level, wire_length, EvaluationContext};
pub use placement::{component_center, pack, total_configurations, Layout, Placement};
pub use psa::{run, run_warm, OptimizationResult, ParetoArchive, PsaConfig};
