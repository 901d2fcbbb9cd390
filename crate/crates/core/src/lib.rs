//! Zero forcing on simple graphs: closures and chronologies, an exact
//! solver for `Z(G)`, the girth/degree lower bound, and the auxiliary
//! structures used to check that bound on concrete graphs.

pub mod bounds;
pub mod forcing;
pub mod graph;
pub mod machinery;
pub mod set;
pub mod solver;

pub use forcing::{derived_set, is_zero_forcing_set, Chronology, ForceEvent};
pub use graph::{Girth, Graph};
pub use set::VertexSet;
pub use solver::{zero_forcing_number, SolveOutcome, SolverConfig};
