//! Unknotting numbers of link diagrams on the sphere.

pub mod bracket;
pub mod constructions;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod poly;
pub mod search;

pub use bracket::{CrossingSet, StateTable};
pub use diagram::{ArcId, Crossing, CrossingId, Diagram, DiagramReport, Role, RoleLabel};
pub use error::{Error, Result};
pub use moves::{apply_move, available_moves, classify_triviality, Move, MoveKind, SearchBudget, TrivialityVerdict, Verdict};
pub use poly::LaurentPoly;
