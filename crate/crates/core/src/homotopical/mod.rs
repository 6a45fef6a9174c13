//! Lifting problems, the lifting relation between maps, a bounded small object argument and
//! retract search, all as strict (set-level) constructions on finite complexes.

pub mod factor;
pub mod lifting;
pub mod retract;

pub use factor::{factor_bounded, replay, Attachment, FactorizationResult, GeneratingMap, ResidualSquare};
pub use lifting::{boxslash, find_lift, squares, BoxslashVerdict, LiftingProblem, Square};
pub use retract::{retract_search, RetractDiagram};
