//! Simple perfect matchings, blockers and co-blockers of the complete convex
//! geometric graph `CGG(2m)`.
//!
//! * [`geometry`]: vertices, edges, bit-vector edge sets and the
//!   order / direction / neighbor / crossing predicates.
//! * [`matchings`]: perfect matchings, the simple and semi-simple
//!   predicates and their enumerators.
//! * [`blockers`]: the caterpillar parametrization of blockers, recognition,
//!   star blockers and witnesses that a matching misses a blocker.
//! * [`transversal`]: an exact minimum-transversal oracle used to derive
//!   blockers and co-blockers from scratch.
//! * [`counting`]: closed-form counts and the co-blocker bounds.
//! * [`render`]: SVG output.
//! * [`verify`]: named cross-checks behind `cgg verify`.

pub mod blockers;
pub mod counting;
pub mod error;
pub mod family;
pub mod geometry;
pub mod limits;
pub mod matchings;
mod par;
pub mod render;
pub mod transversal;
pub mod verify;

pub use blockers::{
    build_blocker, enumerate_blockers, star_blocker, validate_blocker, witness_missed_blocker,
    BlockerSpec,
};
pub use counting::{
    blocker_count, catalan, coblocker_bounds, coblocker_count, generate_lower_bound_family,
    CountReport,
};
pub use error::{CggError, Result};
pub use family::{Family, FamilyLabel};
pub use geometry::{Edge, EdgeSet, GraphContext, Relabel};
pub use limits::Limits;
pub use matchings::{
    enumerate_odd_matchings, enumerate_perfect_matchings, enumerate_semi_simple, enumerate_spms,
    Matching,
};
pub use render::{HighlightClass, RenderSpec};
pub use transversal::{
    derive_sequence, enumerate_min_transversals, hits_all, min_transversal_size, TransversalProblem,
};
