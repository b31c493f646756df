//! Construction, validation and recognition of (1,1)-knots together with
//! essential meridional surfaces, assembled from pieces of types A to F.
//!
//! The crate is organised bottom-up:
//!
//! * [`torus`]: slopes, ambient manifolds and 2-bridge certificates;
//! * [`pieces`]: the six piece types and their numbered conditions;
//! * [`assembler`]: gluing pieces into an assembly, global conditions and
//!   surface invariants, with [`cells`] as an independent Euler oracle;
//! * [`morse`]: level-event traces, replay and recognition;
//! * [`enumerate`]: bounded search for constructions;
//! * [`descriptor`]: the line-oriented text format for assemblies.

pub mod assembler;
pub mod cells;
pub mod descriptor;
pub mod enumerate;
mod error;
pub mod morse;
pub mod pieces;
mod report;
pub mod torus;

pub use assembler::{
    knot_check, surface_invariants, validate_assembly, Assembly, ComponentReport, KnotReport,
    SurfaceReport,
};
pub use cells::cell_complex_chi;
pub use enumerate::{
    classify_genus1, find_construction, slope_sequences, Genus1Class, SearchFailure, SearchSpec,
};
pub use error::Error;
pub use morse::{
    endpoint_kinds, recognize, replay, trace, EndpointKind, MorseEvent, MorseTrace, Skeleton,
};
pub use pieces::{
    fragment_report, validate_piece, CrossingEvent, MidGluing, Piece, PieceKind, PieceType, Side,
};
pub use report::{Condition, ValidationReport, Violation};
pub use torus::{delta, ManifoldSpec, Slope, TwoBridgeFraction};
