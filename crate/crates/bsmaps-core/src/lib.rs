//! Bowen-Series and higher Bowen-Series circle maps of punctured-sphere
//! Fuchsian groups as piecewise-Möbius Markov systems.
//!
//! The crate is organized bottom-up:
//!
//! - [`moebius`]: Möbius and anti-Möbius maps, geodesics, reflections.
//! - [`circle_maps`]: piecewise circle maps and their structural checks.
//! - [`freegroup`]: reduced words, Cayley balls, cone masses, growth.
//! - [`symbolic`]: subshifts of finite type, Parry measures, orbit search.
//! - [`catalog`]: the concrete groups and maps.
//! - [`conjugacy`]: the conjugacy to `z^D`, the question-mark function.
//! - [`dimension`]: exact interval maps, Lyapunov and dimension brackets.

pub mod catalog;
pub mod circle_maps;
pub mod conjugacy;
pub mod dimension;
pub mod freegroup;
pub mod moebius;
pub mod symbolic;

pub use catalog::{CatalogError, GroupPresentation, LabeledMap, SidePairing};
pub use circle_maps::{
    mateability_report, Arc, BreakPointClass, BreakPointReport, CircleMapError, IdealPolygon, ItemStatus,
    MateabilityReport, Piece, PiecewiseMap, Side, TransitionMatrix,
};
pub use conjugacy::{CircleHomeo, ConjugacyError, PhiValue};
pub use dimension::{
    DimensionError, FlPiece, HdEstimate, IntervalMarkovMap, LyapunovBracket, Rational, Variant,
};
pub use freegroup::{CayleyBall, FreeGroupError, FreeWord, GenSet};
pub use moebius::{BoundaryPoint, ElementKind, Geodesic, Model, MoebiusError, MoebiusMap};
pub use num_complex::Complex64;
pub use symbolic::{MarkovMeasure, OeVerdict, Sft, SymbolicError};
