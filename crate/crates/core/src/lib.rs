//! Numerical machinery for Schwarzian derivatives of harmonic mappings and
//! their Weierstrass-Enneper lifts: jet arithmetic, an expression language
//! for analytic functions on the disk, univalence-criterion scans, shear
//! constructions, chord-arc estimates and minimal-surface mesh export.
//!
//! The companion guide in `book/` walks through the concepts; the `paper-verify`
//! CLI subcommand runs the full verification table.

pub mod chordarc;
pub mod criteria;
pub mod error;
pub mod expr;
pub mod grid;
pub mod jets;
pub mod lift;
pub mod schwarzian;
pub mod shear;
pub mod verify;

pub use error::{Error, Result};

/// Guide chapters from `book/`, included here so that every code block in
/// the book compiles and runs as a doc-test of this crate.
#[doc(hidden)]
pub mod guide {
    #[doc = include_str!("../../../book/src/jets.md")]
    pub mod jets {}
    #[doc = include_str!("../../../book/src/schwarzian.md")]
    pub mod schwarzian {}
    #[doc = include_str!("../../../book/src/criteria.md")]
    pub mod criteria {}
    #[doc = include_str!("../../../book/src/shears.md")]
    pub mod shears {}
    #[doc = include_str!("../../../book/src/lifts.md")]
    pub mod lifts {}
    #[doc = include_str!("../../../book/src/chordarc.md")]
    pub mod chordarc {}
}
pub use expr::AnalyticExpr;
pub use jets::Jet;
pub use schwarzian::HarmonicMapping;
