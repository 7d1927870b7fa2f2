//! Geometry, covering-group actions and exact exchange phases for abelian
//! anyons in 2+1 dimensional Minkowski space.
//!
//! The crate is organised bottom-up:
//!
//! * [`minkowski`]: vectors, Lorentz matrices and lifted covering-group elements.
//! * [`cone`]: space-like cones and wedges, path classes as lifted angular
//!   arcs, causal separation and relative winding numbers.
//! * [`phase`]: exact roots of unity.
//! * [`sector`]: abelian anyon models and their phase formulas.
//! * [`field`]: the symbolic field algebra (exchange, adjoint, twist, CPT,
//!   pseudo-Tomita map) and a clock/shift lattice oracle.
//! * [`wigner`]: single-particle representations with arbitrary real spin.
//! * [`cli`]: scene and model files, verification suites and reports.
//!
//! A narrative guide lives in the `book/` directory of the repository; its code
//! listings are compiled as doc-tests of this crate.

pub mod cli;
pub mod cone;
pub mod field;
pub mod minkowski;
pub mod phase;
pub mod sector;
pub mod wigner;

pub use cone::{ConeKind, ConePath, LiftedArc, ReferenceFrame, SpacelikeDirection};
pub use minkowski::{CoveringLorentz, CoveringPoincare, LorentzMatrix, MVec3};
pub use phase::CyclotomicPhase;
pub use sector::{AnyonModel, ChargeGroup};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/covering-group.md")]
    mod covering_group {}
    #[doc = include_str!("../../../book/src/cones-and-winding.md")]
    mod cones_and_winding {}
    #[doc = include_str!("../../../book/src/phases.md")]
    mod phases {}
    #[doc = include_str!("../../../book/src/field-algebra.md")]
    mod field_algebra {}
    #[doc = include_str!("../../../book/src/twist-and-cpt.md")]
    mod twist_and_cpt {}
    #[doc = include_str!("../../../book/src/wigner.md")]
    mod wigner {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
