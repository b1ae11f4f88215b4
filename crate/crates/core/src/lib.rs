//! Numerical toolkit for curvature energies of immersed surface patches with
//! free boundaries.
//!
//! The crate works with immersions of the half-strip `[-pi, pi] x [0, 1]`
//! (periodic directions are handled by the sample surfaces themselves) and
//! provides:
//!
//! - curvature energies (Willmore, total second fundamental form, trace-free)
//!   and their first variations ([`energy`]);
//! - reflection extension of a patch across a plane or a line and the
//!   associated parity diagnostics ([`reflection`]);
//! - residuals of the natural boundary conditions satisfied by critical
//!   immersions meeting a support surface orthogonally ([`boundary`]);
//! - spectral harmonic and biharmonic extension of boundary data on the
//!   half-plane ([`spectral`]);
//! - a gallery of closed-form surfaces with exact jets ([`gallery`]);
//! - grid quadrature/finite differences ([`grid`]) and serialization
//!   ([`io`]).

pub mod boundary;
pub mod convergence;
pub mod energy;
pub mod error;
pub mod gallery;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod jet;
pub mod math;
pub mod reflection;
pub mod spectral;
pub mod surface;
pub mod testgen;

pub use error::{Error, Result};
pub use geometry::{compute_geometry, PointGeometry, SurfaceGeometry, EPS_WEAK};
pub use grid::ParamGrid;
pub use math::{vec3, Sym2, Vec3};
pub use surface::{DerivScheme, Immersion, VariationField};
