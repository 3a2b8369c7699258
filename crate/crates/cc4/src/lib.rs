//! Inverse mass problem for the symmetric concave planar four-body
//! configuration.
//!
//! Bodies sit at q1 = (-1, 0), q2 = (1, 0), q3 = (0, t), q4 = (0, s) with
//! t > s > 0. Given the shape (s, t), the crate computes the positive masses
//! (when they exist) that make the configuration central, classifies the
//! (s, t) plane into feasibility regions, and cross-checks everything against
//! the raw Newtonian equations and a relative-equilibrium integration.
//!
//! Module map:
//! - [`shape`]: shape parameters, the five sign discriminants, c_y.
//! - [`masses`]: closed-form masses and the q4-centered special case.
//! - [`verify`]: Newtonian residual engine and the linear-solve oracle.
//! - [`regions`]: boundary curves, point classification, raster scans.
//! - [`dynamics`]: RK4 relative-equilibrium validation.

pub mod dynamics;
pub mod error;
pub mod masses;
pub mod regions;
pub mod shape;
pub mod verify;

pub use error::{CcError, Result};
pub use masses::{lambda_for_target_m4, solve_masses, solve_q4_centered, MassSolution, SpecialCaseSolution};
pub use regions::{classify, scan, triple_intersection, RegionLabel};
pub use shape::{center_ordinate, sign_profile, ShapeParams, Sign, SignProfile, DEFAULT_EPS_SIGN};
pub use verify::{cc_residual, solve_reduced_system, PlanarConfig, ResidualReport};
