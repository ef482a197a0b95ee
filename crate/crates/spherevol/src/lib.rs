//! Volume bounds and extremal configurations for polyhedra inscribed in
//! the unit sphere.
//!
//! The library computes sharp upper bounds for the volume of an inscribed
//! polyhedron from combinatorial data (face/vertex/edge counts) or from
//! per-face geometry (spherical area τ and maximal side arc c), analyzes
//! the concavity domain that makes the per-face aggregation valid, builds
//! the extremal example meshes, verifies the underlying inequalities by
//! dense sampling, and reproduces the extremal configurations by direct
//! numerical optimization.
//!
//! Entry points by theme:
//!
//! - [`bounds`]: the bound formulas — combinatorial ([`bounds::polyhedron_bound`],
//!   [`bounds::icosahedron_bound`]), per-face ([`bounds::v_tau_c`] and its
//!   parameterizations), aggregated ([`bounds::mixed_face_bound`],
//!   [`bounds::uniform_bound`], [`bounds::two_tetra_assembly_bound`]), and
//!   the p-gon family ([`bounds::v_pgon_m_alpha`], [`bounds::pgon_tau_bound`]).
//! - [`domain`]: closed-form Hessian of v(τ, c), the boundary curve
//!   c = f(τ), the threshold [`domain::omega`], and point classification.
//! - [`spherical`]: spherical-triangle kernels — excess formulas, facial
//!   volumes of chordal triangles, the area relation linking altitude and
//!   area, and central sector areas.
//! - [`mesh`]: inscribed triangle meshes, their star volumes, per-face
//!   statistics, and the extremal example polyhedra.
//! - [`hull`]: deterministic incremental convex hull for point
//!   configurations on the sphere.
//! - [`optimize`]: seeded multi-restart ascent reproducing the extremal
//!   configurations, plus the sampling verifiers for each inequality.
//! - [`rng`]: the splittable deterministic generator used everywhere
//!   randomness appears; identical seeds give identical results.

pub mod bounds;
pub mod domain;
pub mod error;
pub mod hull;
pub mod mesh;
pub mod optimize;
pub mod rng;
pub mod spherical;

mod vec3;

pub use error::{Error, Result};
