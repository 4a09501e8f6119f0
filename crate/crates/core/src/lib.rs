//! Data-driven interlocking ring sculptures.
//!
//! Monthly incident statistics are encoded into ring parameters, turned into
//! print-in-place meshes, exported as binary STL, and the rotating rings'
//! shadows are simulated on a cylindrical screen.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the command line uses.

// `!(a < b)` is used on purpose so NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data_model;
pub mod encoder;
pub mod geometry;
pub mod math;
pub mod mesh;
pub mod scalar;
pub mod shadow_sim;

pub use scalar::Scalar;

pub type Vec3 = math::Vec3<f64>;
pub type Mesh = mesh::TriMesh<f64>;
pub type MeshF32 = mesh::TriMesh<f32>;
pub type Params = encoder::SculptureParams<f64>;
pub type EncodingConfig = encoder::EncodingConfig<f64>;
pub type GeometryConfig = geometry::GeometryConfig<f64>;
pub type SculptureAssembly = geometry::SculptureAssembly<f64>;
pub type Scene = shadow_sim::Scene<f64>;
