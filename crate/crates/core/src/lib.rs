//! Random planar triangulations built by necklace growth, their equilateral
//! conformal structure, discrete flattening of finite discs, and the
//! diagnostics used to probe parabolicity of their limits.

pub mod diagnostics;
pub mod experiments;
pub mod geometry;
pub mod linalg;
pub mod map;
pub mod necklace;
pub mod render;
pub mod surface;
pub mod uniformizer;
