//! Exact computations for homogeneous CR geometries of hypersurface type
//! modelled on `su(p+1, q+1)`: symmetries of the standard model, extensions
//! and their curvature, normalization, and the symmetric-CR-algebra test.

pub mod scalars;
pub mod linalg;
pub mod sualg;
pub mod symmetries;
pub mod extensions;
pub mod builtins;
pub mod cralgebra;
pub mod io;
pub mod regression;

#[cfg(test)]
mod invariants;
