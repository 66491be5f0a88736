//! Exact computations for the odd block of category O of pe(2): modules,
//! homomorphisms, the quiver algebra of the block, and minimal graded
//! projective resolutions over it.

pub mod error;
pub mod exactla;
pub mod homalg;
pub mod pe2core;
pub mod quiveralg;
pub mod repmodules;
pub mod resolution;

pub use error::{Error, Result};
