//! Conformal geometry on the n-sphere and tools built on top of it:
//! closed-form ring moduli, a discrete solver for the variational modulus of
//! curve families (capacities, Teichmüller-type extremal rings,
//! quasihyperbolic distance), uniform-perfectness analysis of compact sets,
//! and quasiregular dynamics experiments (Julia-set sampling, Hölder and
//! dilatation probes, box-counting dimension).
//!
//! Dimensions 2 and 3 are supported for grid computation; dimension 4 only
//! for closed-form constants.

pub mod cloud;
pub mod error;
pub mod grid;
pub mod modulus;
pub mod sphere;

pub use error::{Error, Result};
