//! Exact computations for Hom-Lie superalgebras: structure checks,
//! representations, twisted cohomology, derivations, and the q-deformed Witt
//! superalgebra on a finite window of degrees.

pub mod catalog;
pub mod cohomology;
pub mod derivations;
pub mod error;
pub mod homlie;
pub mod io;
pub mod linalg;
pub mod parity;
pub mod qwitt;
pub mod repr;
pub mod scalars;

pub use error::{Error, Result};
pub use parity::Parity;
