//! Binary matroids over GF(2) with the splitting, element-splitting and
//! es-splitting operations, exhaustive minor search, and a harness that checks
//! excluded-minor statements about them over small graph families.
//!
//! Everything is desk scale: ground sets fit in a machine word and the
//! searches are exhaustive.

mod canon;
pub mod catalog;
pub mod error;
pub mod gf2;
pub mod graphs;
pub mod io;
pub mod matroid;
pub mod minors;
pub mod report;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::BitMatrix;
pub use graphs::Multigraph;
pub use matroid::{BinaryMatroid, CanonicalForm, CircuitMatroid, CircuitSet, IsoCertificate, Label};
pub use minors::{MinorTarget, MinorWitness};
