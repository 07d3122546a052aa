//! Exact constructions and verifications around the Hoffman coclique bound
//! for normal digraphs: Hadamard matrices, doubly regular asymmetric
//! digraphs, regular biangular matrices, balanced generalized weighing
//! matrices and the association schemes built from them.

pub mod bgw;
pub mod biangular;
pub mod digraph;
pub mod error;
pub mod gauss;
pub mod hadamard;
pub mod io;
pub mod matrix;
pub mod nrd;
pub mod scheme;
pub mod spectral;

pub use digraph::Digraph;
pub use error::{Error, Result};
pub use gauss::{GaussMatrix, GaussRational, Rational};
pub use matrix::IntMatrix;
pub use scheme::{AssociationScheme, EigenSystem, SchemeError};
