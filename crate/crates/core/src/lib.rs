//! Exact intertwining operators for the Airy-deformed Calogero–Moser
//! Hamiltonian, symbolic eigenfunction checks on an Airy-kernel ring,
//! double-precision numerics, and the classical particle system.

pub mod algebra;
pub mod diffop;
pub mod dynamics;
pub mod eigenring;
pub mod error;
pub mod intertwiner;
pub mod numerics;
pub mod suite;

pub use error::{Error, Result};
