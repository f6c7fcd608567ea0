//! Convex-roof coherence and genuine multipartite entanglement (GME)
//! measures, the unitary incoherent conversion between them, and a
//! Hardy-type nonlocality test for three-qubit X-states.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hardy;
pub mod io;
pub mod manifest;
pub mod measures;
pub mod optim;
pub mod random;
pub mod roof;
pub mod state;
pub mod uio;

pub use error::{Error, Result};
