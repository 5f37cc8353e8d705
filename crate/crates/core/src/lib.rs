//! Simulation of the n-qubit stabilizer subtheory with three interchangeable
//! backends: a tableau simulator, a contextual ψ-epistemic hidden-variable
//! model whose ontic states are pairs `(G, γ)`, and a compact variant of that
//! model storing `(2n+1)(n+2)` bits per ontic state.

pub mod acceptance;
pub mod backend;
pub mod circuit;
pub mod clifford;
pub mod compact;
pub mod dense;
pub mod epistemic;
pub mod error;
pub mod experiments;
pub mod pauli;
pub mod phase;
pub mod rng;
pub mod tableau;

pub use error::{Error, Result};
