//! Exact-arithmetic quantum invariants of pairs (closed oriented 3-manifold,
//! framed oriented link) presented by combinatorial Heegaard-link diagrams.
//!
//! The pipeline: finite-dimensional involutory Hopf algebras given by
//! structure-constant tensors ([`hopf`]), their Drinfeld doubles and canonical
//! R-matrices ([`double`]), representations of the double ([`reps`]),
//! Heegaard-link diagrams with the full move calculus ([`diagram`]), and the
//! tensor-network state sum that evaluates the invariant ([`bracket`]).
//! The Hennings-Kauffman-Radford invariant of braid closures ([`hennings`])
//! provides an independent route to the same values for surgery presentations,
//! which the two pipelines cross-check exactly.
//!
//! Everything is computed over exact scalars (arbitrary-precision rationals or
//! prime fields); there is no floating point anywhere.

pub mod bracket;
pub mod diagram;
pub mod double;
pub mod error;
pub mod group;
pub mod hennings;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod network;
pub mod reps;
pub mod scalar;
pub mod tensor;

pub use error::Error;
pub use scalar::{ExactScalar, Field};
pub use tensor::{Leg, LegDir, Tensor};
