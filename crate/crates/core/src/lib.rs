//! Finite semigroup toolkit: Cayley tables, structural classification,
//! semilattice decomposition, family constructors with exhaustive
//! enumeration, commutativity audits, and a replayable equational proof
//! checker.
//!
//! The crate is organized bottom-up:
//!
//! - [`table`]: tables, element indices, the `.sg` text format
//! - [`classify`]: predicates (commutative, cancellative, separative,
//!   regular, inverse, completely regular, Clifford, group) and the
//!   power-map conditions
//! - [`decompose`]: congruence closure and the least semilattice
//!   congruence with its component/quotient split
//! - [`construct`]: named families, exhaustive enumeration of orders
//!   up to 5, canonical forms
//! - [`verify`]: theorem and counterexample audits over enumerated and
//!   constructed models
//! - [`proofcheck`]: a proof replayer for semigroup equations, bundled
//!   proof scripts, a first-order problem emitter, and a model-based
//!   soundness audit

pub mod classify;
pub mod construct;
pub mod decompose;
pub mod error;
pub mod proofcheck;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use table::{CayleyTable, Element};
