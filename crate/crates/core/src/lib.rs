//! Exact computations in Leavitt path algebras of finite digraphs.
//!
//! The crate is organised bottom-up: coefficient rings ([`ring`]), digraphs
//! ([`digraph`]), algebra elements and their normal form ([`lpa`]), the
//! vertex-elimination algorithm ([`reduction`]), height and decomposition
//! ([`structure`]), growth tables ([`growth`]) and quiver representations
//! ([`quiver`]). [`families`] builds the named example digraphs.

pub mod digraph;
pub mod families;
pub mod growth;
pub mod lpa;
pub mod quiver;
pub mod reduction;
pub mod structure;
pub mod ring;

pub use digraph::{ArrowId, Cycle, Digraph, DigraphError, Path, VertexId, VertexSet};
pub use ring::{LaurentPoly, Ring, RingError, RingValue};

/// Coarse classification of failures, shared by every module's error type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    /// Malformed or inconsistent input.
    Input,
    /// Well-formed input outside an operation's domain.
    Precondition,
    /// A configured cap was exceeded.
    Budget,
}
