//! Elements of `L_k(Γ)` as exact combinations of monomials `pq*`.
//!
//! [`Element`] carries the arithmetic (product, involution, grading,
//! corners). [`Normalizer`] rewrites elements into the canonical basis of
//! sink terms `pq*` and cycle terms `pCⁿq*`; it needs pairwise disjoint
//! cycles. [`Ideal`] covers the vertex-generated ideals.

mod element;
mod expr;
mod ideal;
mod monomial;
mod normal;

use thiserror::Error;

use crate::digraph::DigraphError;
use crate::ring::RingError;
use crate::ErrorClass;

pub use element::{Degree, Element};
pub use expr::parse_element;
pub use ideal::{ideal_product_check, quotient_dimension_check, CheckReport, Ideal, QuotientDimensions};
pub use monomial::Monomial;
pub use normal::{BasisMonomial, Normalizer, DEFAULT_TERM_CAP};

pub(crate) use element::render_sum;
pub(crate) use ideal::random_path_into;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error("elements live over different digraphs")]
    DifferentDigraphs,
    #[error("normalization exceeded the cap of {0} terms")]
    TermCap(usize),
    #[error("expression error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("digraph has a cycle; dimensions are infinite")]
    NotAcyclic,
}

impl LpaError {
    pub fn class(&self) -> ErrorClass {
        match self {
            LpaError::Ring(e) => e.class(),
            LpaError::Digraph(e) => e.class(),
            LpaError::DifferentDigraphs | LpaError::NotAcyclic => ErrorClass::Precondition,
            LpaError::TermCap(_) => ErrorClass::Budget,
            LpaError::Parse { .. } => ErrorClass::Input,
        }
    }
}
