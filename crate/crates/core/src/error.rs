//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by tensor, Hopf-algebra, diagram and invariant operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two legs were joined whose dimensions or directions do not match.
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    /// A contraction plan references edges illegally or incompletely.
    #[error("invalid contraction plan: {0}")]
    InvalidPlan(String),
    /// Structure tensors do not have the required shapes.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// Two scalars from different ground fields were combined.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    /// The integral pair cannot be normalized to mu(e) = 1 in this field.
    #[error("not normalizable: {0}")]
    NotNormalizable(String),
    /// Integral or cointegral is one-sided; the algebra is not unimodular.
    #[error("integral is not two-sided: {0}")]
    NotTwoSided(String),
    /// The supplied multiplication table is not a group.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// An internally constructed object failed its own verification suite.
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    /// A representation failed the Drinfeld-double compatibility checks.
    #[error("representation check failed: {0}")]
    RepCheckFailure(String),
    /// The group is not abelian (or has no usable cyclic decomposition).
    #[error("not abelian: {0}")]
    NotAbelian(String),
    /// The ground field has no primitive root of unity of the required order.
    #[error("missing root of unity: {0}")]
    MissingRootOfUnity(String),
    /// A diagram move was requested whose preconditions do not hold.
    #[error("move precondition violated: {0}")]
    PreconditionViolated(String),
    /// The braid word or framing data is malformed.
    #[error("invalid braid word: {0}")]
    InvalidBraidWord(String),
    /// Surgery requires the component's crossing sequence to be sorted first.
    #[error("link component not sorted: {0}")]
    NotSorted(String),
    /// The referenced link component does not exist.
    #[error("no such component: {0}")]
    NoSuchComponent(String),
    /// Some link component has no color assigned.
    #[error("incomplete coloring: {0}")]
    IncompleteColoring(String),
    /// A representation or diagram does not match the base algebra.
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    /// A link-free operation was called on a diagram with link curves.
    #[error("link present: {0}")]
    LinkPresent(String),
    /// The HKR normalization needs a square root that this field lacks.
    #[error("normalization unavailable: {0}")]
    NormalizationUnavailable(String),
    /// The matrix handed to the signature routine is not symmetric.
    #[error("matrix not symmetric: {0}")]
    NotSymmetric(String),
    /// A diagram failed structural validation.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    /// File parsing or schema errors.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
