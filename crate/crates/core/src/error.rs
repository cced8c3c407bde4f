use alloc::string::String;

/// Errors raised by the combinatorial core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A structural invariant of the input data fails.
    #[error("invalid data: {invariant}: {detail}")]
    Invalid { invariant: &'static str, detail: String },
    /// The input is well formed but lies outside the supported class of groups.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// Extension data inconsistent with the Galois datum.
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    /// A coweight that should be dominant is not.
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    /// Elements of different groups (or parameter systems) were combined.
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    /// A facet whose reflections generate an infinite group.
    #[error("facet {0} does not generate a finite subgroup")]
    InfiniteFacet(String),
    /// A representation violates a precondition (parity, conjugacy of weights, ...).
    #[error("representation: {0}")]
    Representation(String),
    /// A family of values is missing entries for some inertia lift.
    #[error("incomplete family: {0}")]
    IncompleteFamily(String),
    /// An element expected to be central (or to lie in a span) does not.
    #[error("not central: {0}")]
    NotCentral(String),
    /// The tower is ramified where an unramified one is required.
    #[error("ramified tower: {0}")]
    Ramified(String),
    /// Arithmetic failure (inexact division, overflow guard).
    #[error("arithmetic: {0}")]
    Arithmetic(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(invariant: &'static str, detail: impl Into<String>) -> Error {
    Error::Invalid { invariant, detail: detail.into() }
}
