use thiserror::Error;

/// Validation and combination errors for the finite algebraic structures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    /// A structure axiom failed; `witness` names the elements exhibiting the failure.
    #[error("axiom violation: {axiom} (witness: {})", witness.join(", "))]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<String>,
    },

    #[error("malformed table: {0}")]
    ShapeMismatch(String),

    #[error("unknown element: {0}")]
    UnknownElement(String),

    #[error("structures live over different scalar bases")]
    ScalarMismatch,

    #[error("not a subsemimodule: {0}")]
    NotSubsemimodule(String),

    #[error("maps do not compose: target of the first is not the source of the second")]
    CompositionMismatch,

    #[error("additive monoid is not a group: {0} has no inverse")]
    NotModule(String),
}

impl AlgebraError {
    pub(crate) fn axiom(axiom: &'static str, witness: Vec<String>) -> Self {
        AlgebraError::AxiomViolation { axiom, witness }
    }
}
