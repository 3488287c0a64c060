//! Error type shared by the algebraic constructions.

use crate::algebra::ValidationReport;

#[derive(Debug, thiserror::Error)]
pub enum AwbError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::field::FieldSpec, crate::field::FieldSpec),
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("{context}: axioms violated ({} witnesses, first: {})",
        report.witnesses.len(),
        report.witnesses.first().map(|w| w.summary()).unwrap_or_default())]
    InvalidStructure {
        context: String,
        report: ValidationReport,
    },
    #[error("{0} is not a subalgebra")]
    NotASubalgebra(String),
    #[error("{0} is not a two-sided ideal")]
    NotAnIdeal(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("kernel is not central")]
    KernelNotCentral,
    #[error("algebra `{0}` is not perfect")]
    NotPerfect(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("size cap exceeded: {context}")]
    SizeCap { context: String },
    #[error("{0}")]
    Precondition(String),
    #[error("internal consistency failure ({context}); this falsifies a guaranteed identity")]
    TheoremViolation { context: String },
}
