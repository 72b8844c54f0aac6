use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("elements belong to different presentations")]
    PresentationMismatch,

    #[error("rewriting budget exhausted after {0} steps; presentation is likely malformed")]
    RewriteBudgetExhausted(u64),

    #[error("subalgebra `{label}` is not relation-closed: relation [{hi},{lo}] leaves the generator subset")]
    InvalidSubalgebra {
        label: String,
        hi: String,
        lo: String,
    },

    #[error("operation requires a confluent presentation")]
    NotConfluent,

    #[error("enumeration exceeded the configured cap of {0} words")]
    ResourceLimit(usize),

    #[error("criterion inapplicable: {0}")]
    CriterionInapplicable(String),

    #[error("input outside the expected subspace: {0}")]
    OutsideDomain(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
