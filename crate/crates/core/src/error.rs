use thiserror::Error;

/// Error type shared by the whole engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("malformed expression: zero denominator")]
    ZeroDenominator,
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("evaluation pole: substitution produced a zero denominator in `{0}`")]
    EvaluationPole(String),
    #[error("extension mismatch: {0}")]
    ExtensionMismatch(String),
    #[error("cannot rationalize denominator containing `{0}`")]
    CannotRationalize(String),
    #[error("degenerate chart: the metric determinant vanishes identically")]
    DegenerateMetric,
    #[error("flat chart: the Gaussian curvature vanishes identically")]
    FlatChart,
    #[error("degenerate form: the determinant vanishes identically")]
    DegenerateForm,
    #[error("operator coefficient is not free of the extension root: {0}")]
    ResidualRoot(String),
    #[error("invalid ruled parametrization: the identity {0} is violated")]
    InvalidRuledParametrization(String),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("expression is not polynomial in `{0}`")]
    NonPolynomial(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
