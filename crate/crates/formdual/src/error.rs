//! Error type shared across the crate.

/// Errors produced by algebra, field evaluation, quadrature and potentials.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two operands live in different ambient dimensions.
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Two operands (or an operand and a contract) disagree in degree.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// Codifferential requested on a degree-0 form.
    #[error("degree underflow: codifferential of a degree-0 form")]
    DegreeUnderflow,

    /// Ambient dimension outside the supported range for the operation.
    #[error("unsupported ambient dimension {n}: {reason}")]
    UnsupportedDimension { n: usize, reason: &'static str },

    /// Malformed input that is not a dimension/degree mismatch.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Field evaluated outside its domain of definition.
    #[error("point outside field domain")]
    OutsideDomain,

    /// Kernel evaluated at its source point.
    #[error("kernel singularity: evaluation point coincides with a source")]
    Singularity,

    /// Layer potential evaluated inside the near-surface exclusion zone.
    #[error("evaluation point too close to the surface: distance {distance:.6e} < required {required:.6e}")]
    Proximity { distance: f64, required: f64 },

    /// Integrand failed at a specific quadrature node.
    #[error("evaluation failed at node {index}: {source}")]
    NodeEvaluation {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
