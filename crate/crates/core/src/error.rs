use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("{op}: domain error: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Malformed request: bad parameters, unknown selectors, empty grids.
    #[error("usage error: {0}")]
    Usage(String),

    /// A series or quadrature did not reach its tolerance within budget.
    #[error("{op}: no convergence ({detail}); best estimate {estimate}")]
    NoConvergence {
        op: &'static str,
        estimate: String,
        detail: String,
    },

    /// Evaluation requested too close to a real root of a denominator.
    #[error("pole: evaluation point {at} lies within the guard radius of a denominator root near {root}")]
    Pole { at: String, root: String },

    /// A formula's denominator vanishes identically at the requested point.
    #[error("{op}: degenerate point: {reason}")]
    Degenerate { op: &'static str, reason: String },

    /// One evaluation path of a multi-path comparison failed.
    #[error("path `{path}` failed: {source}")]
    Path {
        path: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// A limit extrapolation did not settle.
    #[error("sharpness probe did not converge: {reason}; samples [{}]", samples.join(", "))]
    Sharpness {
        reason: String,
        samples: Vec<String>,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// True for failures of the numerical machinery itself, as opposed to
    /// caller mistakes.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Domain { .. } | Error::Usage(_) => false,
            Error::Path { source, .. } => source.is_numerical(),
            _ => true,
        }
    }
}
