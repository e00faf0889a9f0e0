use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A parameter point sits on (or numerically at) a phase boundary.
    #[error("parameters lie on the critical manifold {manifold} (gamma={gamma}, h={h})")]
    Boundary {
        manifold: &'static str,
        gamma: f64,
        h: f64,
    },

    /// The chain symbol vanishes, so its phase is undefined.
    #[error("symbol is singular at theta={theta} (gamma={gamma}, h={h})")]
    SingularSymbol { theta: f64, gamma: f64, h: f64 },

    /// A series, product or iteration ran out of budget before reaching tolerance.
    #[error("{op} did not converge after {terms} terms")]
    NonConvergence { op: &'static str, terms: usize },

    /// A uniform-grid transform was too coarse to resolve the symbol.
    #[error("{op}: trailing Fourier coefficient {trailing:e} exceeds {limit:e}; increase quad_points")]
    Resolution {
        op: &'static str,
        trailing: f64,
        limit: f64,
    },

    /// A spectral parameter is too close to a point excluded from the asymptotics.
    #[error("lambda={lambda} is within {distance:e} of excluded point {point} (threshold {threshold:e})")]
    Proximity {
        lambda: String,
        point: String,
        distance: f64,
        threshold: f64,
    },

    /// Hypotheses of the Fisher-Hartwig theorem are not satisfied.
    #[error("Fisher-Hartwig hypothesis violated: {0}")]
    Hypothesis(String),

    /// Eigenvalues of a correlation matrix fall outside [-1, 1].
    #[error("spectrum value {value} lies outside [-1, 1] beyond tolerance")]
    SpectrumOutOfRange { value: f64 },

    /// A truncated sum left a tail larger than its tolerance.
    #[error("{op}: estimated truncation tail {tail:e} exceeds {tol:e}")]
    TailTooLarge { op: &'static str, tail: f64, tol: f64 },

    /// Adaptive quadrature failed to meet its error target.
    #[error("quadrature failed: estimated error {error:e} above tolerance {tol:e}")]
    Quadrature { error: f64, tol: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::Resolution { .. }
                | Error::TailTooLarge { .. }
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
