use std::fmt;

use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, QftError>;

/// A closed interval reported by failing quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum QftError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the deformed exponential at z = {z}")]
    Pole { z: Complex64 },

    #[error("non-finite result in {0}")]
    NonFinite(&'static str),

    #[error("series did not converge after {terms} terms (last term {last_term:e}, sum {sum})")]
    Convergence {
        terms: usize,
        last_term: f64,
        sum: Complex64,
    },

    #[error("degenerate connection coefficients for 2F1({a}, {b}; {c}; z): {detail}")]
    Degenerate {
        a: f64,
        b: f64,
        c: f64,
        detail: String,
    },

    #[error(
        "boundary limit did not converge: residual {residual:e} above tolerance {tolerance:e}"
    )]
    BoundaryConvergence { residual: f64, tolerance: f64 },

    #[error(
        "quadrature did not converge: error {error:e} > target {target:e} after {subdivisions} \
         subdivisions, worst subinterval {worst}"
    )]
    Quadrature {
        error: f64,
        target: f64,
        subdivisions: usize,
        worst: Interval,
    },

    #[error("closed form unavailable, use quadrature: {0}")]
    FallbackRequired(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("no degeneracy partner: {0}")]
    NoPartner(String),

    #[error("surface node (q = {q}, k = {k}) failed: {source}")]
    SurfaceNode {
        q: f64,
        k: f64,
        #[source]
        source: Box<QftError>,
    },

    #[error("q->1+ slice extrapolation at k = {k} has residual {residual:e} above {tolerance:e}")]
    Slice {
        k: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error(
        "k grid truncates the transform: edge magnitude is {edge_ratio:e} of peak, limit \
         {threshold:e}; widen the k grid"
    )]
    Truncation { edge_ratio: f64, threshold: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl QftError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        QftError::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QftError::Domain(msg.into())
    }

    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            QftError::InvalidInput(_) => "invalid_input",
            QftError::Domain(_) => "domain",
            QftError::Pole { .. } => "pole",
            QftError::NonFinite(_) => "non_finite",
            QftError::Convergence { .. } => "convergence",
            QftError::Degenerate { .. } => "degenerate",
            QftError::BoundaryConvergence { .. } => "boundary_convergence",
            QftError::Quadrature { .. } => "quadrature",
            QftError::FallbackRequired(_) => "fallback_required",
            QftError::InvalidWindow(_) => "invalid_window",
            QftError::NoPartner(_) => "no_partner",
            QftError::SurfaceNode { .. } => "surface_node",
            QftError::Slice { .. } => "slice",
            QftError::Truncation { .. } => "truncation",
            QftError::Io(_) => "io",
        }
    }
}

pub(crate) fn ensure_finite(value: Complex64, what: &'static str) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(QftError::NonFinite(what))
    }
}
