use thiserror::Error;

use crate::quat::Quaternion;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} lies on the cut (-inf, -1]")]
    BranchCut(Quaternion),

    #[error("not *-invertible: constant term of the symmetrized function is {0:e}")]
    NotInvertible(f64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("pair is not on the unit circle: max |a0^2 + a1^2 - 1| = {0:e}")]
    NotOnUnitCircle(f64),

    #[error("route not applicable: {0}")]
    RouteInapplicable(String),

    #[error("g0(0) = {0} lies on the cut (-inf, -1]; the center is outside every admissible component")]
    CenterOnCut(f64),

    #[error("function vanishes at the center (symmetrized constant term {0:e})")]
    VanishesAtCenter(f64),

    #[error("residual {residual:e} exceeds threshold {threshold:e} ({kind})")]
    Residual { kind: &'static str, residual: f64, threshold: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for violations of an operation's precondition (as opposed to
    /// numerical failures or malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::BranchCut(_)
                | Error::NotInvertible(_)
                | Error::NotOnUnitCircle(_)
                | Error::RouteInapplicable(_)
                | Error::VanishesAtCenter(_)
                | Error::CenterOnCut(_)
        )
    }
}
