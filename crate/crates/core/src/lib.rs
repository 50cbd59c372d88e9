//! Slice regular functions on quaternionic balls.
//!
//! Functions are represented as truncated power series `Σ qⁿaₙ` with right
//! quaternionic coefficients ([`QJet`]). On top of the *-product algebra the
//! crate provides the *-exponential, constructive *-logarithms with
//! obstruction detection, the entire functions `μ`, `ν`, `φ`, and zero-set
//! classification for quaternionic polynomials.

pub mod entire;
pub mod error;
pub mod quat;
pub mod series;
pub mod starexp;
pub mod starlog;
pub mod verify;
pub mod zeros;

pub use entire::{in_domain, mu_eval, munu_taylor_at, nu_eval, phi_eval, DomainIndex, Membership};
pub use error::{Error, Result};
pub use quat::{jfun, Quaternion, SlicePoint};
pub use series::{
    compose_entire, conj_jet, eval_jet, rjet_calculus, split_jet, star_inverse, star_mul,
    symmetrize, EntireFn, FunctionFile, QJet, RCalcOp, RJet, VectorSplit,
};
pub use starexp::{star_cos_sin, star_exp, star_exp_direct, star_exp_formula};
pub use starlog::{cossin_solve, star_log, LogConfig, LogOutcome, LogResult, LogRoute};
pub use zeros::{classify_zeros, Obstruction, RealZero, SphericalZero, ZeroReport};
