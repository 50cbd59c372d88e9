//! Truncated power series at the origin and the *-algebra on them.
//!
//! A [`QJet`] `Σ qⁿaₙ` models a slice regular function on a ball; the
//! *-product of two such series is the Cauchy product of their coefficient
//! sequences, with the left factor's coefficients kept on the left.

mod compose;
mod file;
mod jet;
mod rcalc;

pub use compose::{compose_entire, compose_mu, compose_nu, compose_phi, compose_taylor, EntireFn};
pub use file::FunctionFile;
pub use jet::{Coeff, Jet, QJet, RJet, VectorSplit, DEFAULT_ORDER, DEFAULT_TOL, DEFAULT_TRUST_RADIUS};
pub use rcalc::{rjet_calculus, RCalcOp};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

pub fn star_mul(f: &QJet, g: &QJet) -> QJet {
    f.star(g)
}

pub fn conj_jet(f: &QJet) -> QJet {
    f.conj()
}

pub fn split_jet(f: &QJet) -> VectorSplit {
    f.split()
}

pub fn eval_jet(f: &QJet, q: Quaternion) -> Quaternion {
    f.eval(q)
}

/// `F^s = F * F^c`, returned as a real jet.
pub fn symmetrize(f: &QJet) -> Result<RJet> {
    let s = f.star(&f.conj());
    let residual = s.max_imaginary();
    if residual > f.tol * s.max_norm().max(1.0) {
        return Err(Error::Consistency(format!(
            "symmetrized jet has imaginary residue {residual:e}"
        )));
    }
    Ok(s.real_part())
}

/// `F^{−*} = (F^s)^{−1} F^c`.
pub fn star_inverse(f: &QJet) -> Result<QJet> {
    let s = symmetrize(f)?;
    let c0 = s.coeff(0);
    if c0.abs() <= f.tol {
        return Err(Error::NotInvertible(c0));
    }
    Ok(s.recip()?.mul_q(&f.conj()))
}

impl QJet {
    /// Multiplies every coefficient on the left by a real jet.
    pub fn scale_by(&self, r: &RJet) -> QJet {
        r.mul_q(self)
    }
}
