//! Composition of real jets with `μ`, `ν` and `φ`.

use crate::entire::{munu_taylor_at, phi_eval};
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::RJet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntireFn {
    Mu,
    Nu,
    Phi,
}

/// `Σ tₖ (S − S(0))ᵏ` for Taylor coefficients `tₖ` at the center `S(0)`.
pub fn compose_taylor(taylor: &RJet, s: &RJet) -> RJet {
    let order = s.order();
    let mut h = s.clone();
    h.set_coeff(0, 0.0);
    // h has zero constant term, so hᵏ vanishes to order k and Horner is exact after `order` steps
    let top = taylor.order().min(order);
    let mut acc = RJet::constant(taylor.coeff(top), order).with_meta_of(s);
    for k in (0..top).rev() {
        acc = acc.star(&h).add_const(taylor.coeff(k));
    }
    acc
}

pub fn compose_mu(s: &RJet) -> RJet {
    let (mu, _) = munu_taylor_at(s.coeff(0), s.order());
    compose_taylor(&mu, s)
}

pub fn compose_nu(s: &RJet) -> RJet {
    let (_, nu) = munu_taylor_at(s.coeff(0), s.order());
    compose_taylor(&nu, s)
}

/// `φ ∘ S`, the jet `w` with `μ(w) = S` and `w(0) = φ(S(0))`.
///
/// Solved order by order from `ν(w)·w′ = −2S′`.
pub fn compose_phi(s: &RJet) -> Result<RJet> {
    let c = s.coeff(0);
    if c <= -1.0 + crate::entire::CUT_TOL {
        return Err(Error::BranchCut(Quaternion::real(c)));
    }
    let order = s.order();
    let w0 = phi_eval(Quaternion::real(c))?.w;
    let (_, nu_taylor) = munu_taylor_at(w0, order);
    let mut w = vec![0.0; order + 1];
    w[0] = w0;
    for k in 0..order {
        // ν(w) is exact through order k once w is known through order k
        let partial = RJet::new(w[..=k].to_vec(), k);
        let nw = compose_taylor(&nu_taylor, &partial);
        let mut rhs = -2.0 * (k + 1) as f64 * s.coeff(k + 1);
        for j in 0..k {
            rhs -= nw.coeff(k - j) * (j + 1) as f64 * w[j + 1];
        }
        w[k + 1] = rhs / (nw.coeff(0) * (k + 1) as f64);
    }
    Ok(RJet::new(w, order).with_meta_of(s))
}

pub fn compose_entire(which: EntireFn, s: &RJet) -> Result<RJet> {
    match which {
        EntireFn::Mu => Ok(compose_mu(s)),
        EntireFn::Nu => Ok(compose_nu(s)),
        EntireFn::Phi => compose_phi(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_of_q_squared_is_cos() {
        let q2 = RJet::new(vec![0.0, 0.0, 1.0], 16);
        let (cos, sin) = RJet::variable(16).cos_sin();
        assert!(compose_mu(&q2).max_diff(&cos) < 1e-16);
        let nu_q = compose_nu(&q2).star(&RJet::variable(16));
        assert!(nu_q.max_diff(&sin) < 1e-16);
    }

    #[test]
    fn mu_of_shifted_square_vanishes_on_sphere() {
        // μ(q² + 1) at q ∈ 𝕊 is μ(0) = 1
        let s = RJet::new(vec![1.0, 0.0, 1.0], 64);
        let m = compose_mu(&s).to_qjet();
        let u = Quaternion::new(0.0, 0.0, 0.6, 0.8);
        assert!(m.eval(u).max_abs_diff(Quaternion::ONE) < 1e-12);
    }

    #[test]
    fn phi_of_one_is_zero() {
        let w = compose_phi(&RJet::one(10)).unwrap();
        assert!(w.max_norm() < 1e-15);
    }

    #[test]
    fn phi_then_mu_is_identity() {
        for s in [
            RJet::new(vec![0.2, 0.5, -0.3, 0.1], 24),
            RJet::new(vec![-0.7, 0.1, 0.2], 24),
            RJet::new(vec![3.0, 1.0, 0.5], 24),
            RJet::new(vec![1.0, 0.4], 24),
        ] {
            let w = compose_phi(&s).unwrap();
            let back = compose_mu(&w);
            assert!(back.max_diff(&s) < 1e-11, "{:?}", back.max_diff(&s));
        }
    }

    #[test]
    fn phi_rejects_the_cut() {
        assert!(compose_phi(&RJet::constant(-2.0, 4)).is_err());
        assert!(compose_phi(&RJet::constant(-1.0, 4)).is_err());
    }
}
