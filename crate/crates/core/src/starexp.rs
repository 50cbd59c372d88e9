//! The *-exponential, *-cosine and *-sine of quaternionic jets.
//!
//! Two independent routes are provided for the exponential: the defining
//! series `Σ F^{*n}/n!`, and the closed form
//! `exp_*(F) = exp(f₀)·(μ(f_v^s) + ν(f_v^s)·f_v)`.

use crate::error::Result;
use crate::series::{compose_mu, compose_nu, symmetrize, QJet, RJet};

/// Default number of series terms for a jet of the given order.
pub fn default_terms(order: usize) -> usize {
    4 * order.max(16)
}

/// ℓ¹ norm of the coefficient sequence; submultiplicative under the *-product.
fn l1(f: &QJet) -> f64 {
    f.coeffs().iter().map(|c| c.norm()).sum()
}

/// Walks the terms `F^{*n}/n!` for `n < terms`, stopping once the remaining
/// tail is provably below `1e−3·tol`.
fn for_each_power(f: &QJet, terms: usize, mut visit: impl FnMut(usize, &QJet)) {
    let order = f.order();
    let bound = l1(f);
    let cutoff = 1e-3 * f.tol;
    let mut term = QJet::one(order).with_meta_of(f);
    for n in 0..terms {
        visit(n, &term);
        let size = l1(&term);
        // ‖T_{n+m}‖ ≤ ‖T_n‖·(bound/(n+1))^m, so once the ratio is ≤ 1/2 the tail is ≤ 2‖T_n‖
        if size == 0.0 || (bound / (n + 1) as f64 <= 0.5 && size < cutoff) {
            break;
        }
        term = term.star(f).scale(1.0 / (n + 1) as f64);
    }
}

/// Partial sum of `Σ F^{*n}/n!` with at most `terms` terms.
pub fn star_exp_direct(f: &QJet, terms: usize) -> QJet {
    let mut sum = QJet::zero(f.order()).with_meta_of(f);
    for_each_power(f, terms, |_, t| sum = sum.add(t));
    sum
}

/// `exp_*(F) = exp(f₀)·(μ(σ) + ν(σ)·f_v)` with `σ = f_v^s`.
pub fn star_exp_formula(f: &QJet) -> Result<QJet> {
    let f0 = f.real_part();
    let fv = f.vector_part();
    let sigma = symmetrize(&fv)?;
    let mu = compose_mu(&sigma);
    let nu = compose_nu(&sigma);
    let inner = mu.to_qjet().add(&nu.mul_q(&fv));
    Ok(f0.exp().mul_q(&inner))
}

/// `exp_*`, by the closed-form route.
pub fn star_exp(f: &QJet) -> Result<QJet> {
    star_exp_formula(f)
}

/// `(cos_* F, sin_* F)` from the defining series.
pub fn star_cos_sin(f: &QJet) -> (QJet, QJet) {
    star_cos_sin_terms(f, default_terms(f.order()))
}

pub fn star_cos_sin_terms(f: &QJet, terms: usize) -> (QJet, QJet) {
    let order = f.order();
    let mut cos = QJet::zero(order).with_meta_of(f);
    let mut sin = QJet::zero(order).with_meta_of(f);
    for_each_power(f, terms, |n, t| {
        let signed = if (n / 2) % 2 == 0 { t.clone() } else { t.neg() };
        if n % 2 == 0 {
            cos = cos.add(&signed);
        } else {
            sin = sin.add(&signed);
        }
    });
    (cos, sin)
}

/// `(cos_* F, sin_* F) = (μ(−f_v^s), ν(−f_v^s)·F)` for `F` with zero real part.
///
/// Used as a cross-check of [`star_cos_sin`]; `None` if `F` has a real part.
pub fn star_cos_sin_munu(f: &QJet) -> Result<Option<(QJet, QJet)>> {
    if f.real_part().max_norm() > f.tol * f.max_norm().max(1.0) {
        return Ok(None);
    }
    let minus_sigma: RJet = symmetrize(f)?.neg();
    let cos = compose_mu(&minus_sigma).to_qjet();
    let sin = compose_nu(&minus_sigma).mul_q(f);
    Ok(Some((cos, sin)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;
    use std::f64::consts::PI;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;

    #[test]
    fn exp_of_zero_is_one() {
        let z = QJet::zero(8);
        assert_eq!(star_exp_direct(&z, 32), QJet::one(8));
        assert!(star_exp_formula(&z).unwrap().max_diff(&QJet::one(8)) < 1e-16);
    }

    #[test]
    fn exp_pi_i_is_minus_one() {
        let f = QJet::constant(I.scale(PI), 0);
        let minus_one = QJet::constant(Quaternion::real(-1.0), 0);
        assert!(star_exp_direct(&f, default_terms(0)).max_diff(&minus_one) < 1e-14);
        assert!(star_exp_formula(&f).unwrap().max_diff(&minus_one) < 1e-14);
    }

    #[test]
    fn exp_pi_i_plus_pi_j_closed_form() {
        let f = QJet::constant((I + J).scale(PI), 0);
        let r = 2f64.sqrt() * PI;
        let expected = Quaternion::real(r.cos()) + (I + J).scale(r.sin() / 2f64.sqrt());
        let d = star_exp_direct(&f, default_terms(0));
        assert!(d.constant_term().max_abs_diff(expected) < 1e-13);
        let m = star_exp_formula(&f).unwrap();
        assert!(m.constant_term().max_abs_diff(expected) < 1e-14);
    }

    #[test]
    fn exp_of_i_plus_qj_at_j() {
        let f = QJet::new(vec![I, J], 64);
        let g = star_exp_formula(&f).unwrap();
        assert!(g.eval(J).max_abs_diff(I) < 1e-12);
    }

    #[test]
    fn exp_of_qi_is_cos_plus_sin_i() {
        let f = QJet::new(vec![Quaternion::ZERO, I], 20);
        let (c, s) = RJet::variable(20).cos_sin();
        let expected = c.to_qjet().add(&s.mul_q(&QJet::constant(I, 20)));
        assert!(star_exp_formula(&f).unwrap().max_diff(&expected) < 1e-16);
        assert!(star_exp_direct(&f, 80).max_diff(&expected) < 1e-12);
        let exact = star_exp_direct(&f.clone().with_tol(1e-20), 80);
        assert!(exact.max_diff(&expected) < 1e-16);
    }

    #[test]
    fn exp_of_real_jet_is_pointwise_exp() {
        let r = RJet::new(vec![0.5, -1.0, 0.25], 12);
        let e = star_exp_formula(&r.to_qjet()).unwrap();
        assert!(e.max_diff(&r.exp().to_qjet()) < 1e-15);
    }

    #[test]
    fn cos_sin_of_zero() {
        let (c, s) = star_cos_sin(&QJet::zero(6));
        assert_eq!(c, QJet::one(6));
        assert_eq!(s, QJet::zero(6));
    }

    #[test]
    fn cos_sin_of_real_jet() {
        let g = RJet::new(vec![0.3, 1.0, -0.5], 16);
        let (c, s) = star_cos_sin(&g.to_qjet());
        let (rc, rs) = g.cos_sin();
        assert!(c.max_diff(&rc.to_qjet()) < 1e-14);
        assert!(s.max_diff(&rs.to_qjet()) < 1e-14);
        // cos² + sin² = 1 when the argument commutes with everything
        let one = c.star(&c).add(&s.star(&s));
        assert!(one.max_diff(&QJet::one(16)) < 1e-14);
    }

    #[test]
    fn cos_sin_munu_cross_check() {
        let f = QJet::new(vec![I.scale(0.4), J, Quaternion::K.scale(-0.3)], 16);
        let (c, s) = star_cos_sin(&f);
        let (mc, ms) = star_cos_sin_munu(&f).unwrap().unwrap();
        assert!(c.max_diff(&mc) < 1e-13);
        assert!(s.max_diff(&ms) < 1e-13);
        let g = f.add(&QJet::one(16));
        assert!(star_cos_sin_munu(&g).unwrap().is_none());
    }
}
