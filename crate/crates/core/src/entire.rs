//! The slice preserving entire functions `μ(q) = Σ (−1)ᵐ qᵐ/(2m)!` and
//! `ν(q) = Σ (−1)ᵐ qᵐ/(2m+1)!`, so that `μ(q²) = cos q` and `ν(q²)q = sin q`,
//! together with `φ`, the inverse of `μ` restricted to the parabolic domain `𝒟₀`.
//!
//! Pointwise values are computed slice by slice: `q = α + Iβ` is sent to the
//! complex number `α + iβ`, the holomorphic function is evaluated there, and
//! the result is mapped back onto `ℂ_I`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::RJet;

/// Below this modulus `μ` and `ν` are summed from their power series.
pub const SERIES_CROSSOVER: f64 = 0.25;
const SERIES_TERMS: usize = 30;

/// Tolerance used to decide whether a point lies on the cut `(−∞, −1]`.
pub const CUT_TOL: f64 = 1e-12;

fn to_slice(q: Quaternion) -> (Complex64, crate::quat::SlicePoint) {
    let sp = q.slice_decompose();
    (Complex64::new(sp.alpha, sp.beta), sp)
}

fn from_slice(z: Complex64, sp: &crate::quat::SlicePoint) -> Quaternion {
    sp.lift(z.re, z.im)
}

fn mu_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 0..SERIES_TERMS {
        let d = ((2 * m + 1) * (2 * m + 2)) as f64;
        term = -term * z / d;
        sum += term;
    }
    sum
}

fn nu_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 0..SERIES_TERMS {
        let d = ((2 * m + 2) * (2 * m + 3)) as f64;
        term = -term * z / d;
        sum += term;
    }
    sum
}

/// `μ` on the complex plane: `cos(√z)`.
pub fn mu_complex(z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_CROSSOVER {
        mu_series(z)
    } else {
        z.sqrt().cos()
    }
}

/// `ν` on the complex plane: `sin(√z)/√z`, equal to 1 at 0.
pub fn nu_complex(z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_CROSSOVER {
        nu_series(z)
    } else {
        let s = z.sqrt();
        s.sin() / s
    }
}

pub fn mu_eval(q: Quaternion) -> Quaternion {
    let (z, sp) = to_slice(q);
    from_slice(mu_complex(z), &sp)
}

pub fn nu_eval(q: Quaternion) -> Quaternion {
    let (z, sp) = to_slice(q);
    from_slice(nu_complex(z), &sp)
}

/// True if `xi` lies on `(−∞, −1]` within [`CUT_TOL`].
pub fn on_cut(xi: Quaternion) -> bool {
    xi.vector_norm() <= CUT_TOL && xi.w <= -1.0 + CUT_TOL
}

/// `φ` on the complex plane off the cut: `arccos(ξ)²` with the principal arccos.
pub fn phi_complex(xi: Complex64) -> Result<Complex64> {
    if xi.im.abs() <= CUT_TOL && xi.re <= -1.0 + CUT_TOL {
        return Err(Error::BranchCut(Quaternion::new(xi.re, xi.im, 0.0, 0.0)));
    }
    if xi.im == 0.0 {
        let x = xi.re;
        return Ok(if x >= 1.0 {
            Complex64::new(-x.acosh().powi(2), 0.0)
        } else {
            Complex64::new(x.acos().powi(2), 0.0)
        });
    }
    let t = xi.acos();
    Ok(t * t)
}

/// The unique `w ∈ 𝒟₀` with `μ(w) = ξ`.
pub fn phi_eval(xi: Quaternion) -> Result<Quaternion> {
    if on_cut(xi) {
        return Err(Error::BranchCut(xi));
    }
    let (z, sp) = to_slice(xi);
    // real inputs already have β = 0 exactly; tiny imaginary parts are kept
    Ok(from_slice(phi_complex(z)?, &sp))
}

/// Index `n` of the parabolic domain `𝒟ₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainIndex(pub u32);

/// Result of a `𝒟ₙ` membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub inside: bool,
    /// The point lies (within tolerance) on one of the boundary parabolas `Γₙ`, `Γₙ₊₁`.
    pub on_gamma: bool,
}

/// Abscissa of the parabola `Γₙ` at height `y`, for `n ≥ 1`.
pub fn gamma_abscissa(n: u32, y: f64) -> f64 {
    let a = (n as f64 * PI).powi(2);
    a - y * y / (4.0 * a)
}

/// Membership of `q = x + yJ` in `𝒟ₙ`.
pub fn in_domain(q: Quaternion, n: DomainIndex) -> Membership {
    let sp = q.slice_decompose();
    let (x, y) = (sp.alpha, sp.beta);
    let near = |b: f64| (x - b).abs() <= 1e-9 * x.abs().max(1.0);
    let upper = gamma_abscissa(n.0 + 1, y);
    if n.0 == 0 {
        Membership { inside: x < upper && !near(upper), on_gamma: near(upper) }
    } else {
        let lower = gamma_abscissa(n.0, y);
        let on_gamma = near(lower) || near(upper);
        Membership { inside: lower < x && x < upper && !on_gamma, on_gamma }
    }
}

/// Taylor coefficients of `μ` and `ν` at a real center `c`, up to `order`.
///
/// Near the origin the global series is re-expanded binomially; farther out
/// the coefficients follow from `μ′ = −ν/2` and `2qν′ = μ − ν`, seeded with
/// closed-form values at `c`.
pub fn munu_taylor_at(c: f64, order: usize) -> (RJet, RJet) {
    if c == 0.0 {
        let mu = global_coeffs(order, 0);
        let nu = global_coeffs(order, 1);
        return (RJet::new(mu, order), RJet::new(nu, order));
    }
    if c.abs() <= 4.0 {
        return (
            RJet::new(reexpand(&global_coeffs(order + 80, 0), c, order), order),
            RJet::new(reexpand(&global_coeffs(order + 80, 1), c, order), order),
        );
    }
    let (mut m, mut n) = if c > 0.0 {
        let s = c.sqrt();
        (s.cos(), s.sin() / s)
    } else {
        let s = (-c).sqrt();
        (s.cosh(), s.sinh() / s)
    };
    let mut mu = Vec::with_capacity(order + 1);
    let mut nu = Vec::with_capacity(order + 1);
    for k in 0..=order {
        mu.push(m);
        nu.push(n);
        let kf = k as f64;
        let next_m = -n / (2.0 * (kf + 1.0));
        let next_n = (m - (2.0 * kf + 1.0) * n) / (2.0 * c * (kf + 1.0));
        m = next_m;
        n = next_n;
    }
    (RJet::new(mu, order), RJet::new(nu, order))
}

/// `(−1)ᵐ/(2m + shift)!` for `m = 0..=order`.
fn global_coeffs(order: usize, shift: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut a = 1.0;
    for m in 0..=order {
        out.push(a);
        let d = ((2 * m + 1 + shift) * (2 * m + 2 + shift)) as f64;
        a = -a / d;
    }
    out
}

/// Coefficients of `Σ aₘ (c + h)ᵐ` in powers of `h`.
fn reexpand(a: &[f64], c: f64, order: usize) -> Vec<f64> {
    (0..=order)
        .map(|k| {
            // term_m = a_m C(m, k) c^{m−k}
            let mut sum = 0.0;
            let mut binom_pow = 1.0;
            for m in k..a.len() {
                if m > k {
                    binom_pow *= c * m as f64 / (m - k) as f64;
                }
                sum += a[m] * binom_pow;
            }
            sum
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Quaternion {
        Quaternion::real(x)
    }

    #[test]
    fn mu_values() {
        assert!(mu_eval(re(PI * PI)).max_abs_diff(re(-1.0)) < 1e-14);
        assert_eq!(mu_eval(re(0.0)), re(1.0));
        assert!(mu_eval(re(PI * PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu_eval(re(0.0)), re(1.0));
        assert!(nu_eval(re(PI * PI)).norm() < 1e-15);
        assert!(nu_eval(re(4.0 * PI * PI)).norm() < 1e-15);
    }

    #[test]
    fn crossover_branches_agree() {
        for &r in &[0.2, 0.25, 0.3] {
            for k in 0..16 {
                let t = k as f64 * PI / 8.0;
                let z = Complex64::from_polar(r, t);
                assert!((mu_series(z) - z.sqrt().cos()).norm() < 1e-15);
                let s = z.sqrt();
                assert!((nu_series(z) - s.sin() / s).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_eval(re(1.0)).unwrap(), re(0.0));
        assert!(phi_eval(re(1f64.cosh())).unwrap().max_abs_diff(re(-1.0)) < 1e-14);
        assert!(matches!(phi_eval(re(-1.0)), Err(Error::BranchCut(_))));
        assert!(matches!(phi_eval(re(-3.0)), Err(Error::BranchCut(_))));
        // just off the cut is fine
        assert!(phi_eval(Quaternion::new(-3.0, 0.0, 1e-6, 0.0)).is_ok());
        // μ(−1) = cosh 1
        assert!(mu_eval(re(-1.0)).max_abs_diff(re(1f64.cosh())) < 1e-14);
    }

    #[test]
    fn domain_membership() {
        let d0 = DomainIndex(0);
        assert_eq!(in_domain(re(0.0), d0), Membership { inside: true, on_gamma: false });
        assert_eq!(in_domain(re(PI * PI), d0), Membership { inside: false, on_gamma: true });
        assert!(in_domain(re(2.0 * PI * PI), DomainIndex(1)).inside);
        assert!(!in_domain(re(2.0 * PI * PI), d0).inside);
        // far up the imaginary direction the parabola opens to the left
        assert!(!in_domain(Quaternion::new(0.0, 0.0, 0.0, 100.0), d0).inside);
        assert!(in_domain(Quaternion::new(-300.0, 0.0, 0.0, 100.0), d0).inside);
    }

    #[test]
    fn taylor_at_zero() {
        let (mu, nu) = munu_taylor_at(0.0, 2);
        assert_eq!(mu.coeffs(), &[1.0, -0.5, 1.0 / 24.0]);
        assert!((nu.coeff(1) + 1.0 / 6.0).abs() < 1e-17);
        assert!((nu.coeff(2) - 1.0 / 120.0).abs() < 1e-18);
        // μ′(0) = −ν(0)/2
        assert_eq!(mu.coeff(1), -nu.coeff(0) / 2.0);
    }

    #[test]
    fn taylor_at_pi_squared() {
        let (mu, nu) = munu_taylor_at(PI * PI, 8);
        assert!((mu.coeff(0) + 1.0).abs() < 1e-15);
        assert!(nu.coeff(0).abs() < 1e-15);
    }

    #[test]
    fn taylor_resummation_matches_pointwise() {
        for &c in &[-30.0, -5.0, -2.0, -0.1, 0.0, 0.3, 1.0, 3.9, 4.1, 9.0, 30.0] {
            let (mu, nu) = munu_taylor_at(c, 64);
            for k in 0..21 {
                let h = -0.5 + k as f64 * 0.05;
                let exact_mu = mu_eval(re(c + h)).w;
                let exact_nu = nu_eval(re(c + h)).w;
                let scale = exact_mu.abs().max(1.0);
                assert!((mu.eval_real(h) - exact_mu).abs() < 1e-9 * scale, "mu c={c} h={h}");
                assert!((nu.eval_real(h) - exact_nu).abs() < 1e-9 * scale, "nu c={c} h={h}");
            }
        }
    }
}
