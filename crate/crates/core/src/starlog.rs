//! Constructive *-logarithms on a ball.
//!
//! Given `G` with `G(0) ≠ 0`, [`star_log`] looks for `F` with `exp_*(F) = G`:
//!
//! 1. normalize: `ψ = log G^s`, `Ĝ = exp(−ψ/2)·G`, so that `Ĝ^s = 1`;
//! 2. if `Ĝ` is real it is `±1`, with logarithm `0` or `πi`;
//! 3. a non-real isolated zero `q₀` of `ĝ_v` with `ĝ(q₀) ≠ 1` obstructs the logarithm;
//! 4. otherwise solve `exp_*(f_v) = Ĝ` for a purely imaginary `f_v`, either as
//!    `f_v = ĝ_v / (ν∘φ∘ĝ₀)` or through `τ = √(ĝ_v^s)` and `γ` with
//!    `cos γ = ĝ₀`, `sin γ = τ`, `f_v = (γ/τ)·ĝ_v`;
//! 5. return `F = ψ/2 + f_v` after checking `exp_*(F)` against `G`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::entire::nu_complex;
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::{compose_nu, compose_phi, symmetrize, QJet, RJet};
use crate::starexp::star_exp_formula;
use crate::zeros::{classify_zeros_within, obstruction_check};

pub use crate::zeros::Obstruction;

/// How the logarithm was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogRoute {
    Phi,
    Tau,
    SlicePreserving,
    MinusOneShift,
}

impl LogRoute {
    pub fn name(self) -> &'static str {
        match self {
            LogRoute::Phi => "phi",
            LogRoute::Tau => "tau",
            LogRoute::SlicePreserving => "slice_preserving",
            LogRoute::MinusOneShift => "minus_one_shift",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogResult {
    pub f: QJet,
    pub route: LogRoute,
    /// `max |exp_*(F) − G|` over coefficients, relative to `max(1, max |G|)`.
    pub residual: f64,
    /// Largest relative pointwise error over the sample points.
    pub point_residual: f64,
    /// `ψ = log G^s`.
    pub psi: RJet,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LogOutcome {
    Log(LogResult),
    /// One entry per offending zero; never empty.
    Obstructed(Vec<Obstruction>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogConfig {
    pub coeff_threshold: f64,
    pub point_threshold: f64,
    pub samples: usize,
    /// Sample points are drawn from the ball of this fraction of the trust radius.
    pub sample_radius_fraction: f64,
}

impl Default for LogConfig {
    fn default() -> Self {
        LogConfig { coeff_threshold: 1e-7, point_threshold: 1e-6, samples: 64, sample_radius_fraction: 0.5 }
    }
}

fn unit_s_tol(g: &QJet) -> f64 {
    g.tol.max(1e-9)
}

fn check_unit_s(ghat: &QJet) -> Result<()> {
    let s = symmetrize(ghat)?;
    let err = s.max_diff(&RJet::one(s.order()));
    if err > unit_s_tol(ghat) * s.max_norm().max(1.0) {
        return Err(Error::Domain(format!("expected a function with g^s = 1, off by {err:e}")));
    }
    Ok(())
}

/// `ψ = log G^s` and `Ĝ = exp(−ψ/2)·G`, which satisfies `Ĝ^s = 1`.
pub fn normalize_unit_s(g: &QJet) -> Result<(RJet, QJet)> {
    let gs = symmetrize(g)?;
    let c0 = gs.coeff(0);
    if !(c0 > g.tol * gs.max_norm().max(1.0)) {
        return Err(Error::VanishesAtCenter(c0));
    }
    let psi = gs.ln()?;
    let ghat = psi.scale(-0.5).exp().mul_q(g);
    check_unit_s(&ghat).map_err(|e| Error::Consistency(format!("normalization failed: {e}")))?;
    Ok((psi, ghat))
}

/// The real jet `γ` with `cos γ = a0` and `sin γ = a1`, `γ(0) ∈ (−π, π]`.
pub fn cossin_solve(a0: &RJet, a1: &RJet) -> Result<RJet> {
    let order = a0.order().max(a1.order());
    let (a0, a1) = (a0.truncate(order), a1.truncate(order));
    let tol = a0.tol.max(a1.tol);
    let circle = a0.star(&a0).add(&a1.star(&a1));
    let off = circle.max_diff(&RJet::one(order));
    if off > tol * circle.max_norm().max(1.0) {
        return Err(Error::NotOnUnitCircle(off));
    }
    let gamma = if order == 0 {
        RJet::constant(0.0, 0).with_meta_of(&a0)
    } else {
        // γ′ = a0·a1′ − a1·a0′
        let d0 = a0.derive();
        let d1 = a1.derive();
        let lower = |j: &RJet| j.truncate(order - 1);
        lower(&a0).star(&d1).sub(&lower(&a1).star(&d0)).integrate()
    };
    let gamma = gamma.add_const(a1.coeff(0).atan2(a0.coeff(0)));
    let (c, s) = gamma.cos_sin();
    let err = c.max_diff(&a0).max(s.max_diff(&a1));
    if err > tol.max(1e-12) * 10.0 {
        return Err(Error::Consistency(format!("cos/sin reconstruction off by {err:e}")));
    }
    Ok(gamma)
}

/// `f_v = ĝ_v / (ν∘φ∘ĝ₀)`, valid when `ĝ₀(0)` is off the cut.
pub fn log_phi_route(ghat: &QJet) -> Result<QJet> {
    check_unit_s(ghat)?;
    let g0 = ghat.real_part();
    let c = g0.coeff(0);
    if c <= -1.0 + crate::entire::CUT_TOL {
        return Err(Error::CenterOnCut(c));
    }
    let w = compose_phi(&g0)?;
    let fv = compose_nu(&w).recip()?.mul_q(&ghat.vector_part());
    if let Some(c) = vector_log_on_circle(ghat, CAUCHY_RADIUS * ghat.trust_radius) {
        let low = fv.order().min(8);
        let scale = fv.truncate(low).max_norm().max(1.0);
        if c.truncate(low).max_diff(&fv.truncate(low)) <= 1e-9 * scale {
            return Ok(c);
        }
        log::debug!("contour coefficients disagree with the recurrence; keeping the recurrence");
    }
    Ok(fv)
}

/// Fraction of the trust radius used for contour sampling.
const CAUCHY_RADIUS: f64 = 0.9;

/// Taylor coefficients of `f_v = ĝ_v·θ/sin θ`, `θ = arccos ĝ₀`, from samples on the
/// circle `|z| = ρ`.
///
/// The multiplier `θ/sin θ` may have poles inside the disk that are cancelled by
/// zeros of `ĝ_v`; forming the product of jets then loses accuracy geometrically
/// in the order, while the contour integral of the product does not. `θ` is
/// continued along the path `0 → ρ → circle`, so crossings of the cut of the
/// principal `arccos` are followed onto the right sheet. Returns `None` when the
/// continuation does not close up or a sample is not finite.
fn vector_log_on_circle(ghat: &QJet, rho: f64) -> Option<QJet> {
    let order = ghat.order();
    let split = ghat.split();
    let parts = [&split.f0, &split.f1, &split.f2, &split.f3];
    let eval = |j: &RJet, z: Complex64| j.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let follow = |prev: Complex64, x: Complex64| -> Complex64 {
        let t = x.acos();
        let mut best = t;
        for sign in [1.0, -1.0] {
            let turns = ((prev.re - sign * t.re) / (2.0 * PI)).round();
            for k in [turns - 1.0, turns, turns + 1.0] {
                let c = t * sign + 2.0 * PI * k;
                if (c - prev).norm() < (best - prev).norm() {
                    best = c;
                }
            }
        }
        best
    };
    let mut theta = Complex64::new(split.f0.coeff(0), 0.0).acos();
    let radial = 256;
    for k in 1..=radial {
        theta = follow(theta, eval(parts[0], Complex64::new(rho * k as f64 / radial as f64, 0.0)));
    }
    let start = theta;
    let n = (8 * (order + 1)).next_power_of_two().max(1024);
    let mut bufs: [Vec<Complex64>; 3] = std::array::from_fn(|_| Vec::with_capacity(n));
    for k in 0..n {
        let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / n as f64);
        theta = follow(theta, eval(parts[0], z));
        let beta = 1.0 / nu_complex(theta * theta);
        if !beta.is_finite() {
            return None;
        }
        for (buf, part) in bufs.iter_mut().zip(&parts[1..]) {
            buf.push(beta * eval(part, z));
        }
    }
    // θ/sin θ is even in θ, so closing up to sign is enough
    let closed = follow(theta, eval(parts[0], Complex64::new(rho, 0.0)));
    if (closed - start).norm().min((closed + start).norm()) > 1e-6 * start.norm().max(1.0) {
        return None;
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    for buf in &mut bufs {
        fft.process(buf);
    }
    let coeffs = (0..=order)
        .map(|m| {
            let s = 1.0 / (n as f64 * rho.powi(m as i32));
            Quaternion::new(0.0, bufs[0][m].re * s, bufs[1][m].re * s, bufs[2][m].re * s)
        })
        .collect();
    Some(QJet::new(coeffs, order).with_meta_of(ghat))
}

/// `f_v = (γ/τ)·ĝ_v` with `τ = √(ĝ_v^s)` and `(cos γ, sin γ) = (ĝ₀, τ)`.
pub fn log_tau_route(ghat: &QJet) -> Result<QJet> {
    check_unit_s(ghat)?;
    let gv = ghat.vector_part();
    let sigma = symmetrize(&gv)?;
    let s0 = sigma.coeff(0);
    if !(s0 > ghat.tol * sigma.max_norm().max(1.0)) {
        return Err(Error::RouteInapplicable(format!(
            "g_v^s has constant term {s0:e}, so its square root is not regular at 0"
        )));
    }
    let tau = sigma.sqrt()?;
    let gamma = cossin_solve(&ghat.real_part().with_tol(unit_s_tol(ghat)), &tau.clone().with_tol(unit_s_tol(ghat)))?;
    let beta = gamma.div(&tau)?;
    Ok(beta.mul_q(&gv))
}

/// Deterministic sample points in the ball of radius `r`.
fn sample_points(r: f64, n: usize) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_10c5);
    (0..n)
        .map(|_| loop {
            let q = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if q.norm() <= 1.0 {
                break q.scale(r);
            }
        })
        .collect()
}

/// Whether the jet's tail is negligible on its trust ball, i.e. it stands for a
/// polynomial there. Returns the effective degree.
fn converged_degree(f: &QJet) -> Option<usize> {
    let d = f.effective_degree(f.trust_radius, 1e-15);
    (d + 2 <= f.order()).then_some(d)
}

/// Runs the zero-set obstruction test on `Ĝ` when `ĝ_v` is effectively a polynomial.
pub fn find_obstructions(ghat: &QJet) -> Result<Vec<Obstruction>> {
    let gv = ghat.vector_part();
    if gv.max_norm() <= ghat.tol {
        return Ok(Vec::new());
    }
    let Some(d) = converged_degree(&gv) else {
        log::debug!("g_v is not converged on its trust ball; skipping the zero-set check");
        return Ok(Vec::new());
    };
    let report = classify_zeros_within(&gv.truncate(d), ghat.trust_radius)?;
    Ok(obstruction_check(ghat, &report))
}

fn residuals(f: &QJet, g: &QJet, config: &LogConfig) -> Result<(f64, f64)> {
    let e = star_exp_formula(f)?;
    let coeff = e.max_diff(g) / g.max_norm().max(1.0);
    let point = sample_points(g.trust_radius * config.sample_radius_fraction, config.samples)
        .into_iter()
        .map(|q| {
            let want = g.eval_unchecked(q);
            (e.eval_unchecked(q) - want).norm() / want.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    Ok((coeff, point))
}

pub fn star_log(g: &QJet) -> Result<LogOutcome> {
    star_log_with(g, &LogConfig::default())
}

pub fn star_log_with(g: &QJet, config: &LogConfig) -> Result<LogOutcome> {
    if g.constant_term().norm() <= g.tol * g.max_norm().max(1.0) {
        return Err(Error::VanishesAtCenter(g.constant_term().norm_sqr()));
    }
    let (psi, ghat) = normalize_unit_s(g)?;
    let half_psi = psi.scale(0.5).to_qjet();

    let (fv, route) = if let Some(real) = ghat.as_real(unit_s_tol(&ghat)) {
        if real.coeff(0) > 0.0 {
            (QJet::zero(g.order()), LogRoute::SlicePreserving)
        } else {
            (QJet::constant(Quaternion::I.scale(PI), g.order()), LogRoute::MinusOneShift)
        }
    } else {
        let obstructions = find_obstructions(&ghat)?;
        if !obstructions.is_empty() {
            return Ok(LogOutcome::Obstructed(obstructions));
        }
        match log_phi_route(&ghat) {
            Ok(fv) => (fv, LogRoute::Phi),
            Err(phi_err) => match log_tau_route(&ghat) {
                Ok(fv) => (fv, LogRoute::Tau),
                Err(tau_err) => {
                    return Err(Error::RouteInapplicable(format!(
                        "phi route: {phi_err}; tau route: {tau_err}"
                    )))
                }
            },
        }
    };
    let f = half_psi.add(&fv).with_trust_radius(g.trust_radius).with_tol(g.tol);
    let (residual, point_residual) = residuals(&f, g, config)?;
    if !(residual <= config.coeff_threshold) {
        return Err(Error::Residual { kind: "coefficientwise", residual, threshold: config.coeff_threshold });
    }
    if !(point_residual <= config.point_threshold) {
        return Err(Error::Residual {
            kind: "pointwise",
            residual: point_residual,
            threshold: config.point_threshold,
        });
    }
    Ok(LogOutcome::Log(LogResult { f, route, residual, point_residual, psi }))
}
