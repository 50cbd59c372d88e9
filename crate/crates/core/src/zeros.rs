//! Zero sets of quaternionic polynomials.
//!
//! The zeros of `P` lie on the spheres `α + β𝕊` cut out by the roots of the
//! real polynomial `P^s`. On each sphere `P(α + Jβ) = c + J·d` is affine in
//! `J`, so the sphere is either entirely zero (`c = d = 0`) or carries exactly
//! one zero, `J = −c·d⁻¹`.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::{symmetrize, QJet};

/// Sphere parameters are considered real below this imaginary part.
pub const REAL_BETA: f64 = 1e-10;
/// Pointwise annihilation tolerance, relative to `Σ |aₙ| |q|ⁿ`.
pub const ZERO_TOL: f64 = 1e-8;
/// Values of `ĝ` at isolated zeros farther than this from 1 obstruct a *-logarithm.
pub const OBSTRUCTION_TOL: f64 = 1e-6;

/// Roots of `P^s` closer than this (relative) are treated as one multiple root.
const CLUSTER_TOL: f64 = 1e-3;
/// Near-real roots of `P^s` within this band are tested as real zeros of `P`.
const NEAR_REAL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealZero {
    pub point: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphericalZero {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ZeroReport {
    pub real_zeros: Vec<RealZero>,
    pub spherical_zeros: Vec<SphericalZero>,
    pub isolated_zeros: Vec<Quaternion>,
}

impl ZeroReport {
    /// Number of distinct non-real spheres carrying zeros.
    pub fn sphere_count(&self) -> usize {
        self.spherical_zeros.len() + self.isolated_zeros.len()
    }
}

/// A non-real isolated zero `q₀` of `g_v` at which `g(q₀) ≠ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Obstruction {
    pub zero_point: Quaternion,
    pub g0_value: Quaternion,
}

/// `Σ |aₙ| |q|ⁿ`, the natural size of `P(q)`.
pub fn eval_scale(p: &QJet, q: Quaternion) -> f64 {
    let r = q.norm();
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// True if `P(q)` is zero relative to [`eval_scale`].
pub fn annihilates(p: &QJet, q: Quaternion) -> bool {
    p.eval_unchecked(q).norm() <= ZERO_TOL * eval_scale(p, q).max(f64::MIN_POSITIVE)
}

/// Classifies the zeros of a polynomial given as a jet (trailing zero coefficients are ignored).
pub fn classify_zeros(p: &QJet) -> Result<ZeroReport> {
    classify_zeros_within(p, f64::INFINITY)
}

/// Like [`classify_zeros`], keeping only zeros of modulus at most `radius`.
pub fn classify_zeros_within(p: &QJet, radius: f64) -> Result<ZeroReport> {
    let deg = p.degree(0.0);
    if p.max_norm() == 0.0 {
        return Err(Error::Domain("the zero polynomial has no discrete zero set".into()));
    }
    let p = p.truncate(deg).with_tol(p.tol.max(1e-10));
    // P^s has twice the degree of P
    let s = symmetrize(&p.truncate(2 * deg))?;
    let s_coeffs: Vec<f64> = s.coeffs().to_vec();
    let roots = real_poly_roots(&s_coeffs)?;
    let keep = |m: f64| m <= radius * (1.0 + 1e-9);

    let mut report = ZeroReport::default();
    let mut complex_candidates = Vec::new();
    // Roots of P^s come in conjugate pairs; a multiple real root splits into a
    // cloud symmetric about the real axis, so cluster before splitting by sign.
    for cluster in cluster_roots(&roots) {
        if !cluster.straddles && cluster.center.im.abs() > NEAR_REAL * cluster.center.norm().max(1.0) {
            if cluster.center.im > 0.0 {
                complex_candidates.push(cluster);
            }
            continue;
        }
        // P^s(x) = |P(x)|² on the real line
        let x = polish_real(&s_coeffs, cluster.center.re, cluster.size);
        if annihilates(&p, Quaternion::real(x)) {
            if keep(x.abs()) && !report.real_zeros.iter().any(|r| close(r.point, x)) {
                report.real_zeros.push(RealZero { point: x, multiplicity: real_multiplicity(&p, x) });
            }
        } else if cluster.max_im > REAL_BETA {
            complex_candidates.push(Cluster {
                center: Complex64::new(cluster.center.re, cluster.max_im),
                size: (cluster.size / 2).max(1),
                max_im: cluster.max_im,
                straddles: false,
            });
        }
    }

    for cluster in complex_candidates {
        let z = polish_complex(&s_coeffs, cluster.center, cluster.size);
        let (alpha, beta) = (z.re, z.im.abs());
        if beta <= REAL_BETA {
            continue;
        }
        if !keep(z.norm()) {
            continue;
        }
        match classify_sphere(&p, alpha, beta)? {
            SphereKind::Spherical => report.spherical_zeros.push(SphericalZero { alpha, beta }),
            SphereKind::Isolated(q) => report.isolated_zeros.push(q),
        }
    }
    report.real_zeros.sort_by(|a, b| a.point.total_cmp(&b.point));
    Ok(report)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLUSTER_TOL * a.abs().max(1.0)
}

enum SphereKind {
    Spherical,
    Isolated(Quaternion),
}

/// Decides whether `P` vanishes on all of `α + β𝕊` or at a single point.
fn classify_sphere(p: &QJet, alpha: f64, beta: f64) -> Result<SphereKind> {
    let i = Quaternion::I;
    let a = p.eval_unchecked(Quaternion::real(alpha) + i.scale(beta));
    let b = p.eval_unchecked(Quaternion::real(alpha) - i.scale(beta));
    // P(α + Jβ) = (1 − JI)/2·A + (1 + JI)/2·B = c + J·d
    let c = (a + b).scale(0.5);
    let d = i * (b - a).scale(0.5);
    let probe = Quaternion::new(alpha, 0.0, beta, 0.0);
    let scale = eval_scale(p, probe).max(f64::MIN_POSITIVE);
    if c.norm().max(d.norm()) <= ZERO_TOL * scale {
        return Ok(SphereKind::Spherical);
    }
    let d_inv = d.inv().ok_or_else(|| {
        Error::Numeric(format!("degenerate sphere at α={alpha}, β={beta}: d = 0 but c ≠ 0"))
    })?;
    let j = -(c * d_inv);
    if j.w.abs() > 1e-6 || (j.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::Numeric(format!(
            "sphere α={alpha}, β={beta}: −c·d⁻¹ = {j} is not an imaginary unit"
        )));
    }
    let j = j.vector().scale(1.0 / j.vector_norm());
    let q = Quaternion::real(alpha) + j.scale(beta);
    if !annihilates(p, q) {
        return Err(Error::Numeric(format!(
            "isolated zero {q} leaves residual {:e}",
            p.eval_unchecked(q).norm()
        )));
    }
    Ok(SphereKind::Isolated(q))
}

/// Multiplicity of a real zero `x`: how many times `(q − x)` divides `P`.
fn real_multiplicity(p: &QJet, x: f64) -> usize {
    let mut coeffs: Vec<Quaternion> = p.coeffs()[..=p.degree(0.0)].to_vec();
    let mut m = 0;
    while coeffs.len() > 1 {
        // synthetic division by (q − x); real x commutes with everything
        let n = coeffs.len() - 1;
        let mut quotient = vec![Quaternion::ZERO; n];
        quotient[n - 1] = coeffs[n];
        for k in (1..n).rev() {
            quotient[k - 1] = coeffs[k] + quotient[k].scale(x);
        }
        let remainder = coeffs[0] + quotient[0].scale(x);
        let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * x.abs() + c.norm());
        if remainder.norm() > ZERO_TOL * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        m += 1;
        coeffs = quotient;
    }
    m.max(1)
}

struct Cluster {
    center: Complex64,
    size: usize,
    max_im: f64,
    /// Members on both sides of the real axis.
    straddles: bool,
}

fn cluster_roots(roots: &[Complex64]) -> Vec<Cluster> {
    let mut clusters: Vec<(Complex64, usize, f64, f64)> = Vec::new();
    for &z in roots {
        match clusters
            .iter_mut()
            .find(|(c, n, _, _)| ((*c / *n as f64) - z).norm() <= CLUSTER_TOL * z.norm().max(1.0))
        {
            Some((sum, n, lo, hi)) => {
                *sum += z;
                *n += 1;
                *lo = lo.min(z.im);
                *hi = hi.max(z.im);
            }
            None => clusters.push((z, 1, z.im, z.im)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, n, lo, hi)| Cluster {
            center: sum / n as f64,
            size: n,
            max_im: hi.max(-lo),
            straddles: lo < 0.0 && hi > 0.0,
        })
        .collect()
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Newton on the `(m−1)`-th derivative, where an `m`-fold root is simple.
fn polish_complex(c: &[f64], z0: Complex64, multiplicity: usize) -> Complex64 {
    let mut f = c.to_vec();
    for _ in 1..multiplicity {
        f = derivative(&f);
    }
    let df = derivative(&f);
    let mut z = z0;
    let mut best = horner(&f, z).norm();
    for _ in 0..60 {
        let d = horner(&df, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - horner(&f, z) / d;
        let val = horner(&f, next).norm();
        if !(val < best) {
            break;
        }
        best = val;
        z = next;
    }
    z
}

/// Real Newton polish of a real root of `P^s`, which always has even multiplicity.
fn polish_real(c: &[f64], x0: f64, cluster_size: usize) -> f64 {
    let m = cluster_size.max(2);
    polish_complex(c, Complex64::new(x0, 0.0), m).re
}

/// All complex roots of a real polynomial `Σ cₖ xᵏ`, via companion-matrix eigenvalues
/// followed by a Newton polish.
pub fn real_poly_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let deg = match c.iter().rposition(|&a| a != 0.0) {
        Some(d) => d,
        None => return Err(Error::Domain("zero polynomial".into())),
    };
    let low = c.iter().position(|&a| a != 0.0).unwrap();
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let core = &c[low..=deg];
    let n = core.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let eig = match aberth(core) {
        Some(z) => z,
        None => {
            log::debug!("Aberth iteration did not settle (degree {n}); using companion eigenvalues");
            companion_eigenvalues(core)?
        }
    };
    for z in eig {
        roots.push(polish_complex(c, z, 1));
    }
    Ok(roots)
}

/// Starting radii from the upper convex hull of `(k, log|cₖ|)`.
fn newton_polygon_radii(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(k, a)| (k as f64, a.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut radii = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let r = ((a.1 - b.1) / (b.0 - a.0)).exp();
        radii.extend(std::iter::repeat_n(r, (b.0 - a.0) as usize));
    }
    radii
}

/// Eigenvalues of the companion matrix, balanced after rescaling `x = s·y` with `s`
/// the geometric mean of the root moduli.
fn companion_eigenvalues(core: &[f64]) -> Result<Vec<Complex64>> {
    let n = core.len() - 1;
    let scale = (core[0] / core[n]).abs().powf(1.0 / n as f64);
    let scaled: Vec<f64> = core.iter().enumerate().map(|(k, a)| a * scale.powi(k as i32)).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(0, k)] = -scaled[n - 1 - k] / scaled[n];
    }
    for k in 1..n {
        m[(k, k - 1)] = 1.0;
    }
    balance(&mut m);
    let schur = Schur::try_new(m, f64::EPSILON, 100 * n)
        .ok_or_else(|| Error::Numeric(format!("polynomial roots did not converge (degree {n})")))?;
    Ok(schur.complex_eigenvalues().iter().map(|z| z * scale).collect())
}

/// Simultaneous Aberth–Ehrlich iteration on a polynomial with nonzero constant
/// term, started on the Newton-polygon circles.
fn aberth(c: &[f64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let cc: Vec<Complex64> = c.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let dc: Vec<Complex64> = (1..=n).map(|k| cc[k] * k as f64).collect();
    let horner = |p: &[Complex64], z: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let mut z: Vec<Complex64> = newton_polygon_radii(c)
        .into_iter()
        .enumerate()
        .map(|(k, r)| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let size = |w: Complex64| c.iter().rev().fold(0.0, |acc, a| acc * w.norm() + a.abs());
    let mut settled = vec![false; n];
    for _ in 0..500 {
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let value = horner(&cc, z[i]);
            if value.norm() <= 4.0 * f64::EPSILON * size(z[i]) {
                settled[i] = true;
                continue;
            }
            let ratio = value / horner(&dc, z[i]);
            if ratio.norm() == 0.0 {
                settled[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                return None;
            }
            z[i] -= step;
            settled[i] = step.norm() <= 1e-15 * z[i].norm().max(f64::MIN_POSITIVE);
        }
        if settled.iter().all(|&s| s) {
            return Some(z);
        }
    }
    // multiple roots converge only linearly; accept if every iterate is a near-root
    z.iter().all(|&w| horner(&cc, w).norm() <= 1e-8 * size(w)).then_some(z)
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].abs();
                    row += m[(i, j)].abs();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut g = row / radix;
            while col < g {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while col > g {
                f /= radix;
                col /= radix * radix;
            }
            if (col + row) / f < 0.95 * total {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Emits an [`Obstruction`] for every isolated zero `q₀` (inside `ĝ`'s trust
/// radius) with `|ĝ(q₀) − 1| > 1e−6`.
pub fn obstruction_check(ghat: &QJet, report: &ZeroReport) -> Vec<Obstruction> {
    report
        .isolated_zeros
        .iter()
        .filter(|q| q.norm() <= ghat.trust_radius * (1.0 + 1e-9))
        .filter_map(|&q| {
            let value = ghat.eval_unchecked(q);
            ((value - Quaternion::ONE).norm() > OBSTRUCTION_TOL)
                .then_some(Obstruction { zero_point: q, g0_value: value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn poly(c: &[Quaternion]) -> QJet {
        QJet::new(c.to_vec(), c.len() - 1)
    }

    #[test]
    fn real_roots_of_quadratic() {
        let mut r = real_poly_roots(&[2.0, -3.0, 1.0]).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        let z = real_poly_roots(&[0.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(z.len(), 4);
        assert_eq!(z.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn q_squared_plus_one_is_spherical() {
        let p = poly(&[Quaternion::ONE, Quaternion::ZERO, Quaternion::ONE]);
        let r = classify_zeros(&p).unwrap();
        assert!(r.real_zeros.is_empty() && r.isolated_zeros.is_empty());
        assert_eq!(r.spherical_zeros.len(), 1);
        let s = r.spherical_zeros[0];
        assert!(s.alpha.abs() < 1e-12 && (s.beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qj_minus_k_has_isolated_zero_at_i() {
        let p = poly(&[-K, J]);
        let r = classify_zeros(&p).unwrap();
        assert_eq!(r.isolated_zeros.len(), 1);
        assert!(r.isolated_zeros[0].max_abs_diff(I) < 1e-12);
        assert!(r.spherical_zeros.is_empty());
    }

    #[test]
    fn q_minus_one_has_real_zero() {
        let p = poly(&[-Quaternion::ONE, Quaternion::ONE]);
        let r = classify_zeros(&p).unwrap();
        assert_eq!(r.real_zeros.len(), 1);
        assert!((r.real_zeros[0].point - 1.0).abs() < 1e-12);
        assert_eq!(r.real_zeros[0].multiplicity, 1);
    }

    #[test]
    fn real_zero_multiplicity() {
        // (q − 2)² · (i + qj)
        let sq = QJet::new(vec![Quaternion::real(4.0), Quaternion::real(-4.0), Quaternion::ONE], 3);
        let p = sq.star(&QJet::new(vec![I, J], 3));
        let r = classify_zeros(&p).unwrap();
        assert_eq!(r.real_zeros.len(), 1);
        assert!((r.real_zeros[0].point - 2.0).abs() < 1e-6);
        assert_eq!(r.real_zeros[0].multiplicity, 2);
        // i + qj vanishes at q = −i·j⁻¹ = k
        assert_eq!(r.isolated_zeros.len(), 1);
        assert!(r.isolated_zeros[0].max_abs_diff(K) < 1e-10);
    }

    #[test]
    fn double_isolated_zero() {
        // (q − i)^{*2} * j has the single zero i
        let lin = QJet::new(vec![-I, Quaternion::ONE], 2);
        let p = lin.star(&lin).star(&QJet::constant(J, 2));
        let r = classify_zeros(&p).unwrap();
        assert_eq!(r.isolated_zeros.len(), 1);
        assert!(r.isolated_zeros[0].max_abs_diff(I) < 1e-6);
    }

    #[test]
    fn radius_filter() {
        // (q − i)*(q − 2j)*(−2i + j) has zeros on |q| = 1 and |q| = 2
        let a = QJet::new(vec![-I, Quaternion::ONE], 3);
        let b = QJet::new(vec![J.scale(-2.0), Quaternion::ONE], 3);
        let p = a.star(&b).star(&QJet::constant(I.scale(-2.0) + J, 3));
        let all = classify_zeros(&p).unwrap();
        assert_eq!(all.isolated_zeros.len(), 2);
        let inner = classify_zeros_within(&p, 1.0).unwrap();
        assert_eq!(inner.isolated_zeros.len(), 1);
        assert!(inner.isolated_zeros[0].max_abs_diff(I) < 1e-10);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(classify_zeros(&QJet::zero(3)).is_err());
    }

    #[test]
    fn obstruction_on_constant_functions() {
        let report = ZeroReport { isolated_zeros: vec![I], ..Default::default() };
        let plus = QJet::one(4);
        assert!(obstruction_check(&plus, &report).is_empty());
        let minus = plus.neg();
        let obs = obstruction_check(&minus, &report);
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].g0_value, Quaternion::real(-1.0));
        // spherical-only reports never obstruct
        let spherical = ZeroReport {
            spherical_zeros: vec![SphericalZero { alpha: 0.0, beta: 1.0 }],
            ..Default::default()
        };
        assert!(obstruction_check(&minus, &spherical).is_empty());
    }
}
