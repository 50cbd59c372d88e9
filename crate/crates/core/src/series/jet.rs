use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::quat::Quaternion;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;
/// Default coefficient comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default radius inside which a jet is trusted to represent its function.
pub const DEFAULT_TRUST_RADIUS: f64 = 1.0;

/// Scalars a jet may carry: reals or quaternions.
pub trait Coeff:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
    fn conj(self) -> Self;
    fn to_quaternion(self) -> Quaternion;
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn conj(self) -> Self {
        self
    }
    fn to_quaternion(self) -> Quaternion {
        Quaternion::real(self)
    }
}

impl Coeff for Quaternion {
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn from_real(r: f64) -> Self {
        Quaternion::real(r)
    }
    fn scale(self, s: f64) -> Self {
        Quaternion::scale(self, s)
    }
    fn norm(self) -> f64 {
        Quaternion::norm(self)
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn to_quaternion(self) -> Quaternion {
        self
    }
}

/// Truncated power series `Σ_{n ≤ N} qⁿ aₙ` centered at 0, coefficients on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<C> {
    coeffs: Vec<C>,
    pub trust_radius: f64,
    pub tol: f64,
}

/// Jet with quaternionic coefficients: a slice regular function on a ball.
pub type QJet = Jet<Quaternion>;
/// Jet with real coefficients: a slice preserving function on a ball.
pub type RJet = Jet<f64>;

impl<C: Coeff> Jet<C> {
    /// Builds a jet of the given order; missing coefficients are zero and extra ones are dropped.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Jet { coeffs, trust_radius: DEFAULT_TRUST_RADIUS, tol: DEFAULT_TOL }
    }

    pub fn zero(order: usize) -> Self {
        Jet::new(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Jet::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Jet::constant(C::one(), order)
    }

    /// The identity function `q`.
    pub fn variable(order: usize) -> Self {
        Jet::new(vec![C::zero(), C::one()], order)
    }

    pub fn with_trust_radius(mut self, r: f64) -> Self {
        self.trust_radius = r;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Copies trust radius and tolerance from `other`.
    pub(crate) fn with_meta_of<D>(mut self, other: &Jet<D>) -> Self {
        self.trust_radius = other.trust_radius;
        self.tol = other.tol;
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).copied().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeffs[0]
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn truncate(&self, order: usize) -> Self {
        Jet::new(self.coeffs.clone(), order).with_meta_of(self)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(C) -> D) -> Jet<D> {
        Jet::new(self.coeffs.iter().map(|&c| f(c)).collect(), self.order()).with_meta_of(self)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c.scale(s))
    }

    fn merge_meta(&self, other: &Jet<C>, order: usize, coeffs: Vec<C>) -> Self {
        Jet {
            coeffs: {
                let mut c = coeffs;
                c.resize(order + 1, C::zero());
                c
            },
            trust_radius: self.trust_radius.min(other.trust_radius),
            tol: self.tol.max(other.tol),
        }
    }

    pub fn add(&self, other: &Jet<C>) -> Self {
        let order = self.order().max(other.order());
        let coeffs = (0..=order).map(|n| self.coeff(n) + other.coeff(n)).collect();
        self.merge_meta(other, order, coeffs)
    }

    pub fn sub(&self, other: &Jet<C>) -> Self {
        let order = self.order().max(other.order());
        let coeffs = (0..=order).map(|n| self.coeff(n) - other.coeff(n)).collect();
        self.merge_meta(other, order, coeffs)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    /// Cauchy product `c_n = Σ a_k b_{n−k}`; for quaternionic jets this is the *-product.
    pub fn star(&self, other: &Jet<C>) -> Self {
        let order = self.order().max(other.order());
        let mut out = vec![C::zero(); order + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == C::zero() {
                continue;
            }
            for (m, &b) in other.coeffs.iter().take(order + 1 - k).enumerate() {
                out[k + m] = out[k + m] + a * b;
            }
        }
        self.merge_meta(other, order, out)
    }

    /// Coefficientwise conjugation, `F^c`.
    pub fn conj(&self) -> Self {
        self.map(C::conj)
    }

    /// Largest coefficient norm.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other`.
    pub fn max_diff(&self, other: &Jet<C>) -> f64 {
        let order = self.order().max(other.order());
        (0..=order).map(|n| (self.coeff(n) - other.coeff(n)).norm()).fold(0.0, f64::max)
    }

    /// Scale-aware equality: coefficientwise `≤ tol·max(1, largest coefficient norm)`.
    pub fn approx_eq(&self, other: &Jet<C>, tol: f64) -> bool {
        let scale = self.max_norm().max(other.max_norm()).max(1.0);
        self.max_diff(other) <= tol * scale
    }

    /// Evaluates `Σ qⁿ aₙ` (left powers of `q`, right coefficients).
    ///
    /// Warns through `log` when `q` lies outside the trust radius.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        if q.norm() > self.trust_radius * (1.0 + 1e-12) {
            log::warn!(
                "evaluating a jet at |q| = {} outside its trust radius {}",
                q.norm(),
                self.trust_radius
            );
        }
        self.eval_unchecked(q)
    }

    /// Horner evaluation without the trust-radius warning.
    pub fn eval_unchecked(&self, q: Quaternion) -> Quaternion {
        // q commutes with its own powers, so Horner in the left variable is exact.
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| q * acc + a.to_quaternion())
    }

    /// Index of the last coefficient with norm above `eps`, or 0.
    pub fn degree(&self, eps: f64) -> usize {
        self.coeffs.iter().rposition(|c| c.norm() > eps).unwrap_or(0)
    }

    /// Smallest `D` such that the tail `Σ_{n>D} |aₙ| rⁿ` is at most `rel` times the whole sum.
    pub fn effective_degree(&self, r: f64, rel: f64) -> usize {
        let weights: Vec<f64> = {
            let mut p = 1.0;
            self.coeffs
                .iter()
                .map(|c| {
                    let w = c.norm() * p;
                    p *= r;
                    w
                })
                .collect()
        };
        let total: f64 = weights.iter().sum();
        let mut tail = 0.0;
        for d in (0..weights.len()).rev() {
            tail += weights[d];
            if tail > rel * total {
                return d;
            }
        }
        0
    }
}

impl RJet {
    /// Embeds a real jet as a quaternionic one.
    pub fn to_qjet(&self) -> QJet {
        self.map(Quaternion::real)
    }

    /// Real jet times quaternionic jet; commutes because real coefficients are central.
    pub fn mul_q(&self, other: &QJet) -> QJet {
        self.to_qjet().star(other)
    }

    pub fn eval_real(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| t * acc + a)
    }
}

impl QJet {
    /// Splits `F = f₀ + f₁i + f₂j + f₃k` into four real jets.
    pub fn split(&self) -> VectorSplit {
        VectorSplit {
            f0: self.map(|c| c.w),
            f1: self.map(|c| c.x),
            f2: self.map(|c| c.y),
            f3: self.map(|c| c.z),
        }
    }

    /// Vector part `f_v = f₁i + f₂j + f₃k`.
    pub fn vector_part(&self) -> QJet {
        self.map(Quaternion::vector)
    }

    pub fn real_part(&self) -> RJet {
        self.map(|c| c.w)
    }

    /// Largest imaginary component over all coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.coeffs.iter().map(|c| c.vector_norm()).fold(0.0, f64::max)
    }

    /// The real jet of real parts, if every imaginary part is within `tol·max(1, scale)`.
    pub fn as_real(&self, tol: f64) -> Option<RJet> {
        (self.max_imaginary() <= tol * self.max_norm().max(1.0)).then(|| self.real_part())
    }
}

/// The four real components of a quaternionic jet.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSplit {
    pub f0: RJet,
    pub f1: RJet,
    pub f2: RJet,
    pub f3: RJet,
}

impl VectorSplit {
    pub fn reassemble(&self) -> QJet {
        let order = self.f0.order();
        let coeffs = (0..=order)
            .map(|n| {
                Quaternion::new(self.f0.coeff(n), self.f1.coeff(n), self.f2.coeff(n), self.f3.coeff(n))
            })
            .collect();
        QJet::new(coeffs, order).with_meta_of(&self.f0)
    }

    /// `f₁² + f₂² + f₃²`, the symmetrization of the vector part.
    pub fn vector_sum_of_squares(&self) -> RJet {
        self.f1.star(&self.f1).add(&self.f2.star(&self.f2)).add(&self.f3.star(&self.f3))
    }
}
