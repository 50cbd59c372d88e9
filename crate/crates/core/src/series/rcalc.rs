//! Functional calculus on real-coefficient jets.

use crate::error::{Error, Result};
use crate::series::RJet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RCalcOp {
    Exp,
    Log,
    Sqrt,
    Recip,
    Integrate,
    Derive,
}

/// Dispatches one of the elementary real-jet operations.
pub fn rjet_calculus(op: RCalcOp, f: &RJet) -> Result<RJet> {
    match op {
        RCalcOp::Exp => Ok(f.exp()),
        RCalcOp::Log => f.ln(),
        RCalcOp::Sqrt => f.sqrt(),
        RCalcOp::Recip => f.recip(),
        RCalcOp::Integrate => Ok(f.integrate()),
        RCalcOp::Derive => Ok(f.derive()),
    }
}

impl RJet {
    pub fn exp(&self) -> RJet {
        let a = self.coeffs();
        let n = a.len();
        let mut e = vec![0.0; n];
        e[0] = a[0].exp();
        for m in 1..n {
            let s: f64 = (1..=m).map(|k| k as f64 * a[k] * e[m - k]).sum();
            e[m] = s / m as f64;
        }
        RJet::new(e, self.order()).with_meta_of(self)
    }

    pub fn ln(&self) -> Result<RJet> {
        let a = self.coeffs();
        if !(a[0] > 0.0) {
            return Err(Error::Domain(format!("log needs a positive constant term, got {}", a[0])));
        }
        let n = a.len();
        let mut l = vec![0.0; n];
        l[0] = a[0].ln();
        for m in 1..n {
            let s: f64 = (1..m).map(|k| k as f64 * l[k] * a[m - k]).sum();
            l[m] = (m as f64 * a[m] - s) / (m as f64 * a[0]);
        }
        Ok(RJet::new(l, self.order()).with_meta_of(self))
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> Result<RJet> {
        let a = self.coeffs();
        if !(a[0] > 0.0) {
            return Err(Error::Domain(format!("sqrt needs a positive constant term, got {}", a[0])));
        }
        let n = a.len();
        let mut s = vec![0.0; n];
        s[0] = a[0].sqrt();
        for m in 1..n {
            let c: f64 = (1..m).map(|k| s[k] * s[m - k]).sum();
            s[m] = (a[m] - c) / (2.0 * s[0]);
        }
        Ok(RJet::new(s, self.order()).with_meta_of(self))
    }

    pub fn recip(&self) -> Result<RJet> {
        let a = self.coeffs();
        if a[0] == 0.0 || !a[0].is_finite() {
            return Err(Error::Domain(format!("reciprocal needs a nonzero constant term, got {}", a[0])));
        }
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = 1.0 / a[0];
        for m in 1..n {
            let c: f64 = (1..=m).map(|k| a[k] * b[m - k]).sum();
            b[m] = -c / a[0];
        }
        Ok(RJet::new(b, self.order()).with_meta_of(self))
    }

    pub fn div(&self, other: &RJet) -> Result<RJet> {
        Ok(self.star(&other.recip()?))
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> RJet {
        let mut c = vec![0.0];
        c.extend(self.coeffs().iter().enumerate().map(|(k, &a)| a / (k + 1) as f64));
        RJet::new(c, self.order() + 1).with_meta_of(self)
    }

    /// Derivative; the order drops by one (an order-0 jet stays order 0).
    pub fn derive(&self) -> RJet {
        let order = self.order().saturating_sub(1);
        let c = self.coeffs().iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect();
        RJet::new(c, order).with_meta_of(self)
    }

    /// `(cos f, sin f)`.
    pub fn cos_sin(&self) -> (RJet, RJet) {
        let a = self.coeffs();
        let n = a.len();
        let mut c = vec![0.0; n];
        let mut s = vec![0.0; n];
        c[0] = a[0].cos();
        s[0] = a[0].sin();
        for m in 1..n {
            let mut dc = 0.0;
            let mut ds = 0.0;
            for k in 1..=m {
                let ka = k as f64 * a[k];
                dc -= ka * s[m - k];
                ds += ka * c[m - k];
            }
            c[m] = dc / m as f64;
            s[m] = ds / m as f64;
        }
        (
            RJet::new(c, self.order()).with_meta_of(self),
            RJet::new(s, self.order()).with_meta_of(self),
        )
    }

    pub fn add_const(&self, c: f64) -> RJet {
        let mut out = self.clone();
        out.set_coeff(0, self.coeff(0) + c);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taylor(f: impl Fn(usize) -> f64, order: usize) -> RJet {
        RJet::new((0..=order).map(f).collect(), order)
    }

    fn fact(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn exp_of_zero_and_of_variable() {
        assert_eq!(RJet::zero(5).exp(), RJet::one(5));
        let e = RJet::variable(12).exp();
        assert!(e.max_diff(&taylor(|n| 1.0 / fact(n), 12)) < 1e-16);
    }

    #[test]
    fn sqrt_of_perfect_square() {
        // (1 + q)² = 1 + 2q + q²
        let s = RJet::new(vec![1.0, 2.0, 1.0], 8).sqrt().unwrap();
        assert!(s.max_diff(&RJet::new(vec![1.0, 1.0], 8)) < 1e-15);
        assert!(s.star(&s).max_diff(&RJet::new(vec![1.0, 2.0, 1.0], 8)) < 1e-15);
    }

    #[test]
    fn log_exp_roundtrip() {
        let f = RJet::new(vec![0.3, -0.2, 0.5, 0.1, -0.4], 10);
        let back = f.exp().ln().unwrap();
        assert!(back.max_diff(&f) < 1e-14);
    }

    #[test]
    fn recip_and_div() {
        let f = RJet::new(vec![2.0, 1.0, -0.5], 10);
        let r = f.recip().unwrap();
        assert!(f.star(&r).max_diff(&RJet::one(10)) < 1e-15);
        // 1/(1 − q) = Σ qⁿ
        let g = RJet::new(vec![1.0, -1.0], 6).recip().unwrap();
        assert_eq!(g, taylor(|_| 1.0, 6));
    }

    #[test]
    fn integrate_and_derive() {
        let f = RJet::new(vec![1.0, 2.0, 3.0], 2);
        let i = f.integrate();
        assert_eq!(i.order(), 3);
        assert_eq!(i.coeffs(), &[0.0, 1.0, 1.0, 1.0]);
        assert_eq!(i.derive(), f);
        assert_eq!(f.derive().coeffs(), &[2.0, 6.0]);
    }

    #[test]
    fn cos_sin_of_variable() {
        let (c, s) = RJet::variable(14).cos_sin();
        let cos = taylor(|n| if n % 2 == 0 { (-1f64).powi(n as i32 / 2) / fact(n) } else { 0.0 }, 14);
        let sin = taylor(|n| if n % 2 == 1 { (-1f64).powi(n as i32 / 2) / fact(n) } else { 0.0 }, 14);
        assert!(c.max_diff(&cos) < 1e-16);
        assert!(s.max_diff(&sin) < 1e-16);
    }

    #[test]
    fn domain_errors_name_the_constant() {
        let f = RJet::new(vec![-1.0, 1.0], 3);
        let e = rjet_calculus(RCalcOp::Log, &f).unwrap_err();
        assert!(e.to_string().contains("-1"));
        assert!(rjet_calculus(RCalcOp::Sqrt, &RJet::zero(3)).is_err());
        assert!(rjet_calculus(RCalcOp::Recip, &RJet::zero(3)).is_err());
        assert!(rjet_calculus(RCalcOp::Exp, &RJet::zero(3)).is_ok());
    }
}
