//! Report documents written by `--out` and the human-readable renderings printed
//! to stdout. Field order is the serialization order, so reports are stable.

use serde::Serialize;
use sliceq::verify::CheckResult;
use sliceq::zeros::{RealZero, SphericalZero};
use sliceq::{Quaternion, QJet, RJet};

pub const OBSTRUCTION_RULE: &str = "non-real isolated zero of g_v with g(q0) != 1";

#[derive(Serialize)]
pub struct Report<I: Serialize, B: Serialize> {
    pub command: &'static str,
    pub inputs: I,
    #[serde(flatten)]
    pub body: B,
}

#[derive(Serialize)]
pub struct Common<'a> {
    pub order: usize,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r#fn: Option<&'a str>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub error: ErrorInfo,
}

#[derive(Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: u8,
}

#[derive(Serialize)]
pub struct EvalBody {
    pub value: Quaternion,
    pub inside_trust_radius: bool,
}

#[derive(Serialize)]
pub struct ExpBody {
    pub route: &'static str,
    pub coefficients: Vec<Quaternion>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct LogBody {
    pub route: &'static str,
    pub residual: f64,
    pub point_residual: f64,
    pub psi: Vec<f64>,
    pub coefficients: Vec<Quaternion>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct ObstructionInfo {
    pub zero: Quaternion,
    pub g0_value: Quaternion,
}

#[derive(Serialize)]
pub struct ObstructionBody {
    pub rule: &'static str,
    /// The first obstruction found.
    pub obstruction: ObstructionInfo,
    pub obstructions: Vec<ObstructionInfo>,
}

#[derive(Serialize)]
pub struct CossinBody {
    pub gamma: Vec<f64>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct ClassifyBody<'a> {
    pub real_zeros: &'a [RealZero],
    pub spherical_zeros: &'a [SphericalZero],
    pub isolated_zeros: &'a [Quaternion],
}

#[derive(Serialize)]
pub struct VerifyBody {
    pub pass: bool,
    pub checks: Vec<SuiteCheck>,
}

#[derive(Serialize)]
pub struct SuiteCheck {
    pub suite: &'static str,
    #[serde(flatten)]
    pub check: CheckResult,
}

#[derive(Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub max_residual: f64,
    pub threshold: f64,
}

impl Check {
    pub fn new(name: &'static str, max_residual: f64, threshold: f64) -> Self {
        Check { name, pass: max_residual <= threshold, max_residual, threshold }
    }
}

/// Rounds components that are negligible next to the largest one, then prints the
/// shortest literal, e.g. `i`, `-1`, `0.5-2j`.
pub fn literal(q: Quaternion) -> String {
    let cutoff = 1e-12 * q.norm();
    let clean = |x: f64| {
        if x.abs() <= cutoff {
            0.0
        } else {
            let r = (x * 1e12).round() / 1e12;
            if r == 0.0 { x } else { r }
        }
    };
    let parts = [(clean(q.w), ""), (clean(q.x), "i"), (clean(q.y), "j"), (clean(q.z), "k")];
    let mut out = String::new();
    for (x, unit) in parts {
        if x == 0.0 {
            continue;
        }
        let sign = if x < 0.0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = x.abs();
        let body = if mag == 1.0 && !unit.is_empty() { String::new() } else { format!("{mag}") };
        out.push_str(&format!("{sign}{body}{unit}"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

const SHOWN: usize = 12;

pub fn print_qjet(label: &str, f: &QJet) {
    let eps = 1e-14 * f.max_norm().max(1.0);
    let nonzero: Vec<(usize, Quaternion)> =
        f.coeffs().iter().copied().enumerate().filter(|(_, c)| c.norm() > eps).collect();
    println!("{label} (order {}, {} nonzero coefficients):", f.order(), nonzero.len());
    for (n, c) in nonzero.iter().take(SHOWN) {
        println!("  a{n:<3} = {}", literal(*c));
    }
    if nonzero.len() > SHOWN {
        println!("  ... {} more", nonzero.len() - SHOWN);
    }
}

pub fn print_rjet(label: &str, f: &RJet) {
    print_qjet(label, &f.to_qjet());
}

pub fn print_checks(checks: &[Check]) {
    for c in checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!("  [{mark}] {:<40} {:.3e} (<= {:.0e})", c.name, c.max_residual, c.threshold);
    }
}
