//! Self-checks run by `sliceq verify`: algebraic identities, logarithm round
//! trips and the obstruction fixtures, each reported with its worst residual.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entire::{mu_eval, nu_eval, phi_eval};
use crate::quat::Quaternion;
use crate::series::{symmetrize, QJet, RJet};
use crate::starexp::{default_terms, star_exp_direct, star_exp_formula};
use crate::starlog::{cossin_solve, star_log, LogOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Roundtrip,
    Obstruction,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Identities, Suite::Roundtrip, Suite::Obstruction];
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub max_residual: f64,
    pub threshold: f64,
}

impl CheckResult {
    fn new(name: &str, max_residual: f64, threshold: f64) -> Self {
        CheckResult { name: name.to_string(), pass: max_residual <= threshold, max_residual, threshold }
    }
}

pub fn random_quaternion(rng: &mut impl Rng, radius: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if q.norm() <= 1.0 {
            return q.scale(radius);
        }
    }
}

/// A jet of the given order with coefficient norms at most `radius`.
pub fn random_qjet(rng: &mut impl Rng, order: usize, radius: f64) -> QJet {
    QJet::new((0..=order).map(|_| random_quaternion(rng, radius)).collect(), order)
}

pub fn random_rjet(rng: &mut impl Rng, order: usize, radius: f64) -> RJet {
    RJet::new((0..=order).map(|_| rng.gen_range(-radius..radius)).collect(), order)
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x) })
}

pub fn run(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::Identities => identities(),
        Suite::Roundtrip => roundtrip(),
        Suite::Obstruction => obstruction(),
    }
}

fn identities() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts: Vec<Quaternion> = (0..1000).map(|_| random_quaternion(&mut rng, 20.0)).collect();
    let sum_sq = worst(pts.iter().map(|&q| {
        let (m, n) = (mu_eval(q), nu_eval(q));
        (m * m + n * n * q - Quaternion::ONE).norm()
    }));
    let inverse = worst(pts.iter().map(|&q| match phi_eval(q) {
        Ok(w) => (mu_eval(w) - q).norm() / q.norm().max(1.0),
        Err(_) => 0.0,
    }));
    let jets: Vec<QJet> = (0..20).map(|k| random_qjet(&mut rng, 4 + k % 12, 2.0)).collect();
    let routes = worst(jets.iter().map(|f| {
        let a = star_exp_direct(f, default_terms(f.order()));
        let b = star_exp_formula(f).map_or(f64::INFINITY, |b| b.max_diff(&a));
        b / a.max_norm().max(1.0)
    }));
    let inverse_exp = worst(jets.iter().map(|f| {
        match (star_exp_formula(f), star_exp_formula(&f.neg())) {
            (Ok(a), Ok(b)) => b.star(&a).max_diff(&QJet::one(f.order())),
            _ => f64::INFINITY,
        }
    }));
    let modulus = worst(jets.iter().map(|f| match star_exp_formula(f).and_then(|e| symmetrize(&e)) {
        Ok(s) => {
            let want = f.real_part().scale(2.0).exp();
            s.max_diff(&want) / want.max_norm().max(1.0)
        }
        Err(_) => f64::INFINITY,
    }));
    vec![
        CheckResult::new("mu^2 + nu^2 q = 1", sum_sq, 1e-10),
        CheckResult::new("mu(phi(q)) = q", inverse, 1e-9),
        CheckResult::new("direct and closed-form exp_* agree", routes, 1e-8),
        CheckResult::new("exp_*(-F) * exp_*(F) = 1", inverse_exp, 1e-9),
        CheckResult::new("(exp_* F)^s = exp(2 f0)", modulus, 1e-9),
    ]
}

fn roundtrip() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut log_residual = 0.0f64;
    let mut real_part = 0.0f64;
    for k in 0..40 {
        let mut f = random_qjet(&mut rng, 1 + k % 12, 0.5);
        let shift = rng.gen_range(-2.0..2.0);
        f.set_coeff(0, f.coeff(0) + Quaternion::real(shift));
        let g = match star_exp_formula(&f) {
            Ok(g) => g,
            Err(_) => return vec![CheckResult::new("log round trip", f64::INFINITY, 1e-7)],
        };
        let r = match star_log(&g) {
            Ok(LogOutcome::Log(r)) => r,
            _ => {
                log_residual = f64::INFINITY;
                continue;
            }
        };
        let back = star_exp_formula(&r.f).map_or(f64::INFINITY, |e| e.max_diff(&g));
        log_residual = log_residual.max(back);
        real_part = real_part.max(r.f.real_part().max_diff(&r.psi.scale(0.5)));
    }
    let mut family = 0.0f64;
    for _ in 0..20 {
        let f = random_qjet(&mut rng, 8, 0.5);
        let fv = f.vector_part();
        let h = symmetrize(&fv)
            .and_then(|s| s.sqrt())
            .and_then(|t| t.recip())
            .map(|r| r.mul_q(&fv).scale(2.0 * std::f64::consts::PI));
        family = family.max(match (h, star_exp_formula(&f)) {
            (Ok(h), Ok(a)) => star_exp_formula(&f.add(&h)).map_or(f64::INFINITY, |b| b.max_diff(&a)),
            _ => f64::INFINITY,
        });
    }
    let mut cossin = 0.0f64;
    for _ in 0..20 {
        let h = random_rjet(&mut rng, 12, 1.0);
        let (c, s) = h.cos_sin();
        cossin = cossin.max(match cossin_solve(&c, &s) {
            Ok(g) => {
                let turns = ((g.coeff(0) - h.coeff(0)) / std::f64::consts::TAU).round();
                g.add_const(-turns * std::f64::consts::TAU).max_diff(&h)
            }
            Err(_) => f64::INFINITY,
        });
    }
    vec![
        CheckResult::new("exp_*(log_* G) = G", log_residual, 1e-7),
        CheckResult::new("real part of log_* G = psi/2", real_part, 0.0),
        CheckResult::new("exp_*(F + 2 pi F_v/sqrt(F_v^s)) = exp_*(F)", family, 1e-7),
        CheckResult::new("cossin_solve(cos h, sin h) = h mod 2 pi", cossin, 1e-9),
    ]
}

/// `(q − i)*j`, `(q − i)^{*2}*j` and `(q − i)*(q − 2j)*(−2i + j)` at the given order.
pub fn obstruction_fixtures(order: usize) -> Vec<(&'static str, QJet)> {
    let (i, j) = (Quaternion::I, Quaternion::J);
    let lin = |a: Quaternion| QJet::new(vec![-a, Quaternion::ONE], order);
    let cj = QJet::constant(j, order);
    vec![
        ("(q-i)*j", lin(i).star(&cj)),
        ("(q-i)^2*j", lin(i).star(&lin(i)).star(&cj)),
        (
            "(q-i)*(q-2j)*(-2i+j)",
            lin(i).star(&lin(j.scale(2.0))).star(&QJet::constant(i.scale(-2.0) + j, order)),
        ),
    ]
}

fn obstruction() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, p) in obstruction_fixtures(64) {
        let g = match star_exp_formula(&p) {
            Ok(g) => g,
            Err(_) => {
                out.push(CheckResult::new(name, f64::INFINITY, 0.0));
                continue;
            }
        };
        // residual is |ĝ(q₀) + 1| for the negated function, which must be refused
        let negated = match star_log(&g.neg()) {
            Ok(LogOutcome::Obstructed(obs)) => {
                worst(obs.iter().map(|o| (o.g0_value + Quaternion::ONE).norm()))
            }
            _ => f64::INFINITY,
        };
        out.push(CheckResult::new(&format!("-exp_*({name}) obstructed"), negated, 1e-6));
        let plain = match star_log(&g) {
            Ok(LogOutcome::Log(r)) => r.residual,
            _ => f64::INFINITY,
        };
        out.push(CheckResult::new(&format!("exp_*({name}) has a logarithm"), plain, 1e-7));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for suite in Suite::ALL {
            for check in run(suite) {
                assert!(check.pass, "{suite:?}: {check:?}");
            }
        }
    }
}
