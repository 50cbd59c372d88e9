//! `sliceq`: evaluate, exponentiate and take *-logarithms of slice regular
//! functions given as JSON coefficient files.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sliceq::starexp::{default_terms, star_exp_direct, star_exp_formula};
use sliceq::starlog::star_log_with;
use sliceq::verify::{self, Suite};
use sliceq::{
    classify_zeros, cossin_solve, Error, FunctionFile, LogConfig, LogOutcome, QJet, Quaternion,
};

use report::*;

const EXIT_INPUT: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_OBSTRUCTION: u8 = 3;
const EXIT_RESIDUAL: u8 = 4;

/// Threshold for agreement of the two exponential routes.
const ROUTE_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "sliceq", version)]
#[command(about = "*-exponentials and *-logarithms of quaternionic power series")]
struct Cli {
    /// Truncation order of every jet.
    #[arg(long, global = true, default_value_t = 64)]
    order: usize,

    /// Numerical tolerance carried by the jets.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at a quaternion
    Eval {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Quaternion literal, e.g. "j" or "1-0.5i+2k".
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// *-exponential of a function
    Exp {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, value_enum, default_value_t = ExpRoute::Formula)]
        route: ExpRoute,
        /// Store the result as a function file.
        #[arg(long)]
        save: Option<PathBuf>,
        /// Negate the result before reporting and saving.
        #[arg(long)]
        negate: bool,
    },
    /// *-logarithm of a function, or the obstruction that rules it out
    Log {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Store the logarithm as a function file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Real jet gamma with cos(gamma) = a0 and sin(gamma) = a1
    Cossin {
        #[arg(long)]
        a0: PathBuf,
        #[arg(long)]
        a1: PathBuf,
    },
    /// Real, spherical and isolated zeros of a polynomial
    Classify {
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Run the built-in invariant suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ExpRoute {
    Direct,
    Formula,
    Both,
}

impl ExpRoute {
    fn name(self) -> &'static str {
        match self {
            ExpRoute::Direct => "direct",
            ExpRoute::Formula => "formula",
            ExpRoute::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SuiteArg {
    All,
    Identities,
    Roundtrip,
    Obstruction,
}

/// A failed command: exit code plus what to report.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) => (EXIT_INPUT, "input"),
            e if e.is_precondition() => (EXIT_PRECONDITION, "precondition"),
            Error::Residual { .. } => (EXIT_RESIDUAL, "residual"),
            _ => (EXIT_RESIDUAL, "numeric"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

/// Successful or obstructed outcome: the report body and the exit code.
struct Outcome<B> {
    body: B,
    code: u8,
}

impl<B> Outcome<B> {
    fn ok(body: B) -> Self {
        Outcome { body, code: 0 }
    }
}

struct Ctx {
    order: usize,
    tol: f64,
    out: Option<PathBuf>,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<QJet, Error> {
        let file = FunctionFile::read(path).map_err(|e| match e {
            Error::Io(io) => Error::Parse(format!("{}: {io}", path.display())),
            Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
            other => other,
        })?;
        let order = self.order.max(file.listed_degree());
        Ok(file.to_qjet(order).with_tol(self.tol))
    }

    fn emit<I: Serialize, B: Serialize>(&self, command: &'static str, inputs: I, body: B) -> Result<(), Failure> {
        if let Some(path) = &self.out {
            let doc = Report { command, inputs, body };
            let text = serde_json::to_string_pretty(&doc).map_err(Error::from)?;
            std::fs::write(path, text + "\n")
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    /// Runs a command, then reports its outcome or failure.
    fn finish<I: Serialize, B: Serialize>(
        &self,
        command: &'static str,
        inputs: I,
        result: Result<Outcome<B>, Failure>,
    ) -> u8 {
        let (written, code) = match result {
            Ok(o) => (self.emit(command, &inputs, o.body), o.code),
            Err(f) => {
                eprintln!("error: {}", f.message);
                let body = ErrorBody { error: ErrorInfo { kind: f.kind, message: f.message, exit_code: f.code } };
                (self.emit(command, &inputs, body), f.code)
            }
        };
        match written {
            Ok(()) => code,
            Err(f) => {
                eprintln!("error: {}", f.message);
                f.code
            }
        }
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn save(path: &Option<PathBuf>, f: &QJet) -> Result<(), Failure> {
    if let Some(path) = path {
        FunctionFile::from_qjet(f)
            .write(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        println!("saved to {}", path.display());
    }
    Ok(())
}

fn eval(ctx: &Ctx, function: &Path, at: &str) -> Result<Outcome<EvalBody>, Failure> {
    let f = ctx.load(function)?;
    let q: Quaternion = at.parse()?;
    let inside = q.norm() <= f.trust_radius * (1.0 + 1e-12);
    let value = f.eval(q);
    println!("F({}) = {}", literal(q), literal(value));
    if !inside {
        println!("warning: |q| = {} exceeds the trust radius {}", q.norm(), f.trust_radius);
    }
    Ok(Outcome::ok(EvalBody { value, inside_trust_radius: inside }))
}

fn exp(ctx: &Ctx, function: &Path, route: ExpRoute, save_to: &Option<PathBuf>, negate: bool) -> Result<Outcome<ExpBody>, Failure> {
    let f = ctx.load(function)?;
    let direct = || star_exp_direct(&f, default_terms(f.order()));
    let (g, checks) = match route {
        ExpRoute::Direct => (direct(), Vec::new()),
        ExpRoute::Formula => (star_exp_formula(&f)?, Vec::new()),
        ExpRoute::Both => {
            let a = star_exp_formula(&f)?;
            let d = direct().max_diff(&a) / a.max_norm().max(1.0);
            (a, vec![Check::new("direct vs closed form", d, ROUTE_AGREEMENT)])
        }
    };
    let g = if negate { g.neg() } else { g };
    print_qjet(if negate { "-exp_*(F)" } else { "exp_*(F)" }, &g);
    print_checks(&checks);
    save(save_to, &g)?;
    let failed = checks.iter().any(|c| !c.pass);
    Ok(Outcome {
        body: ExpBody { route: route.name(), coefficients: g.coeffs().to_vec(), checks },
        code: if failed { EXIT_RESIDUAL } else { 0 },
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum LogReport {
    Log(LogBody),
    Obstructed(ObstructionBody),
}

fn log(ctx: &Ctx, function: &Path, save_to: &Option<PathBuf>) -> Result<Outcome<LogReport>, Failure> {
    let g = ctx.load(function)?;
    let config = LogConfig::default();
    match star_log_with(&g, &config)? {
        LogOutcome::Log(r) => {
            println!("*-logarithm found by the {} route", r.route.name());
            let checks = vec![
                Check::new("coefficientwise residual", r.residual, config.coeff_threshold),
                Check::new("pointwise residual", r.point_residual, config.point_threshold),
            ];
            print_checks(&checks);
            print_qjet("log_*(G)", &r.f);
            save(save_to, &r.f)?;
            Ok(Outcome::ok(LogReport::Log(LogBody {
                route: r.route.name(),
                residual: r.residual,
                point_residual: r.point_residual,
                psi: r.psi.coeffs().to_vec(),
                coefficients: r.f.coeffs().to_vec(),
                checks,
            })))
        }
        LogOutcome::Obstructed(obs) => {
            println!("no *-logarithm: {OBSTRUCTION_RULE}");
            for o in &obs {
                println!("  zero q0 = {}, g(q0) = {}", literal(o.zero_point), literal(o.g0_value));
            }
            let infos: Vec<ObstructionInfo> =
                obs.iter().map(|o| ObstructionInfo { zero: o.zero_point, g0_value: o.g0_value }).collect();
            let first = ObstructionInfo { zero: obs[0].zero_point, g0_value: obs[0].g0_value };
            Ok(Outcome {
                body: LogReport::Obstructed(ObstructionBody {
                    rule: OBSTRUCTION_RULE,
                    obstruction: first,
                    obstructions: infos,
                }),
                code: EXIT_OBSTRUCTION,
            })
        }
    }
}

fn cossin(ctx: &Ctx, a0: &Path, a1: &Path) -> Result<Outcome<CossinBody>, Failure> {
    let real = |p: &Path| -> Result<_, Error> {
        let f = ctx.load(p)?;
        f.as_real(0.0)
            .map(|r| r.with_tol(ctx.tol))
            .ok_or_else(|| Error::Parse(format!("{}: expected real coefficients", p.display())))
    };
    let (a0, a1) = (real(a0)?, real(a1)?);
    let gamma = cossin_solve(&a0, &a1)?;
    let (c, s) = gamma.cos_sin();
    let checks = vec![
        Check::new("cos(gamma) = a0", c.max_diff(&a0.truncate(gamma.order())), ctx.tol),
        Check::new("sin(gamma) = a1", s.max_diff(&a1.truncate(gamma.order())), ctx.tol),
    ];
    print_rjet("gamma", &gamma);
    print_checks(&checks);
    Ok(Outcome::ok(CossinBody { gamma: gamma.coeffs().to_vec(), checks }))
}

fn classify(ctx: &Ctx, function: &Path) -> u8 {
    let inputs = Common { order: ctx.order, tol: ctx.tol, r#fn: Some(&path_str(function)) };
    let report = match ctx.load(function).and_then(|p| classify_zeros(&p)) {
        Ok(r) => r,
        Err(e) => return ctx.finish::<_, ()>("classify", inputs, Err(e.into())),
    };
    for z in &report.real_zeros {
        println!("real zero       {} (multiplicity {})", z.point, z.multiplicity);
    }
    for s in &report.spherical_zeros {
        println!("spherical zero  {} + {} S", s.alpha, s.beta);
    }
    for q in &report.isolated_zeros {
        println!("isolated zero   {}", literal(*q));
    }
    if report.real_zeros.is_empty() && report.sphere_count() == 0 {
        println!("no zeros");
    }
    let body = ClassifyBody {
        real_zeros: &report.real_zeros,
        spherical_zeros: &report.spherical_zeros,
        isolated_zeros: &report.isolated_zeros,
    };
    ctx.finish("classify", inputs, Ok(Outcome::ok(body)))
}

fn run_verify(suite: SuiteArg) -> Outcome<VerifyBody> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Roundtrip => vec![Suite::Roundtrip],
        SuiteArg::Obstruction => vec![Suite::Obstruction],
    };
    let results: Vec<(Suite, Vec<verify::CheckResult>)> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&su| (su, s.spawn(move || verify::run(su)))).collect();
        handles.into_iter().map(|(su, h)| (su, h.join().expect("suite panicked"))).collect()
    });
    let mut checks = Vec::new();
    for (su, rs) in results {
        let name = match su {
            Suite::Identities => "identities",
            Suite::Roundtrip => "roundtrip",
            Suite::Obstruction => "obstruction",
        };
        println!("{name}:");
        for c in rs {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            println!("  [{mark}] {:<48} {:.3e} (<= {:.0e})", c.name, c.max_residual, c.threshold);
            checks.push(SuiteCheck { suite: name, check: c });
        }
    }
    let pass = checks.iter().all(|c| c.check.pass);
    Outcome { body: VerifyBody { pass, checks }, code: if pass { 0 } else { EXIT_RESIDUAL } }
}

#[derive(Serialize)]
struct WithExtra<'a, E: Serialize> {
    #[serde(flatten)]
    common: Common<'a>,
    #[serde(flatten)]
    extra: E,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let ctx = Ctx { order: cli.order, tol: cli.tol, out: cli.out };
    let common = |f: Option<&Path>| (ctx.order, ctx.tol, f.map(path_str));
    let code = match &cli.command {
        Command::Eval { function, at } => {
            let (order, tol, f) = common(Some(function));
            #[derive(Serialize)]
            struct At<'a> {
                at: &'a str,
            }
            let inputs = WithExtra { common: Common { order, tol, r#fn: f.as_deref() }, extra: At { at } };
            ctx.finish("eval", inputs, eval(&ctx, function, at))
        }
        Command::Exp { function, route, save: to, negate } => {
            let (order, tol, f) = common(Some(function));
            #[derive(Serialize)]
            struct ExpIn {
                route: ExpRoute,
                negate: bool,
            }
            let inputs = WithExtra {
                common: Common { order, tol, r#fn: f.as_deref() },
                extra: ExpIn { route: *route, negate: *negate },
            };
            ctx.finish("exp", inputs, exp(&ctx, function, *route, to, *negate))
        }
        Command::Log { function, save: to } => {
            let (order, tol, f) = common(Some(function));
            let inputs = Common { order, tol, r#fn: f.as_deref() };
            ctx.finish("log", inputs, log(&ctx, function, to))
        }
        Command::Cossin { a0, a1 } => {
            #[derive(Serialize)]
            struct Pair {
                a0: String,
                a1: String,
            }
            let inputs = WithExtra {
                common: Common { order: ctx.order, tol: ctx.tol, r#fn: None },
                extra: Pair { a0: path_str(a0), a1: path_str(a1) },
            };
            ctx.finish("cossin", inputs, cossin(&ctx, a0, a1))
        }
        Command::Classify { function } => classify(&ctx, function),
        Command::Verify { suite } => {
            #[derive(Serialize)]
            struct SuiteIn {
                suite: SuiteArg,
            }
            let inputs = WithExtra {
                common: Common { order: ctx.order, tol: ctx.tol, r#fn: None },
                extra: SuiteIn { suite: *suite },
            };
            ctx.finish("verify", inputs, Ok(run_verify(*suite)))
        }
    };
    ExitCode::from(code)
}
