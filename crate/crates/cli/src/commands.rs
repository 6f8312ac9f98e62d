use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use froblab::determinantal::{
    minors_ideal, msv_fpt, verify_main, witness_check, MinorIdealSpec, PointOutcome,
};
use froblab::frobenius::eth_root;
use froblab::ideals::{parse_ideal_file, render_ideal_file, Ideal};
use froblab::poly::Polynomial;
use froblab::rational::ExactRational;
use froblab::selfcheck::root_property_suite;
use froblab::testideal::{
    fpt_bracket, nu, scan_grid, test_ideal, StabilizationPolicy, ThresholdEstimate,
};
use serde::Serialize;
use thiserror::Error;

use crate::args::{Cli, Command, PolicyArgs};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] froblab::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(froblab::Error::BudgetExceeded(_)) => 3,
            CliError::Lib(froblab::Error::ChainViolation(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Rendered command output and whether its verification passed.
pub struct Finished {
    pub output: String,
    pub passed: bool,
}

trait Report: Serialize {
    fn text(&self) -> String;

    fn passed(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    report: &'a R,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_us: Option<u64>,
}

fn read_ideal(path: &Path) -> Result<Ideal> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(parse_ideal_file(&text)?)
}

fn policy(args: &PolicyArgs) -> Result<StabilizationPolicy> {
    let mut policy = StabilizationPolicy::new(args.emax, args.confirm)?;
    policy.require_certificate = args.certify;
    Ok(policy)
}

pub fn run(cli: &Cli) -> Result<Finished> {
    let start = Instant::now();
    let default_format = match cli.command {
        Command::EthRoot { .. } | Command::Minors { .. } | Command::MsvFpt { .. } => Format::Text,
        _ => Format::Json,
    };
    let format = if cli.json {
        Format::Json
    } else if cli.text {
        Format::Text
    } else {
        default_format
    };
    let ctx = Context { format, start: cli.timings.then_some(start) };
    match &cli.command {
        Command::EthRoot { e, ideal } => {
            let root = eth_root(&read_ideal(ideal)?, *e)?;
            ctx.finish("eth-root", &IdealReport::new(&root))
        }
        Command::Nu { a, b, e } => {
            let (a, b) = (read_ideal(a)?, read_ideal(b)?);
            let value = nu(&a, &b, *e)?;
            let p = u64::from(a.ring().characteristic());
            ctx.finish("nu", &NuReport { p, e: *e, q: p.pow(*e), nu: value })
        }
        Command::Fpt { ideal, emax } => {
            let est = fpt_bracket(&read_ideal(ideal)?, *emax)?;
            ctx.finish("fpt", &BracketReport::from(&est))
        }
        Command::TestIdeal { ideal, lambda, policy: args } => {
            let t = test_ideal(&read_ideal(ideal)?, lambda, &policy(args)?)?;
            let report = TestIdealReport {
                lambda: lambda.to_string(),
                e: t.e,
                status: t.status.as_str(),
                ideal: render_ideal_file(&t.ideal),
            };
            ctx.finish("test-ideal", &report)
        }
        Command::Jumps { ideal, lo, hi, denom, policy: args } => {
            let scan = scan_grid(&read_ideal(ideal)?, lo, hi, *denom, &policy(args)?)?;
            let report = JumpsReport {
                lo: lo.to_string(),
                hi: hi.to_string(),
                denom: *denom,
                jumps: scan.jumps.iter().map(ToString::to_string).collect(),
                points: scan
                    .points
                    .iter()
                    .map(|t| GridPoint {
                        lambda: t.lambda.to_string(),
                        e: t.e,
                        status: t.status.as_str(),
                        generators: t.ideal.generators().iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
            };
            ctx.finish("jumps", &report)
        }
        Command::Minors { shape, t, p, out } => {
            let spec = MinorIdealSpec::new(shape.m, shape.n, *t, *p)?;
            let ideal = minors_ideal(&spec)?;
            let file = render_ideal_file(&ideal);
            if let Some(path) = out {
                fs::write(path, &file).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            let report = MinorsReport {
                m: spec.matrix.m(),
                n: spec.matrix.n(),
                t: *t,
                p: *p,
                generators: ideal.generators().len(),
                ideal: file,
                written_to: out.as_ref().map(|p| p.display().to_string()),
            };
            ctx.finish("minors", &report)
        }
        Command::MsvFpt { shape, t } => {
            let fpt = msv_fpt(shape.m, shape.n, *t)?;
            ctx.finish("msv-fpt", &MsvReport { m: shape.m, n: shape.n, t: *t, fpt: fpt.to_string() })
        }
        Command::VerifyMain { shape, p, denom, lmax, policy: args, nu_e } => {
            let spec = MinorIdealSpec::maximal(shape.m, shape.n, *p)?;
            let fpt = msv_fpt(shape.m, shape.n, spec.t)?;
            let top = lmax.clone().unwrap_or_else(|| fpt.add(&ExactRational::integer(2)));
            if *denom == 0 {
                return Err(CliError::Usage("--denom must be positive".into()));
            }
            let grid = ExactRational::grid(&ExactRational::zero(), &top, *denom);
            let report = verify_main(&spec, &grid, &policy(args)?, *nu_e)?;
            ctx.finish("verify-main", &MainReportJson::from(&report))
        }
        Command::Witness { shape, p, e } => {
            let spec = MinorIdealSpec::maximal(shape.m, shape.n, *p)?;
            let report = witness_check(&spec, *e)?;
            let ring = spec.matrix.ring();
            let json = WitnessJson {
                m: report.m,
                n: report.n,
                p: report.p,
                e: report.e,
                q: report.data.q,
                deltas: report.data.deltas.iter().map(ToString::to_string).collect(),
                mus: report
                    .data
                    .mus
                    .iter()
                    .map(|mu| Polynomial::monomial(ring, mu.clone(), 1).to_string())
                    .collect(),
                eta: Polynomial::monomial(ring, report.data.eta.clone(), 1).to_string(),
                delta_terms: report.data.big_delta.len(),
                g_eta: report.g_eta,
                checks: WitnessChecks {
                    initial_forms_match: report.initial_forms_match,
                    eta_is_initial: report.eta_is_initial,
                    eta_in_basis: report.eta_in_basis,
                    g_eta_constant_nonzero: report.g_eta_constant_nonzero,
                },
                failures: report.failures.clone(),
                passed: report.passed(),
            };
            ctx.finish("witness", &json)
        }
        Command::Selfcheck { cases, primes, exponents } => {
            if primes.is_empty() || exponents.is_empty() {
                return Err(CliError::Usage("--primes and --exponents must be non-empty".into()));
            }
            let report = root_property_suite(cli.seed, *cases, primes, exponents)?;
            let json = SelfcheckJson {
                seed: report.seed,
                cases: report.cases,
                checks: report.checks,
                failures: report
                    .failures
                    .iter()
                    .map(|f| SelfcheckFailure {
                        case: f.case,
                        p: f.p,
                        e: f.e,
                        property: f.property,
                        ideal: f.ideal.clone(),
                    })
                    .collect(),
                passed: report.passed(),
            };
            ctx.finish("selfcheck", &json)
        }
    }
}

struct Context {
    format: Format,
    start: Option<Instant>,
}

impl Context {
    fn finish<R: Report>(&self, command: &str, report: &R) -> Result<Finished> {
        let elapsed_us = self.start.map(|s| s.elapsed().as_micros() as u64);
        let output = match self.format {
            Format::Json => {
                let envelope = Envelope { schema: SCHEMA, command, report, elapsed_us };
                let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = report.text();
                if let Some(us) = elapsed_us {
                    let _ = writeln!(s, "# elapsed: {us} µs");
                }
                s
            }
        };
        Ok(Finished { output, passed: report.passed() })
    }
}

#[derive(Serialize)]
struct IdealReport {
    generators: Vec<String>,
    ideal: String,
}

impl IdealReport {
    fn new(ideal: &Ideal) -> Self {
        IdealReport {
            generators: ideal.generators().iter().map(ToString::to_string).collect(),
            ideal: render_ideal_file(ideal),
        }
    }
}

impl Report for IdealReport {
    fn text(&self) -> String {
        self.ideal.clone()
    }
}

#[derive(Serialize)]
struct NuReport {
    p: u64,
    e: u32,
    q: u64,
    nu: u64,
}

impl Report for NuReport {
    fn text(&self) -> String {
        format!("nu({}) = {}\n", self.q, self.nu)
    }
}

#[derive(Serialize)]
struct NuValue {
    q: u64,
    nu: u64,
}

#[derive(Serialize)]
struct BracketReport {
    lower: String,
    upper: String,
    emax: u32,
    nu_values: Vec<NuValue>,
}

impl From<&ThresholdEstimate> for BracketReport {
    fn from(est: &ThresholdEstimate) -> Self {
        BracketReport {
            lower: est.lower.to_string(),
            upper: est.upper.to_string(),
            emax: est.e,
            nu_values: est.nu_values.iter().map(|&(q, nu)| NuValue { q, nu }).collect(),
        }
    }
}

impl Report for BracketReport {
    fn text(&self) -> String {
        let mut s = format!("fpt in [{}, {}]\n", self.lower, self.upper);
        for v in &self.nu_values {
            let _ = writeln!(s, "nu({}) = {}", v.q, v.nu);
        }
        s
    }
}

#[derive(Serialize)]
struct TestIdealReport {
    lambda: String,
    e: u32,
    status: &'static str,
    ideal: String,
}

impl Report for TestIdealReport {
    fn text(&self) -> String {
        format!("# tau({}) at e = {} ({})\n{}", self.lambda, self.e, self.status, self.ideal)
    }
}

#[derive(Serialize)]
struct GridPoint {
    lambda: String,
    e: u32,
    status: &'static str,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct JumpsReport {
    lo: String,
    hi: String,
    denom: u64,
    jumps: Vec<String>,
    points: Vec<GridPoint>,
}

impl Report for JumpsReport {
    fn text(&self) -> String {
        let mut s = format!("jumps: {}\n", self.jumps.join(", "));
        for pt in &self.points {
            let _ = writeln!(s, "tau({}) = ({}) [{}]", pt.lambda, pt.generators.join(", "), pt.status);
        }
        s
    }
}

#[derive(Serialize)]
struct MinorsReport {
    m: usize,
    n: usize,
    t: usize,
    p: u64,
    generators: usize,
    ideal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    written_to: Option<String>,
}

impl Report for MinorsReport {
    fn text(&self) -> String {
        match &self.written_to {
            Some(path) => format!("wrote {} generators to {path}\n", self.generators),
            None => self.ideal.clone(),
        }
    }
}

#[derive(Serialize)]
struct MsvReport {
    m: usize,
    n: usize,
    t: usize,
    fpt: String,
}

impl Report for MsvReport {
    fn text(&self) -> String {
        format!("{}\n", self.fpt)
    }
}

#[derive(Serialize)]
struct MainPointJson {
    lambda: String,
    expected_exponent: u64,
    e: u32,
    status: Option<&'static str>,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    skip_reason: Option<String>,
}

#[derive(Serialize)]
struct MainReportJson {
    m: usize,
    n: usize,
    p: u64,
    fpt: String,
    points: Vec<MainPointJson>,
    jumps: Vec<String>,
    expected_jumps: Vec<String>,
    jumps_match: bool,
    chain_error: Option<String>,
    bracket: Option<BracketReport>,
    passed: bool,
}

impl From<&froblab::determinantal::MainReport> for MainReportJson {
    fn from(r: &froblab::determinantal::MainReport) -> Self {
        let strings = |v: &[ExactRational]| v.iter().map(ToString::to_string).collect();
        MainReportJson {
            m: r.m,
            n: r.n,
            p: r.p,
            fpt: r.fpt.to_string(),
            points: r
                .points
                .iter()
                .map(|pt| {
                    let (outcome, skip_reason) = match &pt.outcome {
                        PointOutcome::Match => ("match", None),
                        PointOutcome::Mismatch => ("mismatch", None),
                        PointOutcome::Skipped(why) => ("skipped", Some(why.clone())),
                    };
                    MainPointJson {
                        lambda: pt.lambda.to_string(),
                        expected_exponent: pt.expected_exponent,
                        e: pt.e,
                        status: pt.status.map(|s| s.as_str()),
                        outcome,
                        skip_reason,
                    }
                })
                .collect(),
            jumps: strings(&r.jumps),
            expected_jumps: strings(&r.expected_jumps),
            jumps_match: r.jumps_match(),
            chain_error: r.chain_error.clone(),
            bracket: r.bracket.as_ref().map(BracketReport::from),
            passed: r.passed(),
        }
    }
}

impl Report for MainReportJson {
    fn text(&self) -> String {
        let mut s = format!("I_{m}({m}x{n}) over F_{p}, fpt = {}\n", self.fpt, m = self.m, n = self.n, p = self.p);
        for pt in &self.points {
            let _ = writeln!(
                s,
                "lambda = {}: {} (closed form I^{}, e = {}, {})",
                pt.lambda,
                pt.outcome,
                pt.expected_exponent,
                pt.e,
                pt.status.unwrap_or("-")
            );
        }
        let _ = writeln!(s, "jumps: {} (expected {})", self.jumps.join(", "), self.expected_jumps.join(", "));
        if let Some(err) = &self.chain_error {
            let _ = writeln!(s, "chain error: {err}");
        }
        if let Some(b) = &self.bracket {
            let _ = writeln!(s, "fpt bracket: [{}, {}]", b.lower, b.upper);
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Serialize)]
struct WitnessChecks {
    initial_forms_match: bool,
    eta_is_initial: bool,
    eta_in_basis: bool,
    g_eta_constant_nonzero: bool,
}

#[derive(Serialize)]
struct WitnessJson {
    m: usize,
    n: usize,
    p: u64,
    e: u32,
    q: u64,
    deltas: Vec<String>,
    mus: Vec<String>,
    eta: String,
    delta_terms: usize,
    g_eta: Option<u32>,
    checks: WitnessChecks,
    failures: Vec<String>,
    passed: bool,
}

impl Report for WitnessJson {
    fn text(&self) -> String {
        let c = &self.checks;
        let mut s = format!("witness for {}x{} over F_{}, q = {}\n", self.m, self.n, self.p, self.q);
        let _ = writeln!(s, "eta = {}", self.eta);
        let _ = writeln!(s, "in(delta_i) = mu_i: {}", c.initial_forms_match);
        let _ = writeln!(s, "in(Delta) = eta: {}", c.eta_is_initial);
        let _ = writeln!(s, "eta in B_e: {}", c.eta_in_basis);
        let _ = writeln!(s, "g_eta nonzero constant: {}", c.g_eta_constant_nonzero);
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Serialize)]
struct SelfcheckFailure {
    case: usize,
    p: u64,
    e: u32,
    property: &'static str,
    ideal: String,
}

#[derive(Serialize)]
struct SelfcheckJson {
    seed: u64,
    cases: usize,
    checks: usize,
    failures: Vec<SelfcheckFailure>,
    passed: bool,
}

impl Report for SelfcheckJson {
    fn text(&self) -> String {
        let mut s = format!(
            "seed {}: {} cases, {} checks, {} failures\n",
            self.seed,
            self.cases,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            let _ = writeln!(s, "case {} (p = {}, e = {}): {}", f.case, f.p, f.e, f.property);
        }
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}
