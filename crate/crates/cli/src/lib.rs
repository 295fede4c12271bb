//! Command-line front end: argument model, suite runners and report
//! rendering. `main.rs` only maps [`run`] onto stdout, files and exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use lg_mirror::clifford::identities::{check_din_cl, check_i_ibar, check_sym_to_wedge, check_tj};
use lg_mirror::clifford::{build_d, build_n, pi_map, wedge_j, wedge_j_plus};
use lg_mirror::jacobi::{compare_spectrum, conjecture_probe, expected_spectrum, find_critical_points, Chart, CriticalPoint, ProbeReport, SpectrumReport};
use lg_mirror::partitions::StrictPartition;
use lg_mirror::qchevalley::{CohClass, SchubertBasis};
use lg_mirror::sampling::Sampler;
use lg_mirror::scalars::{QSqrt2, ScalarRing};
use lg_mirror::superpotential::{
    plucker_spin_all, plucker_subword_all, render_latex, render_text, symbolic_w, verify_em_formula, verify_fj, verify_fm,
    verify_sym_to_minor, verify_theorem_w, Comparison, SubwordTable, SuperpotentialError, WTermSymbolic,
};

pub const SCHEMA: &str = "lg-mirror/1";

/// Draws rejected before a trial gives up.
const MAX_REDRAWS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "lg-mirror", version, about = "Plücker-coordinate superpotential of LG(m): printing, exact verification, critical points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Rank: LG(m) inside a 2m-dimensional symplectic space.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=10))]
    pub m: u32,
    /// Quantum parameter: an exact rational (`3/4`), `a+b*sqrt2`, or a complex number (`1+2i`).
    #[arg(long, global = true, conflicts_with = "t")]
    pub q: Option<String>,
    /// Sets q = e^t (numeric commands only).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Random points (verify) or Newton starts (critical).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Relative tolerance for the critical-value spectrum and the relation probes.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the superpotential W_t in Plücker coordinates.
    PrintW,
    /// Run an exact identity suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Multi-start search for critical points and the spectrum comparison.
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Minors,
    TheoremW,
    PiMap,
    Subword,
    Chevalley,
    Em,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Minors => "minors",
            Suite::TheoremW => "theorem-w",
            Suite::PiMap => "pi-map",
            Suite::Subword => "subword",
            Suite::Chevalley => "chevalley",
            Suite::Em => "em",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QValue {
    Exact(QSqrt2),
    Complex(Complex64),
}

impl QValue {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if let Ok(x) = s.parse::<QSqrt2>() {
            return Ok(QValue::Exact(x));
        }
        Complex64::from_str(s.trim())
            .map(QValue::Complex)
            .map_err(|_| CliError::Usage(format!("cannot parse q = {s:?}")))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            QValue::Exact(x) => Complex64::new(x.to_f64(), 0.0),
            QValue::Complex(z) => *z,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            QValue::Exact(x) => x.is_zero(),
            QValue::Complex(z) => *z == Complex64::new(0.0, 0.0),
        }
    }
}

/// Validated settings shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: usize,
    pub q: Option<QValue>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub format: Format,
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn from_options(o: &Options) -> Result<Self, CliError> {
        let q = match (&o.q, o.t) {
            (Some(s), _) => Some(QValue::parse(s)?),
            (None, Some(t)) if t.is_finite() => Some(QValue::Complex(Complex64::new(t.exp(), 0.0))),
            (None, Some(t)) => return Err(CliError::Usage(format!("t = {t} is not finite"))),
            (None, None) => None,
        };
        if q.as_ref().is_some_and(QValue::is_zero) {
            return Err(CliError::Usage("q must be nonzero".into()));
        }
        if let Some(tol) = o.tolerance {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::Usage(format!("tolerance {tol} must be positive")));
            }
        }
        Ok(RunConfig {
            m: o.m as usize,
            q,
            seed: o.seed,
            trials: o.trials.map(|t| t as usize),
            format: o.format,
            tolerance: o.tolerance,
        })
    }

    fn exact_q(&self) -> Result<Option<QSqrt2>, CliError> {
        match &self.q {
            None => Ok(None),
            Some(QValue::Exact(x)) => Ok(Some(x.clone())),
            Some(QValue::Complex(_)) => Err(CliError::Usage("exact suites need q in Q(sqrt2); --t and complex q are numeric only".into())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

/// What a command produced: the rendered report, whether it passed, and
/// diagnostics for stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: String,
    pub ok: bool,
    pub messages: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_options(&cli.options)?;
    match cli.command {
        Command::PrintW => print_w(&cfg),
        Command::Verify { suite } => {
            if cfg.format == Format::Latex {
                return Err(CliError::Usage("--format latex applies to print-w only".into()));
            }
            let report = verify(&cfg, suite)?;
            let messages = report.counterexample.iter().map(|c| format!("counterexample: {c}")).collect();
            Ok(Outcome { ok: report.failed == 0, report: render(&report, cfg.format, VerifyReport::text)?, messages })
        }
        Command::Critical => {
            if cfg.format == Format::Latex {
                return Err(CliError::Usage("--format latex applies to print-w only".into()));
            }
            let report = critical(&cfg)?;
            let mut messages = Vec::new();
            if !report.spectrum_ok {
                messages.push(format!(
                    "critical values do not match (m+1) x spectrum of sigma_1: {} points, max relative error {:e}",
                    report.points.len(),
                    report.spectrum_match.max_rel_err
                ));
            }
            if report.probe_warning {
                messages.push("warning: quantum relation probe exceeds tolerance".into());
            }
            Ok(Outcome { ok: report.spectrum_ok, report: render(&report, cfg.format, CriticalReport::text)?, messages })
        }
    }
}

fn render<R: Serialize>(r: &R, format: Format, text: impl Fn(&R) -> String) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(r).map(|s| s + "\n").map_err(|e| CliError::Failed(e.to_string())),
        _ => Ok(text(r)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PrintWReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub m: usize,
    pub text: String,
    pub latex: String,
    pub terms: Vec<WTermSymbolic>,
}

pub fn print_w_report(m: usize) -> Result<PrintWReport, CliError> {
    let terms = symbolic_w(m).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(PrintWReport { schema: SCHEMA, command: "print-w", m, text: render_text(&terms), latex: render_latex(&terms), terms })
}

fn print_w(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = print_w_report(cfg.m)?;
    let report = match cfg.format {
        Format::Text => format!("{}\n", r.text),
        Format::Latex => format!("{}\n", r.latex),
        Format::Json => render(&r, Format::Json, |_| String::new())?,
    };
    Ok(Outcome { report, ok: true, messages: Vec::new() })
}

/// One checked instance of an identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub holds: bool,
}

impl Record {
    fn new(identity: &str, holds: bool) -> Self {
        Record { identity: identity.into(), j: None, lambda: None, trial: None, lhs: None, rhs: None, holds }
    }

    fn cmp(identity: &str, c: &Comparison) -> Self {
        Record { lhs: Some(c.lhs.to_canonical_string()), rhs: Some(c.rhs.to_canonical_string()), ..Record::new(identity, c.holds()) }
    }

    fn sides(identity: &str, lhs: String, rhs: String) -> Self {
        let holds = lhs == rhs;
        Record { lhs: Some(lhs), rhs: Some(rhs), ..Record::new(identity, holds) }
    }

    fn j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    fn lambda(mut self, l: &StrictPartition) -> Self {
        self.lambda = Some(l.to_string());
        self
    }
}

/// A sample point at which some identity failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub identities: Vec<String>,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m={}", self.m)?;
        if let Some(b) = &self.b {
            write!(f, " b=[{}]", b.join(", "))?;
        }
        if let Some(q) = &self.q {
            write!(f, " q={q}")?;
        }
        write!(f, " fails {}", self.identities.join(", "))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Point {
    pub trial: usize,
    pub b: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub suite: Suite,
    pub m: usize,
    pub seed: u64,
    pub trials: usize,
    pub redraws: usize,
    pub passed: usize,
    pub failed: usize,
    pub points: Vec<Point>,
    pub records: Vec<Record>,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verify {} m={} seed={} trials={}", self.suite.name(), self.m, self.seed, self.trials);
        let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for r in &self.records {
            let e = tally.entry(&r.identity).or_default();
            e.0 += r.holds as usize;
            e.1 += 1;
        }
        for (id, (ok, n)) in tally {
            let _ = writeln!(s, "  {id:<18} {ok}/{n}");
        }
        for r in self.records.iter().filter(|r| !r.holds) {
            let _ = writeln!(
                s,
                "  FAIL {} j={:?} lambda={:?} trial={:?}: {} != {}",
                r.identity,
                r.j,
                r.lambda,
                r.trial,
                r.lhs.as_deref().unwrap_or("-"),
                r.rhs.as_deref().unwrap_or("-")
            );
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "  counterexample: {c}");
        }
        let _ = writeln!(s, "{} ({} passed, {} failed)", if self.failed == 0 { "PASS" } else { "FAIL" }, self.passed, self.failed);
        s
    }
}

/// Height of an exact point: total bit length of its numerators and
/// denominators.
fn height(b: &[QSqrt2]) -> u64 {
    b.iter().flat_map(|x| [x.a().numer(), x.a().denom(), x.b().numer(), x.b().denom()]).map(|n| n.bits()).sum()
}

type Trial = (Vec<QSqrt2>, Option<QSqrt2>, Vec<Record>);

/// Draws points until `check` succeeds (rejections count as redraws).
fn sample_trials(
    cfg: &RunConfig,
    trials: usize,
    q_source: Option<Option<QSqrt2>>,
    mut check: impl FnMut(&[QSqrt2], Option<&QSqrt2>) -> Result<Vec<Record>, SuperpotentialError>,
) -> Result<(Vec<Trial>, usize), CliError> {
    let mut sampler = Sampler::new(cfg.seed);
    let mut out = Vec::with_capacity(trials);
    let mut redraws = 0;
    for _ in 0..trials {
        let mut attempts = 0;
        loop {
            let b = sampler.point(cfg.m);
            let q = match &q_source {
                None => None,
                Some(Some(q)) => Some(q.clone()),
                Some(None) => Some(sampler.scalar()),
            };
            match check(&b, q.as_ref()) {
                Ok(records) => {
                    out.push((b, q, records));
                    break;
                }
                Err(_) => {
                    redraws += 1;
                    attempts += 1;
                    if attempts > MAX_REDRAWS {
                        return Err(CliError::Failed(format!("no admissible point after {MAX_REDRAWS} draws")));
                    }
                }
            }
        }
    }
    Ok((out, redraws))
}

fn sampled_report(cfg: &RunConfig, suite: Suite, trials: Vec<Trial>, redraws: usize) -> VerifyReport {
    let m = cfg.m;
    let mut points = Vec::new();
    let mut records = Vec::new();
    let mut worst: Option<(u64, Counterexample)> = None;
    for (k, (b, q, recs)) in trials.into_iter().enumerate() {
        let bs: Vec<String> = b.iter().map(QSqrt2::to_canonical_string).collect();
        let qs = q.as_ref().map(QSqrt2::to_canonical_string);
        let failing: Vec<String> = recs.iter().filter(|r| !r.holds).map(|r| r.identity.clone()).collect();
        if !failing.is_empty() {
            let h = height(&b);
            if worst.as_ref().is_none_or(|(w, _)| h < *w) {
                worst = Some((h, Counterexample { m, b: Some(bs.clone()), q: qs.clone(), identities: failing }));
            }
        }
        records.extend(recs.into_iter().map(|r| Record { trial: Some(k), ..r }));
        points.push(Point { trial: k, b: bs, q: qs });
    }
    finish(cfg, suite, points.len(), redraws, points, records, worst.map(|w| w.1))
}

fn finish(
    cfg: &RunConfig,
    suite: Suite,
    trials: usize,
    redraws: usize,
    points: Vec<Point>,
    records: Vec<Record>,
    counterexample: Option<Counterexample>,
) -> VerifyReport {
    let passed = records.iter().filter(|r| r.holds).count();
    VerifyReport {
        schema: SCHEMA,
        command: "verify",
        suite,
        m: cfg.m,
        seed: cfg.seed,
        trials,
        redraws,
        passed,
        failed: records.len() - passed,
        points,
        records,
        counterexample,
    }
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<VerifyReport, CliError> {
    let m = cfg.m;
    let trials = cfg.trials.unwrap_or(25);
    match suite {
        Suite::Minors => {
            let (t, r) = sample_trials(cfg, trials, None, |b, _| {
                let mut recs = Vec::new();
                for j in 2..=m {
                    let (den, num) = verify_sym_to_minor(j, b, m)?;
                    recs.push(Record::cmp("sym-to-minor/den", &den).j(j));
                    recs.push(Record::cmp("sym-to-minor/num", &num).j(j));
                }
                for j in 1..m {
                    let (ratio, vanish) = verify_fj(j, b, m)?;
                    recs.push(Record::cmp("fj/ratio", &ratio).j(j));
                    recs.push(Record::cmp("fj/vanishing", &vanish).j(j));
                }
                recs.push(Record::cmp("fm", &verify_fm(b, m)?).j(m));
                Ok(recs)
            })?;
            Ok(sampled_report(cfg, suite, t, r))
        }
        Suite::TheoremW => {
            let table = SubwordTable::new(m);
            let (t, r) = sample_trials(cfg, trials, Some(cfg.exact_q()?), |b, q| {
                Ok(vec![Record::cmp("theorem-w", &verify_theorem_w(q.expect("q is fixed or drawn"), b, &table)?)])
            })?;
            Ok(sampled_report(cfg, suite, t, r))
        }
        Suite::Subword => {
            let table = SubwordTable::new(m);
            let (t, r) = sample_trials(cfg, trials, None, |b, _| {
                let spin = plucker_spin_all(b, m)?;
                let sub = plucker_subword_all(b, &table)?;
                Ok(StrictPartition::all(m)
                    .iter()
                    .map(|l| Record::sides("subword-sum", spin.get(l).to_canonical_string(), sub.get(l).to_canonical_string()).lambda(l))
                    .collect())
            })?;
            Ok(sampled_report(cfg, suite, t, r))
        }
        Suite::Em => {
            let table = SubwordTable::new(m);
            let (t, r) = sample_trials(cfg, trials, None, |b, _| Ok(vec![Record::cmp("em", &verify_em_formula(b, &table)?)]))?;
            Ok(sampled_report(cfg, suite, t, r))
        }
        Suite::PiMap => Ok(exact_report(cfg, suite, pi_map_records(m)?)),
        Suite::Chevalley => Ok(exact_report(cfg, suite, chevalley_records(m))),
    }
}

fn exact_report(cfg: &RunConfig, suite: Suite, records: Vec<Record>) -> VerifyReport {
    let failing: Vec<String> = records.iter().filter(|r| !r.holds).map(|r| r.identity.clone()).collect();
    let ce = (!failing.is_empty()).then_some(Counterexample { m: cfg.m, b: None, q: None, identities: failing });
    finish(cfg, suite, 0, 0, Vec::new(), records, ce)
}

fn pi_map_records(m: usize) -> Result<Vec<Record>, CliError> {
    let err = |e: lg_mirror::clifford::CliffordError| CliError::Failed(e.to_string());
    let mut recs = Vec::new();
    for j in 2..=m {
        recs.push(Record::sides("denom-proj/D", pi_map(&build_d(j, m).map_err(err)?).to_string(), wedge_j(j, m).to_string()).j(j));
        recs.push(Record::sides("denom-proj/N", pi_map(&build_n(j, m).map_err(err)?).to_string(), wedge_j_plus(j, m).to_string()).j(j));
        recs.push(Record::new("sym-to-wedge", check_sym_to_wedge(j, m).map_err(err)?).j(j));
        if 2 * j >= m + 2 {
            recs.push(Record::new("din-cl", check_din_cl(j, m).map_err(err)?).j(j));
            recs.push(Record::new("tj", check_tj(j, m).map_err(err)?).j(j));
        }
    }
    for i_set in 0..1u32 << m {
        let set = lg_mirror::partitions::elements(i_set).iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        recs.push(Record { lambda: Some(format!("I={{{set}}}")), ..Record::new("i-ibar", check_i_ibar(i_set, m)) });
    }
    Ok(recs)
}

fn chevalley_records(m: usize) -> Vec<Record> {
    let basis = SchubertBasis::new(m);
    let mut recs = Vec::new();
    let top = StrictPartition::new(vec![m], m).expect("(m) fits the box");
    let hook = StrictPartition::new(vec![m, 1], m).expect("(m,1) fits the box");
    let lhs = basis.chevalley_multiply(&top).sub(&CohClass::schubert(hook));
    let mut rhs = CohClass::default();
    rhs.add_term(StrictPartition::empty(m), 1, 1);
    recs.push(Record::sides("relation-l1", lhs.to_string(), rhs.to_string()));
    for l in StrictPartition::all(m) {
        let prod = basis.chevalley_multiply(&l);
        let ok = prod.terms.iter().all(|((d, mu), c)| *c > 0 && mu.size() + (m + 1) * *d as usize == l.size() + 1);
        recs.push(Record { lhs: Some(prod.to_string()), ..Record::new("grading", ok).lambda(&l) });
    }
    recs
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub m: usize,
    pub q: Complex64,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub discarded: usize,
    pub points: Vec<CriticalPoint>,
    pub spectrum_match: SpectrumReport,
    pub spectrum_ok: bool,
    /// Relation probes per level `l`.
    pub conjecture: Vec<ProbeReport>,
    /// The relation probes are evidence only; exceeding the tolerance warns.
    pub probe_warning: bool,
}

impl CriticalReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "critical m={} q={} seed={} trials={}", self.m, self.q, self.seed, self.trials);
        let _ = writeln!(s, "  points: {} (expected {}), discarded starts: {}", self.points.len(), self.spectrum_match.expected.len(), self.discarded);
        for p in &self.points {
            let _ = writeln!(s, "  W = {:+.10} {:+.10}i  |grad| = {:.1e}", p.value.re, p.value.im, p.grad_norm);
        }
        let _ = writeln!(s, "  spectrum max relative error: {:.3e}", self.spectrum_match.max_rel_err);
        for p in &self.conjecture {
            let _ = writeln!(s, "  relation l={}: max deviation {:.3e}", p.l, p.max_dev);
        }
        let _ = writeln!(s, "{}", if self.spectrum_ok { "PASS" } else { "FAIL" });
        s
    }
}

pub fn critical(cfg: &RunConfig) -> Result<CriticalReport, CliError> {
    let m = cfg.m;
    let q = cfg.q.as_ref().map_or(Complex64::new(1.0, 0.0), QValue::to_complex);
    let tol = cfg.tolerance.unwrap_or(1e-6);
    let trials = cfg.trials.unwrap_or(200);
    let search = find_critical_points(m, q, trials, cfg.seed);
    let values: Vec<Complex64> = search.points.iter().map(|p| p.value).collect();
    let spectrum = compare_spectrum(&values, &expected_spectrum(m, q));
    let chart = Chart::new(m);
    let probes: Vec<ProbeReport> = (1..m).map(|l| conjecture_probe(&search, &chart, l)).collect();
    let probe_warning = probes.iter().any(|p| p.max_dev > tol * q.norm().powi(p.l as i32).max(1.0));
    Ok(CriticalReport {
        schema: SCHEMA,
        command: "critical",
        m,
        q,
        seed: cfg.seed,
        trials,
        tolerance: tol,
        discarded: search.discarded,
        spectrum_ok: spectrum.matches(tol),
        points: search.points,
        spectrum_match: spectrum,
        conjecture: probes,
        probe_warning,
    })
}
