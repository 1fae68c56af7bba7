//! Configuration, suite dispatch and JSON reports for the `awcheck` binary.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use askey_wilson::compass::{build_compass, export_dot};
use askey_wilson::relcheck::{self, master, RelationReport};
use askey_wilson::spectra::{check_all_annihilating, check_annihilating, predicted_spectrum};
use askey_wilson::{GeneratorLabel, GeneratorRegistry, IntervalLabel, Rational, RepParams};

pub const REPORT_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_Q: &str = "5/3";
pub const DEFAULT_K: [u32; 4] = [1, 2, 1, 3];
pub const DEFAULT_NMAX: usize = 6;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    GatingFailure = 1,
    InvalidConfig = 2,
    Io = 3,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    /// A structural check failed outright (for example the compass cycle).
    Check(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Config(_) => Exit::InvalidConfig,
            CliError::Io(_) => Exit::Io,
            CliError::Check(_) => Exit::GatingFailure,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<askey_wilson::Error> for CliError {
    fn from(e: askey_wilson::Error) -> Self {
        use askey_wilson::Error as E;
        match e {
            E::Parse(_)
            | E::InvalidConfig(_)
            | E::OutOfRange(_)
            | E::InvalidInterval { .. }
            | E::UnknownLabel(_)
            | E::UnknownRow(_)
            | E::DivisionByZero => CliError::Config(e.to_string()),
            other => CliError::Check(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Selectable suite names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    Defining,
    Prop1,
    Prop2,
    Aw3,
    Aw3Quadratic,
    Master,
    Spectra,
    Independence,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Defining,
        SuiteName::Prop1,
        SuiteName::Prop2,
        SuiteName::Aw3,
        SuiteName::Aw3Quadratic,
        SuiteName::Master,
        SuiteName::Spectra,
        SuiteName::Independence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Defining => "defining",
            SuiteName::Prop1 => "prop1",
            SuiteName::Prop2 => "prop2",
            SuiteName::Aw3 => "aw3",
            SuiteName::Aw3Quadratic => "aw3-quadratic",
            SuiteName::Master => "master",
            SuiteName::Spectra => "spectra",
            SuiteName::Independence => "independence",
        }
    }

    /// Smallest and largest leg count the suite runs on.
    fn legs_range(self) -> (usize, usize) {
        match self {
            SuiteName::Defining | SuiteName::Prop1 | SuiteName::Spectra => (2, 4),
            SuiteName::Aw3 | SuiteName::Aw3Quadratic => (3, 4),
            SuiteName::Prop2 | SuiteName::Master | SuiteName::Independence => (4, 4),
        }
    }

    fn supports(self, legs: usize) -> bool {
        let (lo, hi) = self.legs_range();
        (lo..=hi).contains(&legs)
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown suite {s:?}")))
    }
}

/// Validated parameters plus the suites to run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: RepParams,
    pub suites: Vec<SuiteName>,
    /// Suites requested through `all` that do not apply to this leg count.
    pub skipped: Vec<SuiteName>,
    pub report_path: Option<PathBuf>,
}

/// `--q`, `--k`, `--legs`, `--nmax` as given on the command line.
#[derive(Clone, Debug, Default)]
pub struct RawParams {
    pub q: Option<String>,
    pub k: Option<String>,
    pub legs: Option<usize>,
    pub nmax: Option<usize>,
}

impl RawParams {
    /// Fills defaults: `k` is the leading `legs` entries of `(1,2,1,3)`, and
    /// `legs` follows the length of an explicit `k`.
    pub fn resolve(&self) -> CliResult<RepParams> {
        let q: Rational = self
            .q
            .as_deref()
            .unwrap_or(DEFAULT_Q)
            .parse()
            .map_err(|e: askey_wilson::Error| CliError::Config(format!("--q: {e}")))?;
        let k: Option<Vec<u32>> = self
            .k
            .as_deref()
            .map(|s| {
                s.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| CliError::Config(format!("--k: bad entry {c:?}")))
                    })
                    .collect()
            })
            .transpose()?;
        let legs = self.legs.or(k.as_ref().map(Vec::len)).unwrap_or(4);
        if !(2..=4).contains(&legs) {
            return Err(CliError::Config(format!(
                "--legs must be 2, 3 or 4, got {legs}"
            )));
        }
        let k = match k {
            Some(k) if k.len() != legs => {
                return Err(CliError::Config(format!(
                    "--k has {} entries but --legs is {legs}",
                    k.len()
                )))
            }
            Some(k) => k,
            None => DEFAULT_K[..legs].to_vec(),
        };
        Ok(RepParams::new(q, k, self.nmax.unwrap_or(DEFAULT_NMAX))?)
    }
}

impl RunConfig {
    /// `suites` is a comma-separated list of names or `all`.
    pub fn new(raw: &RawParams, suites: &str, report_path: Option<PathBuf>) -> CliResult<Self> {
        let params = raw.resolve()?;
        let legs = params.legs();
        let mut chosen = Vec::new();
        let mut skipped = Vec::new();
        for item in suites.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                for s in SuiteName::ALL {
                    if s.supports(legs) {
                        chosen.push(s);
                    } else {
                        skipped.push(s);
                    }
                }
                continue;
            }
            let s: SuiteName = item.parse()?;
            if !s.supports(legs) {
                let (lo, hi) = s.legs_range();
                let need = if lo == hi {
                    format!("legs = {lo}")
                } else {
                    format!("legs ≥ {lo}")
                };
                return Err(CliError::Config(format!(
                    "suite {s} needs {need}, got {legs}"
                )));
            }
            chosen.push(s);
        }
        chosen.sort();
        chosen.dedup();
        skipped.retain(|s| !chosen.contains(s));
        skipped.sort();
        skipped.dedup();
        if chosen.is_empty() {
            return Err(CliError::Config("no suite selected".into()));
        }
        Ok(RunConfig {
            params,
            suites: chosen,
            skipped,
            report_path,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsEcho {
    pub q: String,
    pub k: Vec<u32>,
    pub legs: usize,
    pub nmax: usize,
}

impl From<&RepParams> for ParamsEcho {
    fn from(p: &RepParams) -> Self {
        ParamsEcho {
            q: p.q().to_string(),
            k: p.k().to_vec(),
            legs: p.legs(),
            nmax: p.nmax(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Failing checks that decide the exit code.
    pub gating_fail: usize,
    pub by_suite: BTreeMap<String, Counts>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub params: ParamsEcho,
    pub checks: Vec<RelationReport>,
    pub summary: Summary,
    pub timings_ms: BTreeMap<String, u128>,
}

impl ReportFile {
    pub fn exit(&self) -> Exit {
        if self.summary.gating_fail == 0 {
            Exit::Pass
        } else {
            Exit::GatingFailure
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Symmetric relations for every allowable triple the leg count supports,
/// then the linear form.
fn aw3_suite(reg: &GeneratorRegistry) -> askey_wilson::Result<Vec<RelationReport>> {
    let mask = (1u8 << reg.legs()) - 1;
    let mut out = Vec::new();
    for t in relcheck::enumerate_allowable() {
        if (t.i | t.j | t.k) & !mask == 0 {
            out.extend(relcheck::check_aw3_symmetric(reg, t)?);
        }
    }
    out.extend(relcheck::check_aw3_linear(reg)?);
    Ok(out)
}

fn run_suite(s: SuiteName, reg: &GeneratorRegistry) -> askey_wilson::Result<Vec<RelationReport>> {
    let p = reg.params();
    let basis = reg.basis();
    match s {
        SuiteName::Defining => {
            let mut out = relcheck::check_defining_relations(p, basis)?;
            out.extend(relcheck::check_coassociativity(p, basis)?);
            out.extend(relcheck::check_casimir_centrality(p, basis)?);
            out.extend(relcheck::check_shift_identity(p, basis)?);
            Ok(out)
        }
        SuiteName::Prop1 => relcheck::check_prop1(reg),
        SuiteName::Prop2 => relcheck::check_prop2(reg),
        SuiteName::Aw3 => aw3_suite(reg),
        SuiteName::Aw3Quadratic => relcheck::check_aw3_quadratic(reg),
        SuiteName::Master => relcheck::check_master_all(reg),
        SuiteName::Spectra => check_all_annihilating(reg),
        SuiteName::Independence => Ok(vec![relcheck::check_independence(reg)?]),
    }
}

/// Runs the configured suites concurrently and assembles the report in
/// suite order.
pub fn run_verify(cfg: &RunConfig) -> CliResult<ReportFile> {
    let reg = GeneratorRegistry::build(&cfg.params, cfg.params.basis()?)?;
    let results: Vec<(SuiteName, askey_wilson::Result<Vec<RelationReport>>, u128)> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = cfg
                .suites
                .iter()
                .map(|&s| {
                    let reg = &reg;
                    scope.spawn(move || {
                        let start = Instant::now();
                        let out = run_suite(s, reg);
                        (s, out, start.elapsed().as_millis())
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        });

    let mut checks = Vec::new();
    let mut timings_ms = BTreeMap::new();
    let mut by_suite: BTreeMap<String, Counts> = BTreeMap::new();
    for (s, out, ms) in results {
        let reports = out?;
        let counts = by_suite.entry(s.name().to_string()).or_default();
        for r in &reports {
            if r.passed() {
                counts.pass += 1;
            } else {
                counts.fail += 1;
            }
        }
        timings_ms.insert(s.name().to_string(), ms);
        checks.extend(reports);
    }
    let pass = checks.iter().filter(|r| r.passed()).count();
    let gating_fail = checks.iter().filter(|r| r.gating && !r.passed()).count();
    Ok(ReportFile {
        format_version: REPORT_FORMAT_VERSION,
        params: ParamsEcho::from(&cfg.params),
        summary: Summary {
            pass,
            fail: checks.len() - pass,
            skipped: cfg.skipped.len(),
            gating_fail,
            by_suite,
        },
        checks,
        timings_ms,
    })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// One line per suite, then failing gating checks.
pub fn render_summary(report: &ReportFile) -> String {
    let mut out = String::new();
    for (suite, c) in &report.summary.by_suite {
        let ms = report.timings_ms.get(suite).copied().unwrap_or(0);
        out.push_str(&format!(
            "{suite:<14} pass {:>4}  fail {:>4}  {ms:>7} ms\n",
            c.pass, c.fail
        ));
    }
    for r in report.checks.iter().filter(|r| r.gating && !r.passed()) {
        out.push_str(&format!(
            "FAIL {} ({} nonzero)",
            r.id, r.residual_summary.nonzero
        ));
        if let Some(note) = &r.note {
            out.push_str(&format!(": {note}"));
        }
        out.push('\n');
    }
    let s = &report.summary;
    out.push_str(&format!(
        "total: {} pass, {} fail ({} gating), {} skipped\n",
        s.pass, s.fail, s.gating_fail, s.skipped
    ));
    out
}

pub fn cmd_verify(cfg: &RunConfig) -> CliResult<(Exit, String)> {
    let report = run_verify(cfg)?;
    if let Some(path) = &cfg.report_path {
        write_file(path, &report.to_json())?;
    }
    Ok((report.exit(), render_summary(&report)))
}

/// Predicted eigenvalues on the weight block and the annihilating check.
pub fn cmd_spectrum(raw: &RawParams, op: &str, weight: usize) -> CliResult<(Exit, String)> {
    let label: GeneratorLabel = op.parse()?;
    let Some((lo, hi)) = label.interval() else {
        return Err(CliError::Config(format!(
            "{label} has no closed-form spectrum (consecutive labels only)"
        )));
    };
    let params = raw.resolve()?;
    let interval = IntervalLabel::new(lo, hi, params.legs())?;
    if weight > params.nmax() {
        return Err(CliError::Config(format!(
            "--weight {weight} exceeds --nmax {}",
            params.nmax()
        )));
    }
    let reg = GeneratorRegistry::build(&params, params.basis()?)?;
    let report = check_annihilating(&reg, interval, weight)?;
    let mut out = String::new();
    for (x, lambda) in predicted_spectrum(&params, interval, weight)
        .iter()
        .enumerate()
    {
        out.push_str(&format!(
            "x={x} kappa={} lambda={lambda}\n",
            params.k_sum(interval) + x as i64
        ));
    }
    let status = if report.passed() { "pass" } else { "fail" };
    out.push_str(&format!("{} {status}\n", report.id));
    Ok((
        if report.passed() {
            Exit::Pass
        } else {
            Exit::GatingFailure
        },
        out,
    ))
}

/// DOT text of the compass graph; written to `dot` when given.
pub fn cmd_compass(raw: &RawParams, dot: Option<&Path>) -> CliResult<(Exit, String)> {
    let params = raw.resolve()?;
    if params.legs() != 4 {
        return Err(CliError::Config("the compass needs legs = 4".into()));
    }
    let reg = GeneratorRegistry::build(&params, params.basis()?)?;
    let text = export_dot(&build_compass(&reg)?);
    match dot {
        Some(path) => {
            write_file(path, &text)?;
            Ok((Exit::Pass, format!("wrote {}\n", path.display())))
        }
        None => Ok((Exit::Pass, text)),
    }
}

/// The shipped master-identity rows, or the raw table file with `dump`.
pub fn cmd_tables(dump: bool) -> CliResult<(Exit, String)> {
    if dump {
        return Ok((Exit::Pass, master::MASTER_TABLES_CSV.to_string()));
    }
    let mut out = String::new();
    for row in relcheck::master_rows() {
        out.push_str(&format!("{:<9} {}\n", row.id(), row.short()));
    }
    Ok((Exit::Pass, out))
}
