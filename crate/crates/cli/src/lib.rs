//! Job configuration, execution and reports for the `gwa` command.

pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use gwa_core::algebra::Gwa;
use gwa_core::complex::{ComplexKind, Variant};
use gwa_core::formulas::{coh_dims, duality_flag, hh_dims, oracle_report, twisted_dims, DimReport};
use gwa_core::invariants::{
    group_report, h0_bruteforce, invariant_gwa, reflectivity, simplicity_check, verify_invariant_identity,
    GroupClassData, Reflectivity,
};
use gwa_core::linalg::{Schedule, StabilizedDim};
use gwa_core::selftest::{self, SelftestReport};
use gwa_core::{Error, Poly, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// 2 invalid input, 3 hypothesis violation, 4 no stabilization.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::DivisionByZero | Error::ZeroOrder | Error::OrderTooLarge { .. } => 2,
                Error::ConstantPolynomial
                | Error::ZeroShift
                | Error::Hypothesis(_)
                | Error::InvalidRho(_)
                | Error::NotAnInvolution(_)
                | Error::Unsupported(_) => 3,
                Error::NoStabilization { .. } => 4,
                _ => 1,
            },
            CliError::Output(_) => 1,
        }
    }
}

/// Exit status for a report that ran to completion: 5 when formula and
/// oracle disagree or a self-test check fails.
pub fn report_status(report: &RunReport) -> u8 {
    let selftest_failed = report.selftest.as_ref().is_some_and(|s| !s.all_passed());
    if report.agreement == Some(false) || selftest_failed {
        5
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Hh,
    Coh,
    Twisted,
    Invariants,
    Group,
    Verify,
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceChoice {
    #[default]
    Formula,
    Oracle,
    Both,
}

impl SourceChoice {
    fn formula(self) -> bool {
        matches!(self, SourceChoice::Formula | SourceChoice::Both)
    }

    fn oracle(self) -> bool {
        matches!(self, SourceChoice::Oracle | SourceChoice::Both)
    }
}

/// Everything needed to run one job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: CommandKind,
    pub a: Option<String>,
    pub h0: String,
    pub p_max: usize,
    pub source: SourceChoice,
    pub variant: Variant,
    /// `(m, k)` for the twist `w = zeta_m^k`.
    pub twist: Option<(u32, i64)>,
    pub r: Option<u32>,
    pub classes: Option<String>,
    pub d_start: Option<usize>,
    pub d_step: Option<usize>,
    pub d_max: Option<usize>,
    pub window: Option<usize>,
    pub seed: u64,
    pub count: usize,
}

impl JobConfig {
    pub fn new(command: CommandKind) -> Self {
        JobConfig {
            command,
            a: None,
            h0: "1".into(),
            p_max: 4,
            source: SourceChoice::Formula,
            variant: Variant::Homology,
            twist: None,
            r: None,
            classes: None,
            d_start: None,
            d_step: None,
            d_max: None,
            window: None,
            seed: 1,
            count: 20,
        }
    }

    fn algebra(&self) -> Result<Gwa, CliError> {
        let text = self
            .a
            .as_deref()
            .ok_or_else(|| CliError::Input("--a is required".into()))?;
        let a = Poly::parse(text)?;
        let h0 = Scalar::parse(&self.h0)?;
        if h0.as_rational().is_none() {
            return Err(CliError::Input("h0 must be rational".into()));
        }
        Ok(Gwa::new(a, h0)?)
    }

    fn schedule(&self, n: usize) -> Schedule {
        let mut s = Schedule::for_degree(n);
        if let Some(v) = self.d_start {
            s = s.with_start(v);
        }
        if let Some(v) = self.d_step {
            s.step = v.max(1);
        }
        if let Some(v) = self.d_max {
            s = s.with_max(v);
        }
        if let Some(v) = self.window {
            s = s.with_window(v);
        }
        s
    }

    fn twist_scalar(&self) -> Result<Option<Scalar>, CliError> {
        self.twist
            .map(|(m, k)| Scalar::root_of_unity(m, k).map_err(CliError::from))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<String>,
    pub p_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<GroupClassData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Schedule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Stabilization record of one oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRun {
    pub kind: ComplexKind,
    pub dims: Vec<StabilizedDim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSummary {
    pub r: u32,
    /// Defining polynomial of the invariant algebra in the variable `H`.
    pub tilde_a: String,
    pub identity_holds: bool,
    pub simple: bool,
    pub hh0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hh0_bruteforce: Option<StabilizedDim>,
    pub reflectivity: Reflectivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: CommandKind,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub reports: Vec<DimReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stabilization: Vec<OracleRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestReport>,
    pub timing_us: u64,
}

impl RunReport {
    fn new(cfg: &JobConfig) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: cfg.command,
            input: InputEcho {
                a: cfg.a.clone(),
                h0: (cfg.command != CommandKind::Selftest).then(|| cfg.h0.clone()),
                p_max: cfg.p_max,
                twist: None,
                r: None,
                classes: None,
                schedule: None,
                seed: None,
            },
            n: None,
            d: None,
            reports: Vec::new(),
            stabilization: Vec::new(),
            agreement: None,
            duality: None,
            invariants: None,
            selftest: None,
            timing_us: 0,
        }
    }

    /// Adds formula and/or oracle reports for `kind`, comparing them when
    /// both ran.
    fn add_dims(
        &mut self,
        alg: &Gwa,
        kind: &ComplexKind,
        formula: Option<DimReport>,
        source: SourceChoice,
        schedule: &Schedule,
    ) -> Result<(), CliError> {
        let oracle = if source.oracle() {
            Some(oracle_report(alg, kind, self.input.p_max, schedule)?)
        } else {
            None
        };
        match (formula, oracle) {
            (Some(mut f), Some((mut o, stab))) => {
                let same = f.compare(&mut o);
                self.agreement = Some(self.agreement.unwrap_or(true) && same);
                self.reports.push(f);
                self.reports.push(o);
                self.stabilization.push(OracleRun { kind: kind.clone(), dims: stab });
            }
            (Some(f), None) => self.reports.push(f),
            (None, Some((o, stab))) => {
                self.reports.push(o);
                self.stabilization.push(OracleRun { kind: kind.clone(), dims: stab });
            }
            (None, None) => {}
        }
        Ok(())
    }
}

/// Runs one job.
pub fn run(cfg: &JobConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new(cfg);
    if cfg.command == CommandKind::Selftest {
        report.input.seed = Some(cfg.seed);
        report.selftest = Some(selftest::run(cfg.seed, cfg.count)?);
        report.timing_us = start.elapsed().as_micros() as u64;
        return Ok(report);
    }
    let alg = cfg.algebra()?;
    let schedule = cfg.schedule(alg.n());
    report.n = Some(alg.n());
    report.d = Some(alg.d());
    let p_max = cfg.p_max;
    match cfg.command {
        CommandKind::Hh | CommandKind::Coh => {
            let (kind, formula) = if cfg.command == CommandKind::Hh {
                (ComplexKind::homology(), hh_dims(&alg, p_max))
            } else {
                (ComplexKind::cohomology(), coh_dims(&alg, p_max))
            };
            if cfg.source.oracle() {
                report.input.schedule = Some(schedule);
            }
            let formula = cfg.source.formula().then_some(formula);
            report.add_dims(&alg, &kind, formula, cfg.source, &schedule)?;
            report.duality = Some(duality_flag(&alg));
        }
        CommandKind::Twisted => {
            let w = cfg
                .twist_scalar()?
                .ok_or_else(|| CliError::Input("--order is required for twisted coefficients".into()))?;
            report.input.twist = Some(w.clone());
            if cfg.source.oracle() {
                report.input.schedule = Some(schedule);
            }
            let formula = twisted_dims(&alg, cfg.variant, &w, p_max)?;
            let kind = ComplexKind::twisted(cfg.variant, w);
            let formula = cfg.source.formula().then_some(formula);
            report.add_dims(&alg, &kind, formula, cfg.source, &schedule)?;
        }
        CommandKind::Verify => {
            report.input.schedule = Some(schedule);
            let (kind, formula) = match cfg.twist_scalar()? {
                Some(w) => {
                    report.input.twist = Some(w.clone());
                    let f = twisted_dims(&alg, cfg.variant, &w, p_max)?;
                    (ComplexKind::twisted(cfg.variant, w), f)
                }
                None => match cfg.variant {
                    Variant::Homology => (ComplexKind::homology(), hh_dims(&alg, p_max)),
                    Variant::Cohomology => (ComplexKind::cohomology(), coh_dims(&alg, p_max)),
                },
            };
            report.add_dims(&alg, &kind, Some(formula), SourceChoice::Both, &schedule)?;
            if kind.twist.is_none() {
                report.duality = Some(duality_flag(&alg));
            }
        }
        CommandKind::Invariants => {
            let r = cfg.r.ok_or_else(|| CliError::Input("--r is required".into()))?;
            report.input.r = Some(r);
            let inv = invariant_gwa(&alg, r)?;
            let hh0 = hh_dims(&inv, 0).dims[0];
            let brute = if cfg.source.oracle() {
                let s = cfg.schedule(inv.n());
                report.input.schedule = Some(s);
                Some(h0_bruteforce(&inv, &s)?)
            } else {
                None
            };
            if let Some(b) = &brute {
                report.agreement = Some(b.value == hh0);
            }
            report.invariants = Some(InvariantsSummary {
                r,
                tilde_a: inv.a().format_with("H"),
                identity_holds: verify_invariant_identity(&alg, r)?,
                simple: simplicity_check(&alg)?,
                hh0,
                hh0_bruteforce: brute,
                reflectivity: reflectivity(alg.a()),
            });
            report.reports.push(hh_dims(&inv, p_max));
        }
        CommandKind::Group => {
            let text = cfg
                .classes
                .as_deref()
                .ok_or_else(|| CliError::Input("class data is required (--class or --classes-file)".into()))?;
            let classes: GroupClassData = text.parse()?;
            let g = group_report(&alg, &classes, p_max)?;
            report.agreement = g.agreement;
            report.input.classes = Some(classes);
            report.reports.push(g);
        }
        CommandKind::Selftest => unreachable!("handled above"),
    }
    report.timing_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// One line of a sweep file: `<a>` or `<a> ; <h0>`. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_sweep(text: &str, base: &JobConfig) -> Result<Vec<JobConfig>, CliError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.splitn(2, ';').map(str::trim);
            let a = parts.next().filter(|s| !s.is_empty());
            let a = a.ok_or_else(|| CliError::Input(format!("sweep line {line:?} has no polynomial")))?;
            let mut cfg = base.clone();
            cfg.a = Some(a.to_string());
            if let Some(h0) = parts.next().filter(|s| !s.is_empty()) {
                cfg.h0 = h0.to_string();
            }
            Ok(cfg)
        })
        .collect()
}

/// Outcome of one sweep job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobOutcome {
    pub exit_code: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RunReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<String>,
}

impl JobOutcome {
    pub fn from_result(cfg: &JobConfig, result: Result<RunReport, CliError>) -> Self {
        match result {
            Ok(report) => JobOutcome {
                exit_code: report_status(&report),
                report: Some(report),
                error: None,
                a: None,
                h0: None,
            },
            Err(e) => JobOutcome {
                exit_code: e.exit_code(),
                report: None,
                error: Some(e.to_string()),
                a: cfg.a.clone(),
                h0: Some(cfg.h0.clone()),
            },
        }
    }
}

/// Runs independent jobs concurrently, preserving input order.
pub fn run_sweep(jobs: &[JobConfig]) -> Vec<JobOutcome> {
    use rayon::prelude::*;
    jobs.par_iter()
        .map(|cfg| JobOutcome::from_result(cfg, run(cfg)))
        .collect()
}
