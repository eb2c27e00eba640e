use std::fmt::Write as _;

use gwa_core::complex::{ComplexKind, Variant};
use gwa_core::formulas::Source;
use serde::Serialize;

use crate::{CliError, JobOutcome, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn kind_label(kind: &ComplexKind) -> String {
    let base = match kind.variant {
        Variant::Homology => "homology",
        Variant::Cohomology => "cohomology",
    };
    match &kind.twist {
        Some(w) => format!("{base} w={w}"),
        None => base.to_string(),
    }
}

fn source_label(s: Source) -> &'static str {
    match s {
        Source::Formula => "formula",
        Source::Oracle => "oracle",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Human-readable rendering of one report.
pub fn table(report: &RunReport) -> String {
    let mut out = String::new();
    let input = &report.input;
    if let Some(a) = &input.a {
        let _ = write!(out, "a = {a}, h0 = {}", input.h0.as_deref().unwrap_or("1"));
        if let (Some(n), Some(d)) = (report.n, report.d) {
            let _ = write!(out, "  (n = {n}, d = {d})");
        }
        out.push('\n');
    }
    if let Some(inv) = &report.invariants {
        let _ = writeln!(out, "invariants of order {}: a~(H) = {}", inv.r, inv.tilde_a);
        let _ = writeln!(out, "y^r x^r = a~(h/r): {}", yes_no(inv.identity_holds));
        let _ = writeln!(out, "simple: {}", yes_no(inv.simple));
        match &inv.reflectivity.rho {
            Some(rho) => {
                let _ = writeln!(out, "reflective: yes (rho = {rho})");
            }
            None => {
                let _ = writeln!(out, "reflective: no");
            }
        }
        let _ = write!(out, "dim HH_0(A^G) = {}", inv.hh0);
        if let Some(b) = &inv.hh0_bruteforce {
            let _ = write!(out, " (brute force {} at D = {})", b.value, b.stabilized_at);
        }
        out.push('\n');
    }
    if let Some(classes) = &input.classes {
        let _ = writeln!(out, "classes: a1 = {}, a2 = {}", classes.a1(), classes.a2());
    }
    if !report.reports.is_empty() {
        let width = report.reports.iter().map(|r| r.dims.len()).max().unwrap_or(0);
        let labels: Vec<String> = report.reports.iter().map(|r| kind_label(&r.kind)).collect();
        let kw = labels.iter().map(String::len).max().unwrap_or(4).max(4);
        let _ = write!(out, "{:<kw$}  {:<7}", "kind", "source");
        for p in 0..width {
            let _ = write!(out, " {p:>3}");
        }
        out.push('\n');
        for (r, label) in report.reports.iter().zip(&labels) {
            let _ = write!(out, "{label:<kw$}  {:<7}", source_label(r.source));
            for v in &r.dims {
                let _ = write!(out, " {v:>3}");
            }
            out.push('\n');
        }
    }
    for run in &report.stabilization {
        let at: Vec<String> = run.dims.iter().map(|d| d.stabilized_at.to_string()).collect();
        let _ = writeln!(out, "{} oracle stabilized at D = [{}]", kind_label(&run.kind), at.join(", "));
    }
    if let Some(agree) = report.agreement {
        let _ = writeln!(out, "agreement: {}", yes_no(agree));
    }
    if let Some(dual) = report.duality {
        let _ = writeln!(out, "duality HH_p = HH^(2-p): {}", yes_no(dual));
    }
    if let Some(st) = &report.selftest {
        for spec in &st.specs {
            let passed = spec.checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(
                out,
                "a = {}, h0 = {}: {passed}/{} checks passed",
                spec.spec.a,
                spec.spec.h0,
                spec.checks.len()
            );
            for c in spec.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(out, "  FAILED {} {}", c.name, c.detail);
            }
        }
        let _ = writeln!(out, "seed {}: {}", st.seed, if st.all_passed() { "all passed" } else { "FAILURES" });
    }
    let _ = writeln!(out, "time: {:.3} ms", report.timing_us as f64 / 1000.0);
    out
}

#[derive(Serialize)]
struct CsvRow<'a> {
    command: String,
    a: &'a str,
    h0: &'a str,
    kind: String,
    source: &'a str,
    n: Option<usize>,
    d: Option<usize>,
    dims: String,
    agreement: Option<bool>,
    error: &'a str,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    a: String,
    h0: String,
    check: &'a str,
    passed: bool,
    detail: &'a str,
}

fn command_name(report: &RunReport) -> String {
    serde_json::to_value(report.command)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// CSV rendering: one row per dimension list (or per self-test check).
pub fn csv(outcomes: &[JobOutcome]) -> Result<String, CliError> {
    let err = |e: csv::Error| CliError::Output(e.to_string());
    let selftest = outcomes.iter().any(|o| o.report.as_ref().is_some_and(|r| r.selftest.is_some()));
    let mut w = csv::Writer::from_writer(Vec::new());
    for o in outcomes {
        if selftest {
            for spec in o.report.iter().flat_map(|r| r.selftest.iter()).flat_map(|s| &s.specs) {
                for c in &spec.checks {
                    w.serialize(CheckRow {
                        a: spec.spec.a.to_string(),
                        h0: spec.spec.h0.to_string(),
                        check: &c.name,
                        passed: c.passed,
                        detail: &c.detail,
                    })
                    .map_err(err)?;
                }
            }
            continue;
        }
        match &o.report {
            Some(report) => {
                for r in &report.reports {
                    let dims: Vec<String> = r.dims.iter().map(usize::to_string).collect();
                    w.serialize(CsvRow {
                        command: command_name(report),
                        a: report.input.a.as_deref().unwrap_or(""),
                        h0: report.input.h0.as_deref().unwrap_or(""),
                        kind: kind_label(&r.kind),
                        source: source_label(r.source),
                        n: Some(r.n),
                        d: Some(r.d),
                        dims: dims.join(";"),
                        agreement: r.agreement,
                        error: "",
                    })
                    .map_err(err)?;
                }
            }
            None => {
                w.serialize(CsvRow {
                    command: String::new(),
                    a: o.a.as_deref().unwrap_or(""),
                    h0: o.h0.as_deref().unwrap_or(""),
                    kind: String::new(),
                    source: "",
                    n: None,
                    d: None,
                    dims: String::new(),
                    agreement: None,
                    error: o.error.as_deref().unwrap_or(""),
                })
                .map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))
}
