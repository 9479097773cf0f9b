use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::config::{Command, Format, RunConfig};
use super::fnspec::parse_function;
use super::selfcheck::run_selfcheck;
use crate::engine::{qft_surface, QftSurface, TransformOptions};
use crate::error::{QftError, Result};
use crate::function::FunctionSpec;
use crate::hilhorst::{compare_surfaces, degeneracy_partner, hilhorst_window, ScanOptions};
use crate::inversion::{roundtrip, InverseOptions, SliceOptions};
use crate::TOOL_VERSION;

/// Result of a successful run.
#[derive(Debug)]
pub struct Report {
    /// File or stdout content.
    pub body: String,
    /// Short human-readable lines for the terminal.
    pub notes: Vec<String>,
    /// False only when `selfcheck` finds a failing invariant.
    pub passed: bool,
}

#[derive(Serialize)]
struct Provenance<'a> {
    tool: &'static str,
    config: &'a RunConfig,
    tolerances: Tolerances,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    functions: Vec<FunctionInfo>,
}

#[derive(Serialize)]
struct Tolerances {
    quadrature_rel_tol: f64,
    max_subdivisions: usize,
    eps: Vec<f64>,
}

#[derive(Serialize)]
struct FunctionInfo {
    descriptor: String,
    sha256: String,
}

impl FunctionInfo {
    fn of(f: &FunctionSpec) -> Self {
        FunctionInfo {
            descriptor: f.descriptor(),
            sha256: f.fingerprint(),
        }
    }
}

fn transform_options(c: &RunConfig) -> TransformOptions {
    TransformOptions::default().with_rel_tol(c.tol)
}

fn provenance<'a>(c: &'a RunConfig, functions: &[&FunctionSpec]) -> Provenance<'a> {
    let t = transform_options(c);
    Provenance {
        tool: TOOL_VERSION,
        config: c,
        tolerances: Tolerances {
            quadrature_rel_tol: t.quad.rel_tol,
            max_subdivisions: t.quad.max_subdivisions,
            eps: c.eps.clone(),
        },
        functions: functions.iter().map(|f| FunctionInfo::of(f)).collect(),
    }
}

fn csv_preamble(p: &Provenance<'_>) -> String {
    let mut s = String::new();
    writeln!(s, "# tool: {}", p.tool).unwrap();
    writeln!(s, "# config: {}", serde_json::to_string(p.config).unwrap()).unwrap();
    writeln!(
        s,
        "# tolerances: {}",
        serde_json::to_string(&p.tolerances).unwrap()
    )
    .unwrap();
    for f in &p.functions {
        writeln!(s, "# function: {} sha256={}", f.descriptor, f.sha256).unwrap();
    }
    s
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// `k,q,re_F,im_F,err_est` rows, q-major.
fn surface_rows(s: &QftSurface, out: &mut String) {
    out.push_str("k,q,re_F,im_F,err_est\n");
    for (iq, q) in s.q_grid.iter().enumerate() {
        for (ik, k) in s.k_grid.iter().enumerate() {
            let v = s.value(iq, ik);
            writeln!(
                out,
                "{k:?},{q:?},{:?},{:?},{:?}",
                v.re,
                v.im,
                s.error(iq, ik)
            )
            .unwrap();
        }
    }
}

fn function_of(c: &RunConfig, fallback: &str) -> Result<FunctionSpec> {
    parse_function(c.function.as_deref().unwrap_or(fallback)).map_err(QftError::InvalidInput)
}

fn transform(c: &RunConfig) -> Result<Report> {
    let f = function_of(c, "")?;
    let s = qft_surface(&f, &c.k.points(), &c.q.points(), &transform_options(c))?;
    let p = provenance(c, &[&f]);
    let body = match c.format {
        Format::Csv => {
            let mut out = csv_preamble(&p);
            surface_rows(&s, &mut out);
            out
        }
        Format::Json => to_json(&json!({ "surface": s, "provenance": p })),
    };
    let worst = s.errors.iter().copied().fold(0.0, f64::max);
    Ok(Report {
        body,
        notes: vec![format!(
            "{} nodes, largest error estimate {worst:.1e}",
            s.values.len()
        )],
        passed: true,
    })
}

const Q_STAR: f64 = 1.5;

fn counterexample(c: &RunConfig) -> Result<Report> {
    let w1 = hilhorst_window(1.0, 2.0, Q_STAR)?;
    let w2 = degeneracy_partner(&w1, Q_STAR, 1.1)?;
    let (f1, f2): (FunctionSpec, FunctionSpec) = (w1.into(), w2.into());
    let (k, q, opts) = (c.k.points(), c.q.points(), transform_options(c));
    let (s1, s2) = rayon::join(
        || qft_surface(&f1, &k, &q, &opts),
        || qft_surface(&f2, &k, &q, &opts),
    );
    let (s1, s2) = (s1?, s2?);
    let scan = ScanOptions {
        transform: opts,
        ..ScanOptions::default()
    };
    let report = compare_surfaces(&s1, &s2, &scan)?;
    let p = provenance(c, &[&f1, &f2]);
    let body = match c.format {
        Format::Json => to_json(&json!({
            "verdicts": report.probes,
            "fixtures": {
                "q_star": Q_STAR,
                "window_1": w1,
                "window_2": w2,
            },
            "provenance": p,
        })),
        Format::Csv => {
            // the difference surface F1 - F2
            let diff = QftSurface {
                values: s1
                    .values
                    .iter()
                    .zip(&s2.values)
                    .map(|(a, b)| a - b)
                    .collect(),
                errors: s1
                    .errors
                    .iter()
                    .zip(&s2.errors)
                    .map(|(a, b)| a + b)
                    .collect(),
                ..s1
            };
            let mut out = csv_preamble(&p);
            out.push_str("# rows hold F1 - F2 with err_est = err1 + err2\n");
            surface_rows(&diff, &mut out);
            out
        }
    };
    let notes = report
        .probes
        .iter()
        .map(|r| {
            format!(
                "q = {:?}: max gap {:.3e}, error bound {:.1e}, {:?}",
                r.q, r.max_gap, r.error_bound, r.verdict
            )
        })
        .collect();
    Ok(Report {
        body,
        notes,
        passed: true,
    })
}

fn invert(c: &RunConfig) -> Result<Report> {
    let f = function_of(c, "indicator:0,1")?;
    let slice = SliceOptions {
        transform: transform_options(c),
        ..SliceOptions::default().with_eps(c.eps.clone())
    };
    let inverse = InverseOptions {
        edge_threshold: c.edge_threshold.unwrap_or(f64::INFINITY),
    };
    let rt = roundtrip(&f, &c.k.points(), &c.x.points(), &slice, &inverse)?;
    let p = provenance(c, &[&f]);
    let r = &rt.reconstruction;
    let body = match c.format {
        Format::Json => to_json(&json!({
            "roundtrip_error": rt.error,
            "edge_ratio": r.edge_ratio,
            "reconstruction": r,
            "original": rt.original,
            "provenance": p,
        })),
        Format::Csv => {
            let mut out = csv_preamble(&p);
            writeln!(out, "# roundtrip_error: {:?}", rt.error).unwrap();
            writeln!(out, "# edge_ratio: {:?}", r.edge_ratio).unwrap();
            out.push_str("x,f,f_rec,im_rec,err_est\n");
            for i in 0..r.x_grid.len() {
                writeln!(
                    out,
                    "{:?},{:?},{:?},{:?},{:?}",
                    r.x_grid[i], rt.original[i], r.values[i], r.imaginary[i], r.errors[i]
                )
                .unwrap();
            }
            out
        }
    };
    let mut notes = vec![format!("roundtrip_error: {:?}", rt.error)];
    if c.edge_threshold.is_none() && r.edge_ratio > InverseOptions::default().edge_threshold {
        notes.push(format!(
            "warning: slice edge is {:.2e} of its peak; the k grid truncates the transform",
            r.edge_ratio
        ));
    }
    Ok(Report {
        body,
        notes,
        passed: true,
    })
}

fn selfcheck(c: &RunConfig) -> Result<Report> {
    let results = run_selfcheck();
    let passed = results.iter().all(|r| r.passed);
    let lines: Vec<String> = results
        .iter()
        .map(|r| {
            format!(
                "{} {}: {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.detail
            )
        })
        .collect();
    let body = match c.format {
        Format::Json => to_json(&json!({
            "passed": passed,
            "checks": results,
            "provenance": provenance(c, &[]),
        })),
        Format::Csv => {
            let mut out = csv_preamble(&provenance(c, &[]));
            out.push_str("check,passed\n");
            for r in &results {
                writeln!(out, "{},{}", r.name, r.passed).unwrap();
            }
            out
        }
    };
    Ok(Report {
        body,
        notes: lines,
        passed,
    })
}

/// Execute a validated configuration.
pub fn run(c: &RunConfig) -> Result<Report> {
    match c.command {
        Command::Transform | Command::Sweep => transform(c),
        Command::Counterexample => counterexample(c),
        Command::Invert => invert(c),
        Command::Selfcheck => selfcheck(c),
    }
}
