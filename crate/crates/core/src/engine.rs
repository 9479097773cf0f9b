//! Numerical q-Fourier transform
//!
//! ```text
//! F(k, q) = [H(q-1) - H(q-2)] * integral f(x) e_q(i k x f(x)^(q-1)) dx
//! ```
//!
//! For real `k` the base `1 + i(1-q) k x f^(q-1)` has real part 1, so the
//! principal branch is never crossed and no regularization is needed here.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{QftError, Result};
use crate::function::FunctionSpec;
use crate::qcore::{heaviside_gate, q_exponential, DeformationIndex};
use crate::quadrature::{integrate, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TransformOptions {
    pub quad: QuadOptions,
    /// Upper bound on the oscillation pre-split panel count.
    pub max_panels: usize,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            quad: QuadOptions::default(),
            max_panels: 4096,
        }
    }
}

impl TransformOptions {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.quad.rel_tol = rel_tol;
        self
    }
}

/// A transform value with its a-posteriori quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QftValue {
    pub value: Complex64,
    pub error: f64,
}

impl QftValue {
    const ZERO: QftValue = QftValue {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
    };
}

/// `||f||_1` to relative tolerance 1e-12.
pub fn l1_norm(f: &FunctionSpec) -> Result<f64> {
    let opts = QuadOptions {
        rel_tol: 1e-12,
        ..QuadOptions::default()
    };
    let r = integrate(
        |x| Ok(Complex64::new(f.value(x), 0.0)),
        &f.breakpoints(),
        &opts,
    )?;
    if !(r.value.re > 0.0) {
        return Err(QftError::invalid(format!(
            "{} has no positive mass",
            f.descriptor()
        )));
    }
    Ok(r.value.re)
}

/// `f(x) e_q(i k x f(x)^(q-1))`, zero wherever `f(x) = 0`.
pub fn integrand(f: &FunctionSpec, q: DeformationIndex, k: f64, x: f64) -> Result<Complex64> {
    let fx = f.value(x);
    if fx == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let phase = if q.is_classical() {
        k * x
    } else {
        k * x * fx.powf(q.excess())
    };
    Ok(q_exponential(Complex64::new(0.0, phase), q)? * fx)
}

/// Breakpoints of `f` refined so each panel spans O(1) kernel oscillations.
fn panel_edges(f: &FunctionSpec, q: DeformationIndex, k: f64, max_panels: usize) -> Vec<f64> {
    let mut edges = f.breakpoints();
    let (lo, hi) = f.support();
    let scale = if q.is_classical() {
        1.0
    } else {
        f.peak().powf(q.excess())
    };
    let width = hi - lo;
    let n = ((width * k.abs() * scale) / std::f64::consts::PI).ceil();
    let n = (n as usize).clamp(1, max_panels.max(1));
    if n > 1 {
        edges.extend((1..n).map(|i| lo + width * i as f64 / n as f64));
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * width);
    }
    edges
}

/// `F(k, q)` by adaptive quadrature. Exactly zero when `q` lies outside `[1, 2)`.
pub fn qft_point(f: &FunctionSpec, q: f64, k: f64, opts: &TransformOptions) -> Result<QftValue> {
    if heaviside_gate(q)? == 0 {
        return Ok(QftValue::ZERO);
    }
    if !k.is_finite() {
        return Err(QftError::invalid(format!("k must be finite, got {k}")));
    }
    let q = DeformationIndex::new(q)?;
    let edges = panel_edges(f, q, k, opts.max_panels);
    let r = integrate(|x| integrand(f, q, k, x), &edges, &opts.quad)?;
    Ok(QftValue {
        value: r.value,
        error: r.error,
    })
}

/// Where a surface came from.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SurfaceProvenance {
    pub tool: String,
    pub function: String,
    pub function_hash: String,
    pub options: TransformOptions,
}

/// `F(k, q)` sampled on a rectangular grid; row `i` holds `q_grid[i]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct QftSurface {
    pub k_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
    pub provenance: SurfaceProvenance,
}

impl QftSurface {
    fn index(&self, iq: usize, ik: usize) -> usize {
        assert!(iq < self.q_grid.len() && ik < self.k_grid.len());
        iq * self.k_grid.len() + ik
    }

    pub fn value(&self, iq: usize, ik: usize) -> Complex64 {
        self.values[self.index(iq, ik)]
    }

    pub fn error(&self, iq: usize, ik: usize) -> f64 {
        self.errors[self.index(iq, ik)]
    }

    pub fn row(&self, iq: usize) -> &[Complex64] {
        let n = self.k_grid.len();
        &self.values[iq * n..(iq + 1) * n]
    }

    pub fn row_errors(&self, iq: usize) -> &[f64] {
        let n = self.k_grid.len();
        &self.errors[iq * n..(iq + 1) * n]
    }

    /// Largest `|F(q,-k) - conj F(q,k)|` minus the recorded error bounds, if
    /// the k grid is symmetric. Nonpositive means symmetric within error.
    pub fn hermitian_excess(&self) -> Option<f64> {
        let n = self.k_grid.len();
        let symmetric = (0..n).all(|i| {
            let (a, b) = (self.k_grid[i], self.k_grid[n - 1 - i]);
            (a + b).abs() <= 1e-12 * a.abs().max(1.0)
        });
        if !symmetric {
            return None;
        }
        let mut worst = f64::NEG_INFINITY;
        for iq in 0..self.q_grid.len() {
            for ik in 0..n {
                let jk = n - 1 - ik;
                let gap = (self.value(iq, jk) - self.value(iq, ik).conj()).norm();
                worst = worst.max(gap - self.error(iq, ik) - self.error(iq, jk));
            }
        }
        Some(worst)
    }
}

/// A failed surface evaluation, keeping whatever nodes did succeed.
#[derive(Debug, thiserror::Error)]
#[error("{source}")]
pub struct SurfaceError {
    #[source]
    pub source: QftError,
    /// Row-major like [`QftSurface::values`].
    pub partial: Vec<Option<QftValue>>,
}

impl From<SurfaceError> for QftError {
    fn from(e: SurfaceError) -> Self {
        e.source
    }
}

pub(crate) fn validate_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(QftError::invalid(format!("{name} grid is empty")));
    }
    if !grid.iter().all(|v| v.is_finite()) {
        return Err(QftError::invalid(format!(
            "{name} grid has non-finite values"
        )));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(QftError::invalid(format!("{name} grid must be sorted")));
    }
    Ok(())
}

/// Evaluate [`qft_point`] on every `(q, k)` node. Nodes run in parallel; the
/// result is identical to a sequential sweep.
pub fn qft_surface(
    f: &FunctionSpec,
    k_grid: &[f64],
    q_grid: &[f64],
    opts: &TransformOptions,
) -> std::result::Result<QftSurface, SurfaceError> {
    let setup = || -> Result<()> {
        validate_grid("k", k_grid)?;
        validate_grid("q", q_grid)?;
        if let Some(q) = q_grid.iter().find(|q| !(1.0..2.0).contains(*q)) {
            return Err(QftError::domain(format!("q grid value {q} outside [1, 2)")));
        }
        Ok(())
    };
    setup().map_err(|source| SurfaceError {
        source,
        partial: Vec::new(),
    })?;

    let nk = k_grid.len();
    let results: Vec<Result<QftValue>> = (0..q_grid.len() * nk)
        .into_par_iter()
        .map(|i| qft_point(f, q_grid[i / nk], k_grid[i % nk], opts))
        .collect();

    if let Some(i) = results.iter().position(|r| r.is_err()) {
        let partial = results.iter().map(|r| r.as_ref().ok().copied()).collect();
        let source = results.into_iter().nth(i).unwrap().unwrap_err();
        return Err(SurfaceError {
            source: QftError::SurfaceNode {
                q: q_grid[i / nk],
                k: k_grid[i % nk],
                source: Box::new(source),
            },
            partial,
        });
    }
    let (values, errors) = results
        .into_iter()
        .map(|r| {
            let v = r.expect("checked above");
            (v.value, v.error)
        })
        .unzip();
    Ok(QftSurface {
        k_grid: k_grid.to_vec(),
        q_grid: q_grid.to_vec(),
        values,
        errors,
        provenance: SurfaceProvenance {
            tool: crate::TOOL_VERSION.to_string(),
            function: f.descriptor(),
            function_hash: f.fingerprint(),
            options: *opts,
        },
    })
}
