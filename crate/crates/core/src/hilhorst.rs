//! The power-law window family `f(x) = (lambda/x)^beta` on `[a, b]`.
//!
//! At `beta = 1/(q-1)` the kernel argument `k x f^(q-1) = k lambda` no longer
//! depends on `x`, so every normalized window shares the transform
//! `e_q(i k lambda)` at that `q`. Windows with equal
//! `C = a^((q-2)/(q-1)) - b^((q-2)/(q-1))` share `lambda` and therefore the
//! whole fixed-`q` transform. Away from that `q` the transforms differ.

use num_complex::Complex64;

use crate::engine::{qft_surface, QftSurface, TransformOptions};
use crate::error::{QftError, Result};
use crate::function::FunctionSpec;
use crate::hyp2f1::{hyp2f1_boundary, BoundaryPolicy, Hyp2F1Params};
use crate::qcore::principal_power;

/// Componentwise tolerance for treating two windows as the same function.
const SAME_WINDOW: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerLawWindow {
    a: f64,
    b: f64,
    beta: f64,
    lambda: f64,
}

/// Validated constructor. `beta = 0` is accepted and gives the unit indicator.
pub fn make_window(a: f64, b: f64, beta: f64, lambda: f64) -> Result<PowerLawWindow> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && a < b) {
        return Err(QftError::InvalidWindow(format!(
            "need 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(QftError::InvalidWindow(format!(
            "need beta >= 0, got {beta}"
        )));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(QftError::InvalidWindow(format!(
            "need lambda > 0, got {lambda}"
        )));
    }
    Ok(PowerLawWindow { a, b, beta, lambda })
}

impl PowerLawWindow {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn value(&self, x: f64) -> f64 {
        if x >= self.a && x <= self.b {
            (self.lambda / x).powf(self.beta)
        } else {
            0.0
        }
    }

    /// `integral_a^b (lambda/x)^beta dx` from the antiderivative.
    pub fn analytic_l1(&self) -> f64 {
        let PowerLawWindow { a, b, beta, lambda } = *self;
        if beta == 1.0 {
            lambda * (b / a).ln()
        } else {
            lambda.powf(beta) * (a.powf(1.0 - beta) - b.powf(1.0 - beta)) / (beta - 1.0)
        }
    }

    /// Equal `(a, b, beta, lambda)` within 1e-12 componentwise.
    pub fn same_as(&self, other: &PowerLawWindow) -> bool {
        let close = |x: f64, y: f64| (x - y).abs() <= SAME_WINDOW * x.abs().max(y.abs()).max(1.0);
        close(self.a, other.a)
            && close(self.b, other.b)
            && close(self.beta, other.beta)
            && close(self.lambda, other.lambda)
    }
}

fn open_q(q: f64) -> Result<f64> {
    if q > 1.0 && q < 2.0 {
        Ok(q)
    } else {
        Err(QftError::domain(format!("q must lie in (1, 2), got {q}")))
    }
}

/// `a^p - b^p` with `p = (q-2)/(q-1)`; positive for `a < b`.
pub fn level_set_constant(a: f64, b: f64, q: f64) -> Result<f64> {
    let q = open_q(q)?;
    make_window(a, b, 0.0, 1.0)?;
    let p = (q - 2.0) / (q - 1.0);
    Ok(a.powf(p) - b.powf(p))
}

fn lambda_from_constant(c: f64, q: f64) -> f64 {
    ((q - 1.0) / (2.0 - q) * c).powf(1.0 - q)
}

/// The `lambda` that normalizes the `beta = 1/(q-1)` window on `[a, b]`.
pub fn hilhorst_lambda(a: f64, b: f64, q: f64) -> Result<f64> {
    Ok(lambda_from_constant(level_set_constant(a, b, q)?, q))
}

/// The normalized `beta = 1/(q-1)` window on `[a, b]`.
pub fn hilhorst_window(a: f64, b: f64, q: f64) -> Result<PowerLawWindow> {
    let lambda = hilhorst_lambda(a, b, q)?;
    make_window(a, b, 1.0 / (q - 1.0), lambda)
}

/// `[1 + (1-q) i k lambda]^(1/(1-q))`, the common transform of a normalized
/// level set at `beta = 1/(q-1)`.
pub fn degenerate_transform(lambda: f64, q: f64, k: f64) -> Result<Complex64> {
    let q = open_q(q)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(QftError::invalid(format!(
            "lambda must be > 0, got {lambda}"
        )));
    }
    if !k.is_finite() {
        return Err(QftError::invalid(format!("k must be finite, got {k}")));
    }
    principal_power(Complex64::new(1.0, (1.0 - q) * k * lambda), 1.0 / (1.0 - q))
}

/// A second window on the level set of `w` starting at `a2`.
///
/// The partner keeps `w`'s `lambda` and level-set constant, so its fixed-`q`
/// transform equals that of `w` whether or not `w` is normalized.
pub fn degeneracy_partner(w: &PowerLawWindow, q: f64, a2: f64) -> Result<PowerLawWindow> {
    let q = open_q(q)?;
    let beta = 1.0 / (q - 1.0);
    if (w.beta - beta).abs() > SAME_WINDOW * beta {
        return Err(QftError::NoPartner(format!(
            "window exponent {} is not 1/(q-1) = {beta}",
            w.beta
        )));
    }
    if !(a2.is_finite() && a2 > 0.0) {
        return Err(QftError::NoPartner(format!("a2 must be > 0, got {a2}")));
    }
    if (a2 - w.a).abs() <= SAME_WINDOW * w.a.max(1.0) {
        return Err(QftError::NoPartner(format!(
            "a2 = {a2} reproduces the original window"
        )));
    }
    let p = (q - 2.0) / (q - 1.0);
    let c = level_set_constant(w.a, w.b, q)?;
    let rest = a2.powf(p) - c;
    if !(rest > 0.0) {
        return Err(QftError::NoPartner(format!(
            "a2 = {a2} is too large: a2^{p} = {} does not exceed the level-set constant {c}",
            a2.powf(p)
        )));
    }
    let b2 = rest.powf(1.0 / p);
    make_window(a2, b2, w.beta, w.lambda).map_err(|e| QftError::NoPartner(e.to_string()))
}

/// Tolerances for [`closed_form_transform`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormOptions {
    /// Minimum `|1 - beta(q-1)|`.
    pub singular_margin: f64,
    /// Minimum `|k|`.
    pub k_min: f64,
    pub boundary: BoundaryPolicy,
}

impl Default for ClosedFormOptions {
    fn default() -> Self {
        ClosedFormOptions {
            singular_margin: 1e-3,
            k_min: 1e-3,
            // the arguments are off the cut, so tiny offsets cost nothing
            boundary: BoundaryPolicy::new(vec![1e-6, 1e-7, 1e-8, 1e-9], 2)
                .expect("valid closed-form policy"),
        }
    }
}

/// Which hypergeometric representation a closed-form value used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormBranch {
    /// `q < 1 + 1/beta`: expansion in `1/(k x^(1-beta(q-1)))`.
    Inverse,
    /// `q > 1 + 1/beta`: expansion in `k x^(1-beta(q-1))`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClosedFormValue {
    pub value: Complex64,
    /// Propagated boundary-extrapolation error.
    pub error: f64,
    pub branch: ClosedFormBranch,
}

/// `F(k, q)` of `w` through `2F1`.
///
/// With `s = q-1`, `g = 1 - beta s`, `c0 = -i s k lambda^(beta s)`:
///
/// ```text
/// g > 0:  F = s lambda^beta c0^(-1/s) / (1-s)
///             * [x^((q-2)/(q-1)) 2F1(1/s, b'; b'+1; -1/(c0 x^g))]_{x=b}^{x=a},
///         b' = (2-q)/(s g)
/// g < 0:  F = lambda^beta / (beta-1)
///             * [x^(1-beta) 2F1(1/s, m; m+1; -c0 x^g)]_{x=b}^{x=a},
///         m = (1-beta)/g
/// ```
///
/// Both `2F1` arguments are purely imaginary. Fails with
/// [`QftError::FallbackRequired`] within the singular margins.
pub fn closed_form_transform(
    w: &PowerLawWindow,
    q: f64,
    k: f64,
    opts: &ClosedFormOptions,
) -> Result<ClosedFormValue> {
    let q = open_q(q)?;
    if !k.is_finite() {
        return Err(QftError::invalid(format!("k must be finite, got {k}")));
    }
    let s = q - 1.0;
    let PowerLawWindow { a, b, beta, lambda } = *w;
    let g = 1.0 - beta * s;
    if g.abs() <= opts.singular_margin {
        return Err(QftError::FallbackRequired(format!(
            "|1 - beta(q-1)| = {:e} within {:e} of the degenerate stratum",
            g.abs(),
            opts.singular_margin
        )));
    }
    if k.abs() <= opts.k_min {
        return Err(QftError::FallbackRequired(format!(
            "|k| = {:e} within {:e} of zero",
            k.abs(),
            opts.k_min
        )));
    }
    let nu = 1.0 / s;
    let c0 = Complex64::new(0.0, -s * k * lambda.powf(beta * s));
    let term = |upper: f64, z: Complex64| -> Result<(Complex64, f64)> {
        let bv = hyp2f1_boundary(
            &Hyp2F1Params::new(nu, upper, upper + 1.0, z)?,
            &opts.boundary,
        )?;
        Ok((bv.value, bv.error))
    };
    let (prefactor, branch, pa, pb, (fa, ea), (fb, eb)) = if g > 0.0 {
        let upper = (2.0 - q) / (s * g);
        let p = (q - 2.0) / (q - 1.0);
        let pre = principal_power(c0, -nu)? * (s * lambda.powf(beta) / (1.0 - s));
        let za = -1.0 / (c0 * a.powf(g));
        let zb = -1.0 / (c0 * b.powf(g));
        (
            pre,
            ClosedFormBranch::Inverse,
            a.powf(p),
            b.powf(p),
            term(upper, za)?,
            term(upper, zb)?,
        )
    } else {
        let upper = (1.0 - beta) / g;
        let pre = Complex64::new(lambda.powf(beta) / (beta - 1.0), 0.0);
        let za = -c0 * a.powf(g);
        let zb = -c0 * b.powf(g);
        let (pa, pb) = (a.powf(1.0 - beta), b.powf(1.0 - beta));
        (
            pre,
            ClosedFormBranch::Direct,
            pa,
            pb,
            term(upper, za)?,
            term(upper, zb)?,
        )
    };
    let value = prefactor * (fa * pa - fb * pb);
    let error = prefactor.norm() * (ea * pa + eb * pb);
    Ok(ClosedFormValue {
        value,
        error,
        branch,
    })
}

/// Verdict for one probe `q` of a [`SeparationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Degenerate,
    Separated,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ProbeResult {
    pub q: f64,
    /// `max_k |F1 - F2|`.
    pub max_gap: f64,
    /// `k` where the gap peaks.
    pub k_at_max: f64,
    /// `max_k (err1 + err2)`.
    pub error_bound: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SeparationReport {
    pub probes: Vec<ProbeResult>,
}

impl SeparationReport {
    pub fn probe(&self, q: f64) -> Option<&ProbeResult> {
        self.probes.iter().find(|p| p.q == q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ScanOptions {
    pub transform: TransformOptions,
    /// Gaps at or below this count as degenerate.
    pub degeneracy_tol: f64,
    /// "separated" needs the gap above this multiple of the error bound.
    pub separation_factor: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            transform: TransformOptions::default(),
            degeneracy_tol: 1e-6,
            separation_factor: 10.0,
        }
    }
}

fn classify(gap: f64, bound: f64, opts: &ScanOptions) -> Verdict {
    if gap <= opts.degeneracy_tol.max(bound) {
        Verdict::Degenerate
    } else if gap > opts.separation_factor * bound {
        Verdict::Separated
    } else {
        Verdict::Inconclusive
    }
}

/// Compare the transforms of two windows over `q_grid x k_grid`.
pub fn separation_scan(
    w1: &PowerLawWindow,
    w2: &PowerLawWindow,
    q_grid: &[f64],
    k_grid: &[f64],
    opts: &ScanOptions,
) -> Result<SeparationReport> {
    let (f1, f2): (FunctionSpec, FunctionSpec) = ((*w1).into(), (*w2).into());
    let (s1, s2) = rayon::join(
        || qft_surface(&f1, k_grid, q_grid, &opts.transform),
        || qft_surface(&f2, k_grid, q_grid, &opts.transform),
    );
    compare_surfaces(&s1?, &s2?, opts)
}

/// Per-`q` gaps and verdicts between two surfaces on the same grid.
pub fn compare_surfaces(
    s1: &QftSurface,
    s2: &QftSurface,
    opts: &ScanOptions,
) -> Result<SeparationReport> {
    if s1.k_grid != s2.k_grid || s1.q_grid != s2.q_grid {
        return Err(QftError::invalid("surfaces are sampled on different grids"));
    }
    let probes = s1
        .q_grid
        .iter()
        .enumerate()
        .map(|(iq, &q)| {
            let (mut gap, mut k_at_max, mut bound) = (0.0, s1.k_grid[0], 0.0f64);
            for (ik, &k) in s1.k_grid.iter().enumerate() {
                let d = (s1.value(iq, ik) - s2.value(iq, ik)).norm();
                if d > gap {
                    gap = d;
                    k_at_max = k;
                }
                bound = bound.max(s1.error(iq, ik) + s2.error(iq, ik));
            }
            ProbeResult {
                q,
                max_gap: gap,
                k_at_max,
                error_bound: bound,
                verdict: classify(gap, bound, opts),
            }
        })
        .collect();
    Ok(SeparationReport { probes })
}
