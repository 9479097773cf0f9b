//! Gauss hypergeometric function `2F1(a, b; c; z)` for real parameters and
//! complex argument.
//!
//! Evaluation picks, among the Gauss series and its five standard linear
//! transformations (`z/(z-1)`, `1/z`, `1/(1-z)`, `1-z`, `1-1/z`), the one whose
//! transformed argument is smallest, provided it is at most 0.6. Otherwise,
//! and whenever the best formula has integer-spaced parameters, the value is
//! reached by Taylor stepping along the hypergeometric differential equation
//! from a point inside the disk.
//!
//! One-sided values on the cut `[1, inf)` come from [`hyp2f1_boundary`], which
//! extrapolates `z + i eps` to `eps = 0`.

use num_complex::Complex64;

use crate::error::{ensure_finite, QftError, Result};
use crate::extrapolate::{richardson_to_zero, Extrapolation};
use crate::gamma::{gamma_ratio, is_nonpositive_integer};
use crate::qcore::principal_power;

/// Largest transformed modulus summed directly.
const ACCEPT_MODULUS: f64 = 0.6;
/// Parameter combinations within this distance of an integer are degenerate.
const NEAR_INTEGER: f64 = 1e-5;
/// Perturbation step for degenerate parameters.
const PERTURBATION: f64 = 1e-4;
const TAYLOR_MAX_TERMS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: Complex64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, z: Complex64) -> Result<Self> {
        if ![a, b, c, z.re, z.im].iter().all(|v| v.is_finite()) {
            return Err(QftError::invalid("2F1 parameters must be finite"));
        }
        if is_nonpositive_integer(c) {
            return Err(QftError::invalid(format!(
                "2F1 lower parameter c = {c} is a nonpositive integer"
            )));
        }
        Ok(Hyp2F1Params { a, b, c, z })
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        Self::new(a, b, c, Complex64::new(z, 0.0))
    }

    fn with_z(self, z: Complex64) -> Self {
        Hyp2F1Params { z, ..self }
    }

    fn is_polynomial(&self) -> bool {
        is_nonpositive_integer(self.a) || is_nonpositive_integer(self.b)
    }
}

/// What to do when the chosen connection formula has integer-spaced parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateStrategy {
    /// Fail with [`QftError::Degenerate`].
    Reject,
    /// Step along the differential equation instead; if that fails, perturb
    /// `b` symmetrically and extrapolate the perturbation to zero.
    Perturb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyp2F1Config {
    /// Series stops once two consecutive terms fall below `series_tol * |sum|`.
    pub series_tol: f64,
    pub max_terms: usize,
    /// [`hyp2f1_series`] only accepts `|z| < 1 - disk_margin`.
    pub disk_margin: f64,
    pub degenerate: DegenerateStrategy,
}

impl Default for Hyp2F1Config {
    fn default() -> Self {
        Hyp2F1Config {
            series_tol: 1e-15,
            max_terms: 1_000_000,
            disk_margin: 0.05,
            degenerate: DegenerateStrategy::Perturb,
        }
    }
}

/// The `eps -> 0+` regularization used for one-sided limits.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundaryPolicy {
    eps_sequence: Vec<f64>,
    extrapolation_order: usize,
    tolerance: f64,
}

impl BoundaryPolicy {
    /// `eps_sequence` must be strictly decreasing, positive, and of length >= 2.
    pub fn new(eps_sequence: Vec<f64>, extrapolation_order: usize) -> Result<Self> {
        if eps_sequence.len() < 2 {
            return Err(QftError::invalid(
                "boundary eps sequence needs at least 2 values",
            ));
        }
        if eps_sequence.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(QftError::invalid(
                "boundary eps values must be finite and > 0",
            ));
        }
        if eps_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return Err(QftError::invalid(
                "boundary eps sequence must strictly decrease",
            ));
        }
        if extrapolation_order == 0 {
            return Err(QftError::invalid("extrapolation order must be >= 1"));
        }
        Ok(BoundaryPolicy {
            eps_sequence,
            extrapolation_order,
            tolerance: 1e-10,
        })
    }

    /// Relative tolerance on the extrapolation residual.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn eps_sequence(&self) -> &[f64] {
        &self.eps_sequence
    }

    pub fn extrapolation_order(&self) -> usize {
        self.extrapolation_order
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl Default for BoundaryPolicy {
    fn default() -> Self {
        BoundaryPolicy::new(vec![1e-3, 1e-4, 1e-5, 1e-6], 2).expect("valid default policy")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryValue {
    pub value: Complex64,
    pub error: f64,
    pub extrapolation: Extrapolation,
}

/// Raw Gauss series; no restriction on `|z|` beyond convergence.
fn series_sum(a: f64, b: f64, c: f64, z: Complex64, cfg: &Hyp2F1Config) -> Result<Complex64> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= z * ((a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)));
        sum += term;
        if term.norm() <= cfg.series_tol * sum.norm() {
            small += 1;
            if small == 2 {
                return ensure_finite(sum, "2F1 series");
            }
        } else {
            small = 0;
        }
    }
    Err(QftError::Convergence {
        terms: cfg.max_terms,
        last_term: term.norm(),
        sum,
    })
}

/// Direct Gauss series, restricted to `|z| < 1 - margin`.
pub fn hyp2f1_series(p: &Hyp2F1Params) -> Result<Complex64> {
    hyp2f1_series_with(p, &Hyp2F1Config::default())
}

pub fn hyp2f1_series_with(p: &Hyp2F1Params, cfg: &Hyp2F1Config) -> Result<Complex64> {
    let limit = 1.0 - cfg.disk_margin;
    if p.z.norm() >= limit {
        return Err(QftError::domain(format!(
            "series needs |z| < {limit}, got |z| = {}",
            p.z.norm()
        )));
    }
    series_sum(p.a, p.b, p.c, p.z, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Transform {
    Identity,
    Pfaff,
    Inverse,
    InverseOneMinus,
    OneMinus,
    OneMinusInverse,
}

const TRANSFORMS: [Transform; 6] = [
    Transform::Identity,
    Transform::Pfaff,
    Transform::Inverse,
    Transform::InverseOneMinus,
    Transform::OneMinus,
    Transform::OneMinusInverse,
];

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < NEAR_INTEGER
}

impl Transform {
    fn argument(self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Transform::Identity => z,
            Transform::Pfaff => z / (z - one),
            Transform::Inverse => one / z,
            Transform::InverseOneMinus => one / (one - z),
            Transform::OneMinus => one - z,
            Transform::OneMinusInverse => one - one / z,
        }
    }

    fn is_degenerate(self, a: f64, b: f64, c: f64) -> bool {
        match self {
            Transform::Identity | Transform::Pfaff => false,
            Transform::Inverse | Transform::InverseOneMinus => near_integer(a - b),
            Transform::OneMinus | Transform::OneMinusInverse => near_integer(c - a - b),
        }
    }

    fn eval(self, a: f64, b: f64, c: f64, z: Complex64, cfg: &Hyp2F1Config) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let w = self.argument(z);
        // the connection formulas need these exactly antisymmetric
        let e = a - b;
        let d = c - a - b;
        let degenerate = || QftError::Degenerate {
            a,
            b,
            c,
            detail: format!("{self:?} connection coefficient has a gamma pole"),
        };
        let value = match self {
            Transform::Identity => series_sum(a, b, c, z, cfg)?,
            Transform::Pfaff => principal_power(one - z, -a)? * series_sum(a, c - b, c, w, cfg)?,
            Transform::Inverse => {
                let g1 = gamma_ratio(&[c, -e], &[b, c - a]).ok_or_else(degenerate)?;
                let g2 = gamma_ratio(&[c, e], &[a, c - b]).ok_or_else(degenerate)?;
                let mz = -z;
                let mut acc = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    acc += principal_power(mz, -a)?
                        * series_sum(a, a - c + 1.0, 1.0 + e, w, cfg)?
                        * g1;
                }
                if g2 != 0.0 {
                    acc += principal_power(mz, -b)?
                        * series_sum(b, b - c + 1.0, 1.0 - e, w, cfg)?
                        * g2;
                }
                acc
            }
            Transform::InverseOneMinus => {
                let g1 = gamma_ratio(&[c, -e], &[b, c - a]).ok_or_else(degenerate)?;
                let g2 = gamma_ratio(&[c, e], &[a, c - b]).ok_or_else(degenerate)?;
                let omz = one - z;
                let mut acc = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    acc += principal_power(omz, -a)? * series_sum(a, c - b, 1.0 + e, w, cfg)? * g1;
                }
                if g2 != 0.0 {
                    acc += principal_power(omz, -b)? * series_sum(b, c - a, 1.0 - e, w, cfg)? * g2;
                }
                acc
            }
            Transform::OneMinus => {
                let g1 = gamma_ratio(&[c, d], &[c - a, c - b]).ok_or_else(degenerate)?;
                let g2 = gamma_ratio(&[c, -d], &[a, b]).ok_or_else(degenerate)?;
                let mut acc = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    acc += series_sum(a, b, 1.0 - d, w, cfg)? * g1;
                }
                if g2 != 0.0 {
                    acc += principal_power(w, d)? * series_sum(c - a, c - b, 1.0 + d, w, cfg)? * g2;
                }
                acc
            }
            Transform::OneMinusInverse => {
                let g1 = gamma_ratio(&[c, d], &[c - a, c - b]).ok_or_else(degenerate)?;
                let g2 = gamma_ratio(&[c, -d], &[a, b]).ok_or_else(degenerate)?;
                let mut acc = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    acc +=
                        principal_power(z, -a)? * series_sum(a, a - c + 1.0, 1.0 - d, w, cfg)? * g1;
                }
                if g2 != 0.0 {
                    acc += principal_power(one - z, d)?
                        * principal_power(z, a - c)?
                        * series_sum(c - a, 1.0 - a, 1.0 + d, w, cfg)?
                        * g2;
                }
                acc
            }
        };
        ensure_finite(value, "2F1 transformation")
    }
}

enum Route {
    Direct(Transform),
    Degenerate(Transform),
    Continuation,
}

fn choose_route(a: f64, b: f64, c: f64, z: Complex64) -> Route {
    let best = |degenerate: bool| {
        TRANSFORMS
            .iter()
            .filter(|t| t.is_degenerate(a, b, c) == degenerate)
            .map(|&t| (t, t.argument(z).norm()))
            .filter(|(_, m)| m.is_finite())
            .min_by(|x, y| x.1.total_cmp(&y.1))
    };
    match best(false) {
        Some((t, m)) if m <= ACCEPT_MODULUS => return Route::Direct(t),
        _ => {}
    }
    match best(true) {
        Some((t, m)) if m <= ACCEPT_MODULUS => Route::Degenerate(t),
        _ => Route::Continuation,
    }
}

/// Symmetric perturbation of `b`, Richardson-combined to fourth order.
fn perturbed(
    t: Transform,
    a: f64,
    b: f64,
    c: f64,
    z: Complex64,
    cfg: &Hyp2F1Config,
) -> Result<Complex64> {
    let h = PERTURBATION;
    let sym = |h: f64| -> Result<Complex64> {
        Ok((t.eval(a, b + h, c, z, cfg)? + t.eval(a, b - h, c, z, cfg)?) * 0.5)
    };
    let f1 = sym(h)?;
    let f2 = sym(2.0 * h)?;
    Ok((f1 * 4.0 - f2) / 3.0)
}

/// One Taylor step of the hypergeometric ODE from `z0` to `z0 + h`.
fn taylor_step(
    a: f64,
    b: f64,
    c: f64,
    z0: Complex64,
    w: Complex64,
    dw: Complex64,
    h: Complex64,
) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let p0 = z0 * (one - z0);
    let p1 = one - z0 * 2.0;
    let q0 = Complex64::new(c, 0.0) - z0 * (a + b + 1.0);
    // d_n = c_n h^n
    let mut d_prev = w;
    let mut d_cur = dw * h;
    let mut value = d_prev + d_cur;
    let mut deriv = d_cur;
    let mut small = 0;
    for n in 0..TAYLOR_MAX_TERMS {
        let nf = n as f64;
        let d_next = (d_prev * ((nf + a) * (nf + b)) * h * h
            - (p1 * nf + q0) * (nf + 1.0) * d_cur * h)
            / (p0 * ((nf + 1.0) * (nf + 2.0)));
        value += d_next;
        deriv += d_next * (nf + 2.0);
        if d_next.norm() <= 1e-17 * value.norm() {
            small += 1;
            if small == 2 {
                return Ok((value, deriv / h));
            }
        } else {
            small = 0;
        }
        d_prev = d_cur;
        d_cur = d_next;
    }
    Err(QftError::Convergence {
        terms: TAYLOR_MAX_TERMS,
        last_term: d_cur.norm(),
        sum: value,
    })
}

/// Analytic continuation along the ray from `0.5 z/|z|` to `z`.
fn continuation(a: f64, b: f64, c: f64, z: Complex64, cfg: &Hyp2F1Config) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut zc = z * (0.5 / z.norm());
    let mut w = series_sum(a, b, c, zc, cfg)?;
    let mut dw = series_sum(a + 1.0, b + 1.0, c + 1.0, zc, cfg)? * (a * b / c);
    loop {
        let remaining = z - zc;
        let dist = remaining.norm();
        if dist == 0.0 {
            break;
        }
        let max_step = 0.5 * zc.norm().min((one - zc).norm());
        let (h, last) = if dist <= max_step {
            (remaining, true)
        } else {
            (remaining * (max_step / dist), false)
        };
        (w, dw) = taylor_step(a, b, c, zc, w, dw, h)?;
        zc = if last { z } else { zc + h };
    }
    ensure_finite(w, "2F1 continuation")
}

/// `2F1(a, b; c; z)` for `z` off the cut `[1, inf)`.
pub fn hyp2f1(p: &Hyp2F1Params) -> Result<Complex64> {
    hyp2f1_with(p, &Hyp2F1Config::default())
}

pub fn hyp2f1_with(p: &Hyp2F1Params, cfg: &Hyp2F1Config) -> Result<Complex64> {
    let Hyp2F1Params { a, b, c, z } = *p;
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if p.is_polynomial() {
        // terminating series, no cut
        return series_sum(a, b, c, z, cfg);
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(QftError::domain(format!(
            "z = {} lies on the branch cut [1, inf); use hyp2f1_boundary",
            z.re
        )));
    }
    match choose_route(a, b, c, z) {
        Route::Direct(t) => t.eval(a, b, c, z, cfg),
        Route::Degenerate(t) => match cfg.degenerate {
            DegenerateStrategy::Reject => Err(QftError::Degenerate {
                a,
                b,
                c,
                detail: format!("{t:?} transformation needs the logarithmic case"),
            }),
            DegenerateStrategy::Perturb => {
                continuation(a, b, c, z, cfg).or_else(|_| perturbed(t, a, b, c, z, cfg))
            }
        },
        Route::Continuation => continuation(a, b, c, z, cfg),
    }
}

/// One-sided value `lim_{eps -> 0+} 2F1(a, b; c; z + i eps)`.
///
/// Works for any `z`, including the cut; off the cut it reproduces
/// [`hyp2f1`].
pub fn hyp2f1_boundary(p: &Hyp2F1Params, policy: &BoundaryPolicy) -> Result<BoundaryValue> {
    hyp2f1_boundary_with(p, policy, &Hyp2F1Config::default())
}

pub fn hyp2f1_boundary_with(
    p: &Hyp2F1Params,
    policy: &BoundaryPolicy,
    cfg: &Hyp2F1Config,
) -> Result<BoundaryValue> {
    let values = policy
        .eps_sequence
        .iter()
        .map(|&eps| hyp2f1_with(&p.with_z(p.z + Complex64::new(0.0, eps)), cfg))
        .collect::<Result<Vec<_>>>()?;
    let extrapolation =
        richardson_to_zero(&policy.eps_sequence, &values, policy.extrapolation_order);
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let limit = policy.tolerance * scale.max(f64::MIN_POSITIVE);
    if extrapolation.error > limit {
        return Err(QftError::BoundaryConvergence {
            residual: extrapolation.error,
            tolerance: limit,
        });
    }
    Ok(BoundaryValue {
        value: extrapolation.value,
        error: extrapolation.error,
        extrapolation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// -ln(1 - z)/z, the closed form of 2F1(1, 1; 2; z).
    fn log_oracle(z: Complex64) -> Complex64 {
        -(c(1.0, 0.0) - z).ln() / z
    }

    #[test]
    fn series_examples() {
        let p = Hyp2F1Params::real(0.3, -1.7, 2.2, 0.0).unwrap();
        assert_eq!(hyp2f1_series(&p).unwrap(), c(1.0, 0.0));

        let p = Hyp2F1Params::real(1.0, 1.0, 2.0, 0.5).unwrap();
        let v = hyp2f1_series(&p).unwrap();
        assert_relative_eq!(v.re, 2.0 * 2f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(v.re, 1.386294, epsilon = 1e-6);

        let p = Hyp2F1Params::real(-2.0, 1.5, 1.5, -0.3).unwrap();
        assert_relative_eq!(hyp2f1_series(&p).unwrap().re, 1.69, max_relative = 1e-15);
    }

    #[test]
    fn series_rejects_outside_disk() {
        let p = Hyp2F1Params::real(1.0, 1.0, 2.0, 0.97).unwrap();
        assert!(matches!(hyp2f1_series(&p), Err(QftError::Domain(_))));
    }

    #[test]
    fn series_reports_nonconvergence() {
        let p = Hyp2F1Params::real(1.0, 1.0, 2.0, 0.94).unwrap();
        let cfg = Hyp2F1Config {
            max_terms: 10,
            ..Hyp2F1Config::default()
        };
        assert!(matches!(
            hyp2f1_series_with(&p, &cfg),
            Err(QftError::Convergence { terms: 10, .. })
        ));
    }

    #[test]
    fn construction_rejects_pole_parameters() {
        assert!(Hyp2F1Params::real(1.0, 1.0, -3.0, 0.2).is_err());
        assert!(Hyp2F1Params::real(1.0, 1.0, 0.0, 0.2).is_err());
        assert!(Hyp2F1Params::real(f64::NAN, 1.0, 2.0, 0.2).is_err());
    }

    #[test]
    fn general_examples() {
        let p = Hyp2F1Params::real(0.5, 0.5, 1.5, 0.0).unwrap();
        assert_eq!(hyp2f1(&p).unwrap(), c(1.0, 0.0));
        let p = Hyp2F1Params::real(-2.0, 1.5, 1.5, -4.0).unwrap();
        assert_relative_eq!(hyp2f1(&p).unwrap().re, 25.0, max_relative = 1e-15);
        let p = Hyp2F1Params::real(1.0, 1.0, 2.0, -3.0).unwrap();
        let v = hyp2f1(&p).unwrap();
        assert_relative_eq!(v.re, 4f64.ln() / 3.0, max_relative = 1e-13);
        assert_relative_eq!(v.re, 0.462098, epsilon = 1e-6);
    }

    #[test]
    fn cut_is_rejected() {
        let p = Hyp2F1Params::real(0.5, 1.0, 1.5, 2.0).unwrap();
        assert!(matches!(hyp2f1(&p), Err(QftError::Domain(_))));
    }

    #[test]
    fn log_closed_form_over_the_plane() {
        // (1, 1; 2) has a - b = 0 and c - a - b = 0: every connection formula
        // is degenerate, so this exercises perturbation and continuation.
        let points = [
            c(-3.0, 0.0),
            c(-0.9, 0.1),
            c(0.5, 0.866),
            c(0.5, -0.866),
            c(0.9, 0.45),
            c(2.0, 0.5),
            c(3.0, -4.0),
            c(-20.0, 35.0),
            c(0.0, 7.0),
            c(1.2, 1e-3),
        ];
        for z in points {
            let p = Hyp2F1Params::new(1.0, 1.0, 2.0, z).unwrap();
            let v = hyp2f1(&p).unwrap();
            let exact = log_oracle(z);
            assert!(
                (v - exact).norm() < 1e-10 * exact.norm(),
                "z = {z}: {v} vs {exact}"
            );
        }
    }

    #[test]
    fn reject_strategy_surfaces_degeneracy() {
        let cfg = Hyp2F1Config {
            degenerate: DegenerateStrategy::Reject,
            ..Hyp2F1Config::default()
        };
        let p = Hyp2F1Params::real(1.0, 1.0, 2.0, -10.0).unwrap();
        assert!(matches!(
            hyp2f1_with(&p, &cfg),
            Err(QftError::Degenerate { .. })
        ));
    }

    #[test]
    fn arctanh_closed_form() {
        // 2F1(1/2, 1; 3/2; z) = artanh(sqrt z)/sqrt z
        for z in [c(-5.0, 0.0), c(0.3, 2.0), c(-0.4, -1.1), c(4.0, 3.0)] {
            let p = Hyp2F1Params::new(0.5, 1.0, 1.5, z).unwrap();
            let s = z.sqrt();
            let exact = s.atanh() / s;
            let v = hyp2f1(&p).unwrap();
            assert!((v - exact).norm() < 1e-12 * exact.norm(), "z = {z}");
        }
    }

    #[test]
    fn continuation_zone_matches_slow_series() {
        // e^{i pi/3} region: no transformation shrinks |z| below ~1.
        let z = c(0.5, 0.8);
        let p = Hyp2F1Params::new(0.3, 0.7, 2.9, z).unwrap();
        let v = hyp2f1(&p).unwrap();
        let slow = series_sum(0.3, 0.7, 2.9, z, &Hyp2F1Config::default()).unwrap();
        assert!((v - slow).norm() < 1e-12 * slow.norm());
    }

    #[test]
    fn boundary_examples() {
        let policy = BoundaryPolicy::default();

        let p = Hyp2F1Params::new(0.7, 1.3, 2.1, c(0.3, -0.2)).unwrap();
        let b = hyp2f1_boundary(&p, &policy).unwrap();
        assert!((b.value - hyp2f1(&p).unwrap()).norm() < 1e-10);

        for x in [-3.0, 0.5, 1.0, 2.0, 7.5] {
            let p = Hyp2F1Params::real(-2.0, 1.5, 1.5, x).unwrap();
            let b = hyp2f1_boundary(&p, &policy).unwrap();
            let exact = (1.0 - x) * (1.0 - x);
            assert!((b.value - c(exact, 0.0)).norm() < 1e-10 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn boundary_upper_side_of_cut() {
        // artanh(sqrt 2 + i0)/sqrt 2 = (ln(1 + sqrt 2) + i pi/2)/sqrt 2
        let p = Hyp2F1Params::real(0.5, 1.0, 1.5, 2.0).unwrap();
        let b = hyp2f1_boundary(&p, &BoundaryPolicy::default()).unwrap();
        let s2 = 2f64.sqrt();
        assert_relative_eq!(b.value.re, (1.0 + s2).ln() / s2, max_relative = 1e-9);
        assert_relative_eq!(
            b.value.im,
            std::f64::consts::FRAC_PI_2 / s2,
            max_relative = 1e-9
        );
        assert!(b.value.im > 0.0);
    }

    #[test]
    fn boundary_policy_validation() {
        assert!(BoundaryPolicy::new(vec![1e-3], 2).is_err());
        assert!(BoundaryPolicy::new(vec![1e-3, 1e-2], 2).is_err());
        assert!(BoundaryPolicy::new(vec![1e-3, -1e-4], 2).is_err());
        assert!(BoundaryPolicy::new(vec![1e-3, 1e-4], 0).is_err());
    }
}
