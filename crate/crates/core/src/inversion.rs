//! Recovering `f` from the `q -> 1+` row of its transform.
//!
//! ```text
//! f(x) = (1/2pi) integral [lim_{eps->0+} integral F(k,q) delta(q-1-eps) dq] e^(-ikx) dk
//! ```
//!
//! The `q` integral against `delta(q - 1 - eps)` is just `F(k, 1 + eps)`, so the
//! inner bracket is the limit of that as `eps -> 0+`. No delta kernel is ever
//! discretized.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::engine::{qft_point, validate_grid, TransformOptions};
use crate::error::{QftError, Result};
use crate::extrapolate::{richardson_to_zero, Extrapolation};
use crate::function::FunctionSpec;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SliceOptions {
    /// Strictly decreasing, positive, with `1 + eps[0] < 2`.
    pub eps_sequence: Vec<f64>,
    pub extrapolation_order: usize,
    /// Allowed extrapolation residual, relative to `max_k |F|`.
    pub tolerance: f64,
    pub transform: TransformOptions,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions {
            eps_sequence: vec![1e-4, 1e-5, 1e-6, 1e-7],
            extrapolation_order: 2,
            tolerance: 1e-6,
            transform: TransformOptions::default(),
        }
    }
}

impl SliceOptions {
    pub fn with_eps(mut self, eps_sequence: Vec<f64>) -> Self {
        self.eps_sequence = eps_sequence;
        self
    }

    fn validate(&self) -> Result<()> {
        let eps = &self.eps_sequence;
        if eps.is_empty() {
            return Err(QftError::invalid("eps sequence is empty"));
        }
        if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(QftError::invalid("eps values must be finite and > 0"));
        }
        if eps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(QftError::invalid("eps sequence must strictly decrease"));
        }
        if !(1.0 + eps[0] < 2.0) {
            return Err(QftError::invalid(format!(
                "1 + eps = {} is not below 2",
                1.0 + eps[0]
            )));
        }
        if self.extrapolation_order == 0 {
            return Err(QftError::invalid("extrapolation order must be >= 1"));
        }
        Ok(())
    }
}

/// The extrapolated `q -> 1+` row.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SliceSample {
    pub k_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Extrapolation residual per `k`.
    pub residuals: Vec<f64>,
    pub eps_sequence: Vec<f64>,
    /// `samples[j][i] = F(k_i, 1 + eps_j)`.
    pub samples: Vec<Vec<Complex64>>,
    /// A single `eps` was given; values are unextrapolated.
    pub low_confidence: bool,
}

impl SliceSample {
    /// Build a slice from known values, e.g. an analytic transform.
    pub fn from_values(k_grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        validate_grid("k", &k_grid)?;
        if k_grid.len() != values.len() {
            return Err(QftError::invalid(
                "slice k grid and values differ in length",
            ));
        }
        let n = k_grid.len();
        Ok(SliceSample {
            k_grid,
            values,
            residuals: vec![0.0; n],
            eps_sequence: Vec::new(),
            samples: Vec::new(),
            low_confidence: false,
        })
    }

    /// Largest `|F(-k) - conj F(k)|`, or `None` for an asymmetric grid.
    pub fn hermitian_defect(&self) -> Option<f64> {
        let n = self.k_grid.len();
        let symmetric = (0..n).all(|i| {
            let (a, b) = (self.k_grid[i], self.k_grid[n - 1 - i]);
            (a + b).abs() <= 1e-12 * a.abs().max(1.0)
        });
        symmetric.then(|| {
            (0..n)
                .map(|i| (self.values[n - 1 - i] - self.values[i].conj()).norm())
                .fold(0.0, f64::max)
        })
    }
}

/// `lim_{eps -> 0+} F(k, 1 + eps)` on `k_grid`, by Richardson extrapolation
/// over `opts.eps_sequence`.
pub fn q1_slice(f: &FunctionSpec, k_grid: &[f64], opts: &SliceOptions) -> Result<SliceSample> {
    validate_grid("k", k_grid)?;
    opts.validate()?;
    let eps = &opts.eps_sequence;
    let nk = k_grid.len();
    let flat: Vec<Complex64> = (0..eps.len() * nk)
        .into_par_iter()
        .map(|i| {
            let (q, k) = (1.0 + eps[i / nk], k_grid[i % nk]);
            qft_point(f, q, k, &opts.transform)
                .map(|v| v.value)
                .map_err(|e| QftError::SurfaceNode {
                    q,
                    k,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;
    let samples: Vec<Vec<Complex64>> = flat.chunks(nk).map(<[_]>::to_vec).collect();

    let extrapolations: Vec<Extrapolation> = (0..nk)
        .map(|i| {
            let column: Vec<Complex64> = samples.iter().map(|row| row[i]).collect();
            richardson_to_zero(eps, &column, opts.extrapolation_order)
        })
        .collect();
    let scale = extrapolations
        .iter()
        .map(|e| e.value.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let limit = opts.tolerance * scale;
    if let Some((i, e)) = extrapolations
        .iter()
        .enumerate()
        .find(|(_, e)| e.error > limit)
    {
        return Err(QftError::Slice {
            k: k_grid[i],
            residual: e.error,
            tolerance: limit,
        });
    }
    Ok(SliceSample {
        k_grid: k_grid.to_vec(),
        values: extrapolations.iter().map(|e| e.value).collect(),
        residuals: extrapolations.iter().map(|e| e.error).collect(),
        eps_sequence: eps.clone(),
        samples,
        low_confidence: eps.len() == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct InverseOptions {
    /// Largest allowed `|F|` at the k-grid edges, relative to `max |F|`.
    pub edge_threshold: f64,
}

impl Default for InverseOptions {
    fn default() -> Self {
        InverseOptions {
            edge_threshold: 1e-3,
        }
    }
}

/// `f` sampled on `x_grid`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Reconstruction {
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Discarded imaginary part per `x`.
    pub imaginary: Vec<f64>,
    /// Per-`x` estimate: `|imaginary|` plus the propagated slice residuals.
    pub errors: Vec<f64>,
    /// Edge magnitude of the slice relative to its peak.
    pub edge_ratio: f64,
}

impl Reconstruction {
    pub fn max_imaginary(&self) -> f64 {
        self.imaginary.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn trapezoid_weights(k: &[f64]) -> Vec<f64> {
    let n = k.len();
    (0..n)
        .map(|j| {
            let left = if j > 0 { k[j] - k[j - 1] } else { 0.0 };
            let right = if j + 1 < n { k[j + 1] - k[j] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// `(1/2pi) integral F(k) e^(-ikx) dk` over the slice's k range, by the
/// composite trapezoid rule on its grid.
pub fn inverse_transform(
    s: &SliceSample,
    x_grid: &[f64],
    opts: &InverseOptions,
) -> Result<Reconstruction> {
    validate_grid("x", x_grid)?;
    let n = s.k_grid.len();
    let peak = s.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge = s.values[0].norm().max(s.values[n - 1].norm());
    let edge_ratio = if peak > 0.0 { edge / peak } else { 0.0 };
    if edge_ratio > opts.edge_threshold {
        return Err(QftError::Truncation {
            edge_ratio,
            threshold: opts.edge_threshold,
        });
    }
    let w = trapezoid_weights(&s.k_grid);
    let residual_term: f64 =
        w.iter().zip(&s.residuals).map(|(w, r)| w * r).sum::<f64>() / std::f64::consts::TAU;
    let sums: Vec<Complex64> = x_grid
        .par_iter()
        .map(|&x| {
            let acc: Complex64 = (s.values.iter().zip(&w).zip(&s.k_grid))
                .map(|((v, w), k)| v * Complex64::from_polar(*w, -k * x))
                .sum();
            acc / std::f64::consts::TAU
        })
        .collect();
    Ok(Reconstruction {
        x_grid: x_grid.to_vec(),
        values: sums.iter().map(|v| v.re).collect(),
        imaginary: sums.iter().map(|v| v.im).collect(),
        errors: sums.iter().map(|v| v.im.abs() + residual_term).collect(),
        edge_ratio,
    })
}

/// `||a - b|| / ||reference||` in the discrete 2-norm.
pub fn relative_l2(a: &[f64], b: &[f64], reference: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() != reference.len() {
        return Err(QftError::invalid("sample vectors differ in length"));
    }
    let norm = reference.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(QftError::invalid("reference samples are identically zero"));
    }
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    Ok(diff / norm)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RoundTrip {
    /// Relative L2 distance between `f` and its reconstruction on `x_grid`.
    pub error: f64,
    pub original: Vec<f64>,
    pub reconstruction: Reconstruction,
}

/// Transform, extrapolate to `q -> 1+`, invert, and compare with `f`.
pub fn roundtrip(
    f: &FunctionSpec,
    k_grid: &[f64],
    x_grid: &[f64],
    slice: &SliceOptions,
    inverse: &InverseOptions,
) -> Result<RoundTrip> {
    let s = q1_slice(f, k_grid, slice)?;
    let reconstruction = inverse_transform(&s, x_grid, inverse)?;
    let original: Vec<f64> = x_grid.iter().map(|&x| f.value(x)).collect();
    let error = relative_l2(&reconstruction.values, &original, &original)?;
    Ok(RoundTrip {
        error,
        original,
        reconstruction,
    })
}

pub fn roundtrip_error(
    f: &FunctionSpec,
    k_grid: &[f64],
    x_grid: &[f64],
    slice: &SliceOptions,
    inverse: &InverseOptions,
) -> Result<f64> {
    roundtrip(f, k_grid, x_grid, slice, inverse).map(|r| r.error)
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let m = (n - 1) as f64;
            // weighted form keeps the endpoints exact and symmetric grids symmetric
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    _ if i == n - 1 => hi,
                    _ => (lo * (m - i as f64) + hi * i as f64) / m,
                })
                .collect()
        }
    }
}

/// `-half_width ..= half_width` in steps of `half_width / n`, exactly symmetric.
pub fn symmetric_grid(half_width: f64, n: usize) -> Vec<f64> {
    let step = half_width / n as f64;
    let n = n as i64;
    (-n..=n).map(|i| i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn indicator() -> FunctionSpec {
        FunctionSpec::indicator(0.0, 1.0).unwrap()
    }

    fn classical_indicator(k: f64) -> Complex64 {
        if k == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            (Complex64::new(0.0, k).exp() - 1.0) / Complex64::new(0.0, k)
        }
    }

    #[test]
    fn grids() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
        let q = linspace(1.1, 1.7, 7);
        assert_eq!(q[4], 1.5);
        let k = linspace(-5.0, 5.0, 101);
        assert!(k.iter().zip(k.iter().rev()).all(|(a, b)| *a == -b));
        assert_eq!(k[50], 0.0);
        let g = symmetric_grid(10.0, 200);
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], -10.0);
        assert_eq!(g[200], 0.0);
        assert!(g.iter().zip(g.iter().rev()).all(|(a, b)| *a == -b));
    }

    #[test]
    fn slice_matches_classical_transform() {
        let k = symmetric_grid(10.0, 20);
        let s = q1_slice(&indicator(), &k, &SliceOptions::default()).unwrap();
        for (k, v) in s.k_grid.iter().zip(&s.values) {
            assert!((v - classical_indicator(*k)).norm() < 1e-6, "k={k}: {v}");
        }
        assert_relative_eq!(s.values[20].re, 1.0, max_relative = 1e-9);
        assert!(s.samples.iter().all(|row| (row[20].re - 1.0).abs() < 1e-9));
        assert!(!s.low_confidence);
        assert!(s.hermitian_defect().unwrap() < 1e-9);
    }

    #[test]
    fn single_eps_is_low_confidence() {
        let opts = SliceOptions::default().with_eps(vec![1e-2]);
        let s = q1_slice(&indicator(), &[0.5, 1.0], &opts).unwrap();
        assert!(s.low_confidence);
        let direct = qft_point(&indicator(), 1.0 + 1e-2, 1.0, &opts.transform).unwrap();
        assert_eq!(s.values[1], direct.value);
    }

    #[test]
    fn slice_rejects_bad_eps() {
        let f = indicator();
        for eps in [vec![], vec![1e-2, 1e-1], vec![1.5], vec![-1e-3]] {
            assert!(q1_slice(&f, &[0.0], &SliceOptions::default().with_eps(eps)).is_err());
        }
    }

    #[test]
    fn slice_error_names_k() {
        // coarse eps cannot resolve the q -> 1 limit at large k
        let opts = SliceOptions {
            tolerance: 1e-12,
            ..SliceOptions::default().with_eps(vec![0.3, 0.2, 0.1])
        };
        match q1_slice(&indicator(), &[0.0, 30.0], &opts) {
            Err(QftError::Slice { k, .. }) => assert_eq!(k, 30.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_slice_inverts_to_zero() {
        let s = SliceSample::from_values(vec![-1.0, 0.0, 1.0], vec![Complex64::new(0.0, 0.0); 3])
            .unwrap();
        let r = inverse_transform(&s, &[0.0, 0.5], &InverseOptions::default()).unwrap();
        assert_eq!(r.values, vec![0.0, 0.0]);
        assert_eq!(r.max_imaginary(), 0.0);
    }

    #[test]
    fn broken_symmetry_shows_in_error() {
        let k = symmetric_grid(40.0, 400);
        let values: Vec<Complex64> = k
            .iter()
            .map(|&k| {
                Complex64::new(
                    (-k * k).exp(),
                    if k > 0.0 { 0.1 * (-k * k).exp() } else { 0.0 },
                )
            })
            .collect();
        let s = SliceSample::from_values(k, values).unwrap();
        assert!(s.hermitian_defect().unwrap() > 1e-2);
        let r = inverse_transform(&s, &[0.0, 0.3], &InverseOptions::default()).unwrap();
        assert!(r.max_imaginary() > 1e-3);
        assert!(r
            .errors
            .iter()
            .zip(&r.imaginary)
            .all(|(e, i)| *e >= i.abs()));
    }

    #[test]
    fn gaussian_round_trip_is_accurate() {
        // exp(-k^2/2) <-> exp(-x^2/2)/sqrt(2 pi)
        let k = symmetric_grid(12.0, 480);
        let values = k
            .iter()
            .map(|&k| Complex64::new((-0.5 * k * k).exp(), 0.0))
            .collect();
        let s = SliceSample::from_values(k, values).unwrap();
        let x = linspace(-3.0, 3.0, 61);
        let r = inverse_transform(&s, &x, &InverseOptions::default()).unwrap();
        for (x, v) in x.iter().zip(&r.values) {
            let exact = (-0.5 * x * x).exp() / std::f64::consts::TAU.sqrt();
            assert!((v - exact).abs() < 1e-12, "x={x}");
        }
        assert!(r.max_imaginary() < 1e-14);
    }

    #[test]
    fn truncation_is_detected() {
        let k = symmetric_grid(10.0, 200);
        let values = k.iter().map(|&k| classical_indicator(k)).collect();
        let s = SliceSample::from_values(k, values).unwrap();
        assert!(matches!(
            inverse_transform(&s, &[0.5], &InverseOptions::default()),
            Err(QftError::Truncation { .. })
        ));
    }

    #[test]
    fn relative_l2_basics() {
        assert_eq!(
            relative_l2(&[1.0, 1.0], &[1.0, 1.0], &[2.0, 0.0]).unwrap(),
            0.0
        );
        assert_relative_eq!(
            relative_l2(&[3.0, 0.0], &[0.0, 0.0], &[0.0, 1.5]).unwrap(),
            2.0
        );
        assert!(relative_l2(&[1.0], &[1.0], &[0.0]).is_err());
    }
}
