//! Polynomial (Richardson) extrapolation of sampled limits to `h = 0`.

use num_complex::Complex64;

/// Neville evaluation at zero of the interpolating polynomial through `(h, y)`.
pub(crate) fn neville_at_zero(h: &[f64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(h.len(), y.len());
    let mut p = y.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, him) = (h[i], h[i + m]);
            p[i] = (p[i + 1] * hi - p[i] * him) / (hi - him);
        }
    }
    p[0]
}

/// Result of extrapolating a sequence of samples to `h = 0`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Extrapolation {
    pub value: Complex64,
    /// Difference between the final extrapolant and the one before it.
    pub error: f64,
    /// Extrapolants over successive windows, coarsest first.
    pub windows: Vec<Complex64>,
    /// `|windows[i+1] - windows[i]|`.
    pub window_residuals: Vec<f64>,
    /// Set when a single sample was given and nothing was extrapolated.
    pub low_confidence: bool,
}

/// Extrapolate samples `y(h)` to `h = 0` with polynomials of degree `order`,
/// sliding a window of `order + 1` points toward the finest `h`.
///
/// `h` must be ordered coarse to fine.
pub(crate) fn richardson_to_zero(h: &[f64], y: &[Complex64], order: usize) -> Extrapolation {
    assert_eq!(h.len(), y.len());
    assert!(!h.is_empty());
    let n = h.len();
    if n == 1 {
        return Extrapolation {
            value: y[0],
            error: 0.0,
            windows: vec![y[0]],
            window_residuals: Vec::new(),
            low_confidence: true,
        };
    }
    let width = (order + 1).min(n);
    let windows: Vec<Complex64> = (0..=n - width)
        .map(|s| neville_at_zero(&h[s..s + width], &y[s..s + width]))
        .collect();
    let window_residuals: Vec<f64> = windows.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let value = *windows.last().unwrap();
    let error = match window_residuals.last() {
        Some(&r) => r,
        // one window only: compare against one degree lower on the finest points
        None => {
            let lower = neville_at_zero(&h[n - width + 1..], &y[n - width + 1..]);
            (value - lower).norm()
        }
    };
    Extrapolation {
        value,
        error,
        windows,
        window_residuals,
        low_confidence: false,
    }
}
