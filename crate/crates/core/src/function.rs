//! Nonnegative, integrable input functions with finite support.

use sha2::{Digest, Sha256};

use crate::error::{QftError, Result};
use crate::hilhorst::PowerLawWindow;
use crate::qcore::{q_gaussian, DeformationIndex};

/// Linearly interpolated samples; zero outside `[xs[0], xs[n-1]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Tabulated {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(QftError::invalid(
                "tabulated abscissae and values differ in length",
            ));
        }
        if xs.len() < 2 {
            return Err(QftError::invalid(
                "tabulated function needs at least 2 samples",
            ));
        }
        if !xs.iter().all(|x| x.is_finite()) || xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(QftError::invalid(
                "tabulated abscissae must be finite and strictly increasing",
            ));
        }
        if !ys.iter().all(|y| y.is_finite() && *y >= 0.0) {
            return Err(QftError::invalid(
                "tabulated values must be finite and nonnegative",
            ));
        }
        Ok(Tabulated { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    fn value(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if !(x >= self.xs[0] && x <= self.xs[n - 1]) {
            return 0.0;
        }
        let i = self.xs.partition_point(|&t| t <= x).clamp(1, n - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        let t = (x - x0) / (x1 - x0);
        y0 + t * (y1 - y0)
    }
}

/// The function `f` being transformed.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// `(lambda/x)^beta` on `[a, b]`.
    PowerLaw(PowerLawWindow),
    /// Unit height on `[lo, hi]`.
    Indicator {
        lo: f64,
        hi: f64,
    },
    /// A q-Gaussian truncated to `[-radius, radius]`.
    QGaussian {
        q: DeformationIndex,
        width: f64,
        radius: f64,
    },
    Tabulated(Tabulated),
}

impl FunctionSpec {
    pub fn indicator(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(QftError::invalid(format!(
                "indicator needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(FunctionSpec::Indicator { lo, hi })
    }

    pub fn q_gaussian(q: f64, width: f64, radius: f64) -> Result<Self> {
        let q = DeformationIndex::new(q)?;
        if !(width.is_finite() && width > 0.0) {
            return Err(QftError::invalid(format!(
                "q-Gaussian width must be > 0, got {width}"
            )));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(QftError::invalid(format!(
                "q-Gaussian radius must be > 0, got {radius}"
            )));
        }
        Ok(FunctionSpec::QGaussian { q, width, radius })
    }

    pub fn tabulated(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        Ok(FunctionSpec::Tabulated(Tabulated::new(xs, ys)?))
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::PowerLaw(w) => w.value(x),
            FunctionSpec::Indicator { lo, hi } => {
                if x >= *lo && x <= *hi {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::QGaussian { q, width, radius } => {
                if x.abs() <= *radius {
                    q_gaussian(x, *q, *width).unwrap_or(0.0)
                } else {
                    0.0
                }
            }
            FunctionSpec::Tabulated(t) => t.value(x),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            FunctionSpec::PowerLaw(w) => (w.a(), w.b()),
            FunctionSpec::Indicator { lo, hi } => (*lo, *hi),
            FunctionSpec::QGaussian { radius, .. } => (-radius, *radius),
            FunctionSpec::Tabulated(t) => (t.xs[0], t.xs[t.xs.len() - 1]),
        }
    }

    /// Points where `f` or its derivative may jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            FunctionSpec::Tabulated(t) => t.xs.clone(),
            FunctionSpec::QGaussian { radius, .. } => vec![-radius, 0.0, *radius],
            _ => {
                let (lo, hi) = self.support();
                vec![lo, hi]
            }
        }
    }

    /// `max f` over the support.
    pub fn peak(&self) -> f64 {
        match self {
            FunctionSpec::PowerLaw(w) => w.value(w.a()).max(w.value(w.b())),
            FunctionSpec::Indicator { .. } | FunctionSpec::QGaussian { .. } => 1.0,
            FunctionSpec::Tabulated(t) => t.ys.iter().copied().fold(0.0, f64::max),
        }
    }

    /// Descriptor in the command-line mini-language.
    pub fn descriptor(&self) -> String {
        match self {
            FunctionSpec::PowerLaw(w) => {
                format!("powerlaw:{},{},{},{}", w.a(), w.b(), w.beta(), w.lambda())
            }
            FunctionSpec::Indicator { lo, hi } => format!("indicator:{lo},{hi}"),
            FunctionSpec::QGaussian { q, width, radius } => {
                format!("qgauss:{},{width},{radius}", q.value())
            }
            FunctionSpec::Tabulated(t) => format!("tabulated:{} samples", t.xs.len()),
        }
    }

    /// SHA-256 over the descriptor and, for tabulated data, the raw samples.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.descriptor().as_bytes());
        if let FunctionSpec::Tabulated(t) = self {
            for (x, y) in t.xs.iter().zip(&t.ys) {
                hasher.update(x.to_le_bytes());
                hasher.update(y.to_le_bytes());
            }
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl From<PowerLawWindow> for FunctionSpec {
    fn from(w: PowerLawWindow) -> Self {
        FunctionSpec::PowerLaw(w)
    }
}
