//! Deformed elementary functions.
//!
//! All complex powers use the principal branch, `arg` in `(-pi, pi]`. The
//! negative real axis is assigned `arg = pi` regardless of the sign of a zero
//! imaginary part.

use num_complex::Complex64;

use crate::error::{ensure_finite, QftError, Result};

/// The deformation index `q`, restricted to `[1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
#[serde(transparent)]
pub struct DeformationIndex(f64);

impl DeformationIndex {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() {
            return Err(QftError::invalid(format!("q must be finite, got {q}")));
        }
        if !(1.0..2.0).contains(&q) {
            return Err(QftError::domain(format!("q = {q} outside [1, 2)")));
        }
        Ok(DeformationIndex(q))
    }

    pub const CLASSICAL: DeformationIndex = DeformationIndex(1.0);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `q - 1`.
    #[inline]
    pub fn excess(self) -> f64 {
        self.0 - 1.0
    }

    /// `q = 1`: the undeformed limit.
    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for DeformationIndex {
    type Error = QftError;

    fn try_from(q: f64) -> Result<Self> {
        DeformationIndex::new(q)
    }
}

/// `H(q - 1) - H(q - 2)` with `H(0) = 1`.
pub fn heaviside_gate(q: f64) -> Result<u8> {
    if !q.is_finite() {
        return Err(QftError::invalid(format!("q must be finite, got {q}")));
    }
    Ok(u8::from((1.0..2.0).contains(&q)))
}

/// Principal logarithm with the negative real axis mapped to `arg = pi`.
pub(crate) fn principal_ln(z: Complex64) -> Complex64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    Complex64::new(z.norm().ln(), im.atan2(z.re))
}

/// `Log(1 + w)`, accurate when `|w|` is small.
pub(crate) fn ln_1p(w: Complex64) -> Complex64 {
    let x = 1.0 + w.re;
    let re = if w.norm_sqr() < 0.25 {
        0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p()
    } else {
        Complex64::new(x, w.im).norm().ln()
    };
    let im = if w.im == 0.0 { 0.0 } else { w.im };
    Complex64::new(re, im.atan2(x))
}

/// `base^p = exp(p Log base)` on the principal branch.
pub fn principal_power(base: Complex64, p: f64) -> Result<Complex64> {
    if !(base.re.is_finite() && base.im.is_finite() && p.is_finite()) {
        return Err(QftError::invalid("non-finite argument to principal_power"));
    }
    if base.re == 0.0 && base.im == 0.0 {
        return match p {
            p if p > 0.0 => Ok(Complex64::new(0.0, 0.0)),
            0.0 => Ok(Complex64::new(1.0, 0.0)),
            _ => Err(QftError::Pole { z: base }),
        };
    }
    if base.im == 0.0 && base.re > 0.0 {
        return ensure_finite(Complex64::new(base.re.powf(p), 0.0), "principal_power");
    }
    ensure_finite((principal_ln(base) * p).exp(), "principal_power")
}

/// `e_q(z) = [1 + (1 - q) z]^{1/(1-q)}`, and `exp(z)` at `q = 1`.
pub fn q_exponential(z: Complex64, q: DeformationIndex) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(QftError::invalid("non-finite argument to q_exponential"));
    }
    if q.is_classical() {
        return ensure_finite(z.exp(), "q_exponential");
    }
    let one_minus_q = 1.0 - q.value();
    let w = z * one_minus_q;
    if w.re == -1.0 && w.im == 0.0 {
        return Err(QftError::Pole { z });
    }
    ensure_finite((ln_1p(w) / one_minus_q).exp(), "q_exponential")
}

/// `ln_q(x) = (x^{1-q} - 1)/(1 - q)`, `ln x` at `q = 1`.
pub fn q_logarithm(x: f64, q: DeformationIndex) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(QftError::domain(format!(
            "q-logarithm needs x > 0, got {x}"
        )));
    }
    if q.is_classical() {
        return Ok(x.ln());
    }
    let one_minus_q = 1.0 - q.value();
    Ok((one_minus_q * x.ln()).exp_m1() / one_minus_q)
}

/// `max(0, e_q(-width x^2))`, a Gaussian at `q = 1`.
pub fn q_gaussian(x: f64, q: DeformationIndex, width: f64) -> Result<f64> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(QftError::invalid(format!(
            "q-Gaussian width must be > 0, got {width}"
        )));
    }
    if !x.is_finite() {
        return Err(QftError::invalid("q-Gaussian abscissa must be finite"));
    }
    let arg = -width * x * x;
    if q.is_classical() {
        return Ok(arg.exp());
    }
    let one_minus_q = 1.0 - q.value();
    let w = one_minus_q * arg;
    if w <= -1.0 {
        return Ok(0.0);
    }
    Ok((w.ln_1p() / one_minus_q).exp())
}
