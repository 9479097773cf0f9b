//! Adaptive 21-point Gauss–Kronrod quadrature for complex-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Interval, QftError, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// 10-point Gauss weights at XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_9,
];

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Bisections allowed beyond the initial panels.
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_subdivisions: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    /// Error is at the roundoff floor; splitting will not help.
    settled: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn gauss_kronrod<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut fv = [Complex64::new(0.0, 0.0); 21];
    fv[10] = f(center)?;
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[j] = f(center - dx)?;
        fv[20 - j] = f(center + dx)?;
    }
    let mut kronrod = fv[10] * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut resabs = fv[10].norm() * WGK[10];
    for j in 0..10 {
        let pair = fv[j] + fv[20 - j];
        kronrod += pair * WGK[j];
        resabs += WGK[j] * (fv[j].norm() + fv[20 - j].norm());
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[10] * (fv[10] - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv[j] - mean).norm() + (fv[20 - j] - mean).norm());
    }
    let scale = half.abs();
    let raw = ((kronrod - gauss) * half).norm();
    let floor = 50.0 * f64::EPSILON * resabs * scale;
    let error = rescale_error(raw, resabs * scale, resasc * scale);
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error,
        settled: error <= floor || half.abs() <= 1e-14 * lo.abs().max(hi.abs()),
    })
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`, starting from the
/// panels delimited by `breakpoints` (sorted, at least two values).
pub fn integrate<F>(mut f: F, breakpoints: &[f64], opts: &QuadOptions) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if breakpoints.len() < 2 {
        return Err(QftError::invalid(
            "quadrature needs at least two breakpoints",
        ));
    }
    if breakpoints.windows(2).any(|w| !(w[0] < w[1])) || !breakpoints.iter().all(|x| x.is_finite())
    {
        return Err(QftError::invalid(
            "quadrature breakpoints must be finite and increasing",
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        let panel = gauss_kronrod(&mut f, w[0], w[1])?;
        evaluations += 21;
        if panel.settled {
            settled.push(panel);
        } else {
            heap.push(panel);
        }
    }
    let totals = |heap: &BinaryHeap<Panel>, settled: &[Panel]| {
        heap.iter()
            .chain(settled.iter())
            .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
                (v + p.value, e + p.error)
            })
    };
    let mut subdivisions = 0;
    loop {
        let (value, error) = totals(&heap, &settled);
        let target = opts.abs_tol.max(opts.rel_tol * value.norm());
        if error <= target || heap.is_empty() {
            break;
        }
        if subdivisions >= opts.max_subdivisions {
            let worst = heap.peek().expect("nonempty heap");
            return Err(QftError::Quadrature {
                error,
                target,
                subdivisions,
                worst: Interval {
                    lo: worst.lo,
                    hi: worst.hi,
                },
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let panel = gauss_kronrod(&mut f, lo, hi)?;
            evaluations += 21;
            if panel.settled {
                settled.push(panel);
            } else {
                heap.push(panel);
            }
        }
        subdivisions += 1;
    }
    // sum in abscissa order so the result does not depend on heap layout
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(settled);
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let (value, error) = panels
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
            (v + p.value, e + p.error)
        });
    Ok(QuadEstimate {
        value,
        error,
        subdivisions,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl FnMut(f64) -> Result<Complex64> {
        move |x| Ok(Complex64::new(f(x), 0.0))
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(
            real(|x| x.powi(7) - 3.0 * x * x),
            &[0.0, 2.0],
            &QuadOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(r.value.re, 32.0 - 8.0, max_relative = 1e-14);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn oscillatory_exponential() {
        let k = 40.0;
        let r = integrate(
            |x: f64| Ok(Complex64::new(0.0, k * x).exp()),
            &[0.0, 1.0],
            &QuadOptions {
                rel_tol: 1e-12,
                ..QuadOptions::default()
            },
        )
        .unwrap();
        let exact = (Complex64::new(0.0, k).exp() - 1.0) / Complex64::new(0.0, k);
        assert!((r.value - exact).norm() < 1e-12);
        assert!(r.error < 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let r = integrate(
            real(|x: f64| 1.0 / x.sqrt()),
            &[0.0, 1.0],
            &QuadOptions {
                rel_tol: 1e-10,
                ..QuadOptions::default()
            },
        )
        .unwrap();
        assert_relative_eq!(r.value.re, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn reports_worst_interval_on_failure() {
        let err = integrate(
            real(|x: f64| (1.0 / x).sin() / x),
            &[1e-6, 1.0],
            &QuadOptions {
                rel_tol: 1e-14,
                abs_tol: 0.0,
                max_subdivisions: 5,
            },
        )
        .unwrap_err();
        match err {
            QftError::Quadrature {
                worst,
                subdivisions,
                ..
            } => {
                assert_eq!(subdivisions, 5);
                assert!(worst.lo >= 1e-6 && worst.hi <= 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = integrate(
            |_x: f64| -> Result<Complex64> { Err(QftError::NonFinite("test")) },
            &[0.0, 1.0],
            &QuadOptions::default(),
        );
        assert!(matches!(r, Err(QftError::NonFinite(_))));
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(integrate(real(|x| x), &[1.0], &QuadOptions::default()).is_err());
        assert!(integrate(real(|x| x), &[1.0, 0.0], &QuadOptions::default()).is_err());
    }
}
