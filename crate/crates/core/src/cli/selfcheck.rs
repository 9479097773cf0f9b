//! The invariant suite behind `qft selfcheck`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::engine::{l1_norm, qft_point, qft_surface, TransformOptions};
use crate::function::FunctionSpec;
use crate::hilhorst::{
    closed_form_transform, degeneracy_partner, degenerate_transform, hilhorst_window, make_window,
    separation_scan, ClosedFormOptions, ScanOptions, Verdict,
};
use crate::hyp2f1::{hyp2f1, hyp2f1_series, Hyp2F1Params};
use crate::inversion::{
    inverse_transform, linspace, q1_slice, roundtrip_error, symmetric_grid, InverseOptions,
    SliceOptions,
};
use crate::qcore::{q_exponential, DeformationIndex};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> crate::Result<(bool, String)>;

fn classical_indicator(k: f64) -> Complex64 {
    if k == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (Complex64::new(0.0, k).exp() - 1.0) / Complex64::new(0.0, k)
    }
}

fn fixtures() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::indicator(0.0, 1.0).expect("fixture"),
        make_window(1.0, 2.0, 2.0, SQRT_2).expect("fixture").into(),
    ]
}

fn degenerate_pair() -> crate::Result<(FunctionSpec, FunctionSpec)> {
    let w1 = hilhorst_window(1.0, 2.0, 1.5)?;
    let w2 = degeneracy_partner(&w1, 1.5, 1.1)?;
    Ok((w1.into(), w2.into()))
}

fn q_exponential_values() -> crate::Result<(bool, String)> {
    let q = DeformationIndex::new(1.5)?;
    let v = q_exponential(Complex64::new(0.0, 1.0), q)?;
    let err = (v - Complex64::new(0.48, 0.64)).norm();
    let conj = (q_exponential(Complex64::new(0.3, -2.0), q)?
        - q_exponential(Complex64::new(0.3, 2.0), q)?.conj())
    .norm();
    Ok((
        err < 1e-15 && conj < 1e-15,
        format!("e_1.5(i) error {err:.1e}, conjugation {conj:.1e}"),
    ))
}

fn hyp2f1_identity() -> crate::Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 3.7] {
        for b in [0.3, 1.5] {
            for w in [-4.0, -1.0, -0.3, 0.2] {
                let v = hyp2f1(&Hyp2F1Params::real(-a, b, b, w)?)?;
                worst = worst.max((v - Complex64::new((1.0 - w).powf(a), 0.0)).norm());
            }
        }
    }
    Ok((
        worst < 1e-10,
        format!("max |2F1(-a,b;b;w) - (1-w)^a| = {worst:.1e}"),
    ))
}

fn hyp2f1_series_consistency() -> crate::Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let r = 0.5 + 0.45 * ((i * 7) % 50) as f64 / 50.0;
        let theta = std::f64::consts::TAU * (i as f64 + 0.5) / 50.0;
        let z = Complex64::from_polar(r, theta);
        let p = Hyp2F1Params::new(
            0.3 + 0.05 * (i % 5) as f64,
            -1.2 + 0.1 * (i % 7) as f64,
            1.7,
            z,
        )?;
        let v = hyp2f1(&p)?;
        let s = hyp2f1_series(&p)?;
        worst = worst.max((v - s).norm() / s.norm());
        let c = hyp2f1(&Hyp2F1Params { z: z.conj(), ..p })?;
        worst = worst.max((c - v.conj()).norm() / v.norm());
    }
    Ok((
        worst < 1e-9,
        format!("max relative deviation over 50 points {worst:.1e}"),
    ))
}

fn normalization_and_gate() -> crate::Result<(bool, String)> {
    let opts = TransformOptions::default();
    let mut worst: f64 = 0.0;
    let mut gate_ok = true;
    for f in fixtures() {
        let norm = l1_norm(&f)?;
        for i in 0..10 {
            let v = qft_point(&f, 1.0 + 0.1 * i as f64, 0.0, &opts)?;
            worst = worst.max((v.value - norm).norm() / norm);
        }
        for q in [0.9, 2.0, 2.5] {
            gate_ok &= qft_point(&f, q, 1.3, &opts)?.value == Complex64::new(0.0, 0.0);
        }
    }
    Ok((
        worst < 1e-9 && gate_ok,
        format!("F(0,q) relative deviation {worst:.1e}, gate exact: {gate_ok}"),
    ))
}

fn hermitian_rows() -> crate::Result<(bool, String)> {
    let k = linspace(-5.0, 5.0, 21);
    let mut worst = f64::NEG_INFINITY;
    for f in fixtures() {
        let s = qft_surface(&f, &k, &[1.0, 1.3, 1.7], &TransformOptions::default())?;
        worst = worst.max(s.hermitian_excess().unwrap_or(f64::INFINITY));
    }
    Ok((
        worst <= 0.0,
        format!("largest asymmetry beyond error bounds {worst:.1e}"),
    ))
}

/// Composite Simpson rule, independent of the adaptive quadrature.
fn simpson(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * (h / 3.0)
}

fn classical_reduction() -> crate::Result<(bool, String)> {
    let opts = TransformOptions::default();
    let [ind, pl] = <[FunctionSpec; 2]>::try_from(fixtures()).expect("two fixtures");
    let mut worst: f64 = 0.0;
    for k in linspace(-10.0, 10.0, 41) {
        worst = worst.max((qft_point(&ind, 1.0, k, &opts)?.value - classical_indicator(k)).norm());
        let oracle = simpson(
            |x| Complex64::new(0.0, k * x).exp() * (2.0 / (x * x)),
            1.0,
            2.0,
            20_000,
        );
        worst = worst.max((qft_point(&pl, 1.0, k, &opts)?.value - oracle).norm());
    }
    Ok((
        worst < 1e-8,
        format!("max deviation from classical transform {worst:.1e}"),
    ))
}

fn q_continuity() -> crate::Result<(bool, String)> {
    let opts = TransformOptions::default();
    let mut ok = true;
    for f in fixtures() {
        for k in [0.7, 3.0] {
            let base = qft_point(&f, 1.0, k, &opts)?.value;
            let gaps = [1e-1, 1e-2, 1e-3]
                .iter()
                .map(|d| Ok((qft_point(&f, 1.0 + d, k, &opts)?.value - base).norm()))
                .collect::<crate::Result<Vec<f64>>>()?;
            ok &= gaps.windows(2).all(|g| g[1] < g[0]);
        }
    }
    Ok((
        ok,
        "|F(k,1+d) - F(k,1)| decreases over d = 1e-1, 1e-2, 1e-3".into(),
    ))
}

fn closed_form_equivalence() -> crate::Result<(bool, String)> {
    let opts = TransformOptions::default();
    let cf = ClosedFormOptions::default();
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for beta in [2.0, 4.0] {
        let w = make_window(1.0, 2.0, beta, 1.0)?;
        for q in [1.1, 1.2, 1.3, 1.6, 1.8] {
            if (1.0 - beta * (q - 1.0)).abs() <= cf.singular_margin {
                continue;
            }
            for k in [0.3, 0.7, 1.0, 2.0, 5.0] {
                let a = closed_form_transform(&w, q, k, &cf)?.value;
                let b = qft_point(&w.into(), q, k, &opts)?.value;
                worst = worst.max((a - b).norm() / b.norm());
                compared += 1;
            }
        }
    }
    Ok((
        worst < 1e-6,
        format!("{compared} nodes, max relative deviation {worst:.1e}"),
    ))
}

fn fixed_q_degeneracy() -> crate::Result<(bool, String)> {
    let (f1, f2) = degenerate_pair()?;
    let opts = TransformOptions::default();
    let mut worst: f64 = 0.0;
    for k in linspace(-5.0, 5.0, 101) {
        let d = degenerate_transform(SQRT_2, 1.5, k)?;
        worst = worst.max((qft_point(&f1, 1.5, k, &opts)?.value - d).norm());
        worst = worst.max((qft_point(&f2, 1.5, k, &opts)?.value - d).norm());
    }
    Ok((
        worst < 1e-6,
        format!("max deviation from e_q(ik lambda) {worst:.1e}"),
    ))
}

fn floating_q_separation() -> crate::Result<(bool, String)> {
    let w1 = hilhorst_window(1.0, 2.0, 1.5)?;
    let w2 = degeneracy_partner(&w1, 1.5, 1.1)?;
    let probes = [1.1, 1.2, 1.3, 1.4, 1.6, 1.7];
    let r = separation_scan(
        &w1,
        &w2,
        &probes,
        &linspace(-5.0, 5.0, 101),
        &ScanOptions::default(),
    )?;
    let ok = r
        .probes
        .iter()
        .all(|p| p.verdict == Verdict::Separated && p.max_gap > 1e-3);
    let smallest = r
        .probes
        .iter()
        .map(|p| p.max_gap)
        .fold(f64::INFINITY, f64::min);
    Ok((ok, format!("smallest gap over probes {smallest:.2e}")))
}

fn normalization_of_level_sets() -> crate::Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    for q in [1.1, 1.3, 1.5, 1.7, 1.9] {
        let w = hilhorst_window(1.0, 2.0, q)?;
        worst = worst.max((l1_norm(&w.into())? - 1.0).abs());
        // a start a third of the way to the last feasible one
        let exponent = (q - 2.0) / (q - 1.0);
        let a_max = crate::hilhorst::level_set_constant(1.0, 2.0, q)?.powf(1.0 / exponent);
        let p = degeneracy_partner(&w, q, 1.0 + (a_max - 1.0) / 3.0)?;
        worst = worst.max((l1_norm(&p.into())? - 1.0).abs());
        let back = degeneracy_partner(&p, q, 1.0)?;
        round_trip = round_trip.max((back.b() - w.b()).abs());
    }
    Ok((
        worst < 1e-10 && round_trip < 1e-12,
        format!("|l1 - 1| {worst:.1e}, partner round trip {round_trip:.1e}"),
    ))
}

fn slice_matches_classical() -> crate::Result<(bool, String)> {
    let k = symmetric_grid(10.0, 40);
    let s = q1_slice(&fixtures()[0], &k, &SliceOptions::default())?;
    let worst = k
        .iter()
        .zip(&s.values)
        .map(|(k, v)| (v - classical_indicator(*k)).norm())
        .fold(0.0, f64::max);
    Ok((
        worst < 1e-6,
        format!("max deviation of q->1+ slice {worst:.1e}"),
    ))
}

fn reconstruction_is_real() -> crate::Result<(bool, String)> {
    let k = symmetric_grid(10.0, 200);
    let s = q1_slice(&fixtures()[0], &k, &SliceOptions::default())?;
    let inv = InverseOptions {
        edge_threshold: f64::INFINITY,
    };
    let r = inverse_transform(&s, &linspace(-0.5, 1.5, 64), &inv)?;
    let peak = r.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ratio = r.max_imaginary() / peak;
    Ok((
        ratio < 1e-8,
        format!("imaginary residue {ratio:.1e} of peak"),
    ))
}

fn refinement_monotonicity() -> crate::Result<(bool, String)> {
    let x = linspace(-0.5, 1.5, 256);
    let inv = InverseOptions {
        edge_threshold: f64::INFINITY,
    };
    let f = &fixtures()[0];
    let coarse = roundtrip_error(
        f,
        &symmetric_grid(10.0, 200),
        &x,
        &SliceOptions::default(),
        &inv,
    )?;
    let fine = roundtrip_error(
        f,
        &symmetric_grid(20.0, 800),
        &x,
        &SliceOptions::default(),
        &inv,
    )?;
    Ok((
        fine < coarse * 1.1,
        format!("round-trip error {coarse:.3} -> {fine:.3}"),
    ))
}

const CHECKS: [(&str, Check); 15] = [
    ("q_exponential_values", q_exponential_values),
    ("hyp2f1_identity", hyp2f1_identity),
    ("hyp2f1_series_consistency", hyp2f1_series_consistency),
    ("normalization_and_gate", normalization_and_gate),
    ("hermitian_rows", hermitian_rows),
    ("classical_reduction", classical_reduction),
    ("q_continuity", q_continuity),
    ("closed_form_equivalence", closed_form_equivalence),
    ("fixed_q_degeneracy", fixed_q_degeneracy),
    ("floating_q_separation", floating_q_separation),
    ("level_set_normalization", normalization_of_level_sets),
    ("slice_matches_classical", slice_matches_classical),
    ("reconstruction_is_real", reconstruction_is_real),
    ("refinement_monotonicity", refinement_monotonicity),
    ("degenerate_pair_surfaces", degenerate_pair_surfaces),
];

fn degenerate_pair_surfaces() -> crate::Result<(bool, String)> {
    let (f1, f2) = degenerate_pair()?;
    let k = linspace(-5.0, 5.0, 41);
    let o = TransformOptions::default();
    let (s1, s2) = (
        qft_surface(&f1, &k, &[1.5], &o)?,
        qft_surface(&f2, &k, &[1.5], &o)?,
    );
    let gap = s1
        .values
        .iter()
        .zip(&s2.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok((gap < 1e-6, format!("max surface gap at q = 1.5: {gap:.1e}")))
}

/// Run every check; a check that errors counts as failed.
pub fn run_selfcheck() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| match check() {
            Ok((passed, detail)) => CheckResult {
                name,
                passed,
                detail,
            },
            Err(e) => CheckResult {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}
