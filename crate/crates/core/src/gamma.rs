//! Real gamma function in log-magnitude/sign form.

use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln |Gamma(x)|, sign Gamma(x))`. Poles return `(inf, 1)`.
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, 1.0);
    }
    if x < 0.5 {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_signed(1.0 - x);
        return ((PI / s.abs()).ln() - lg, s.signum() * sg);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln(), 1.0)
}

/// `sin(pi x)` with exact zeros at integers and full relative accuracy near them.
fn sin_pi(x: f64) -> f64 {
    // r in [-1, 1]
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

#[cfg(test)]
fn gamma(x: f64) -> f64 {
    let (lg, s) = ln_gamma_signed(x);
    s * lg.exp()
}

/// `prod Gamma(num) / prod Gamma(den)`.
///
/// Returns `None` when a numerator argument sits on a pole; a denominator
/// pole makes the ratio exactly zero.
pub(crate) fn gamma_ratio(num: &[f64], den: &[f64]) -> Option<f64> {
    if num.iter().any(|&x| is_nonpositive_integer(x)) {
        return None;
    }
    if den.iter().any(|&x| is_nonpositive_integer(x)) {
        return Some(0.0);
    }
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = ln_gamma_signed(x);
        log += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x);
        log -= l;
        sign *= s;
    }
    Some(sign * log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..25 {
            assert_relative_eq!(gamma(n as f64), f, max_relative = 1e-14);
            f *= n as f64;
        }
    }

    #[test]
    fn half_integers_and_reflection() {
        let sqrt_pi = PI.sqrt();
        assert_relative_eq!(gamma(0.5), sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma(-0.5), -2.0 * sqrt_pi, max_relative = 1e-14);
        assert_relative_eq!(gamma(-1.5), 4.0 * sqrt_pi / 3.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(-2.5), -8.0 * sqrt_pi / 15.0, max_relative = 1e-14);
    }

    #[test]
    fn large_argument_log() {
        // ln Gamma(101) = ln(100!)
        let ln_fact: f64 = (1..=100).map(|n| (n as f64).ln()).sum();
        assert_relative_eq!(ln_gamma_signed(101.0).0, ln_fact, max_relative = 1e-14);
    }

    #[test]
    fn ratios_with_poles() {
        assert_eq!(gamma_ratio(&[1.0], &[-2.0]), Some(0.0));
        assert_eq!(gamma_ratio(&[0.0], &[1.0]), None);
        assert_relative_eq!(
            gamma_ratio(&[30.0], &[29.0]).unwrap(),
            29.0,
            max_relative = 1e-13
        );
    }
}
