//! Adaptive Dormand-Prince 5(4) integrator for complex systems.

use crate::error::{Error, Result};
use num_complex::Complex64;

type State<const N: usize> = [Complex64; N];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// error coefficients: fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy<const N: usize>(y: &State<N>, terms: &[(f64, &State<N>)], h: f64) -> State<N> {
    let mut out = *y;
    for (c, k) in terms {
        if *c == 0.0 {
            continue;
        }
        for i in 0..N {
            out[i] += k[i] * (c * h);
        }
    }
    out
}

fn norm<const N: usize>(y: &State<N>) -> f64 {
    y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction).
///
/// The error of a step is measured against `abs + rel * max(|y|, |y_new|)`
/// using the Euclidean norm of the whole state. After every accepted step
/// `after_step` may rescale the state in place.
pub fn integrate<const N: usize>(
    f: impl Fn(f64, &State<N>) -> State<N>,
    t0: f64,
    y0: State<N>,
    t_end: f64,
    tol: Tolerances,
    mut after_step: impl FnMut(f64, &mut State<N>),
) -> Result<(State<N>, Stats)> {
    let span = t_end - t0;
    let dir = span.signum();
    let mut stats = Stats::default();
    if span == 0.0 {
        return Ok((y0, stats));
    }
    let mut t = t0;
    let mut y = y0;
    let mut h = dir * (span.abs() * 1e-3).max(1e-10);
    let mut k1 = f(t, &y);
    stats.evaluations += 1;

    loop {
        let remaining = t_end - t;
        let last = h.abs() >= remaining.abs();
        if last {
            h = remaining;
        }
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { rho: t });
        }

        let k2 = f(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
        let k3 = f(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = f(t + C4 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = f(t + C5 * h, &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
        let k6 = f(
            t + h,
            &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
        );
        let y_new = axpy(&y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
        let k7 = f(t + h, &y_new);
        stats.evaluations += 6;

        let err_vec = axpy(
            &[Complex64::new(0.0, 0.0); N],
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
            h,
        );
        let scale = tol.abs + tol.rel * norm(&y).max(norm(&y_new));
        let finite = y_new.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        let err = if finite { norm(&err_vec) / scale } else { f64::INFINITY };

        if err <= 1.0 {
            stats.accepted += 1;
            t = if last { t_end } else { t + h };
            y = y_new;
            k1 = k7;
            let before = y;
            after_step(t, &mut y);
            if y != before {
                k1 = f(t, &y);
                stats.evaluations += 1;
            }
            if last {
                return Ok((y, stats));
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
        } else {
            stats.rejected += 1;
            let factor = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
            h *= factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerances = Tolerances { rel: 1e-12, abs: 1e-14 };

    #[test]
    fn exponential_growth() {
        let (y, stats) = integrate(|_, y: &[Complex64; 1]| [y[0]], 0.0, [Complex64::new(1.0, 0.0)], 2.0, TOL, |_, _| {})
            .unwrap();
        assert!((y[0].re - 2f64.exp()).abs() < 1e-10 * 2f64.exp());
        assert!(stats.accepted > 0);
    }

    #[test]
    fn backward_oscillator() {
        // y'' = -y, integrated from t = 10 down to 0 with y = cos t
        let f = |_: f64, y: &[Complex64; 2]| [y[1], -y[0]];
        let y0 = [Complex64::new(10f64.cos(), 0.0), Complex64::new(-10f64.sin(), 0.0)];
        let (y, _) = integrate(f, 10.0, y0, 0.0, TOL, |_, _| {}).unwrap();
        assert!((y[0] - 1.0).norm() < 1e-10);
        assert!(y[1].norm() < 1e-10);
    }

    #[test]
    fn complex_rotation() {
        let f = |_: f64, y: &[Complex64; 1]| [y[0] * Complex64::new(0.0, 1.0)];
        let (y, _) = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], std::f64::consts::PI, TOL, |_, _| {}).unwrap();
        assert!((y[0] + 1.0).norm() < 1e-10);
    }

    #[test]
    fn rescaling_hook_is_applied() {
        let mut count = 0;
        let (y, _) = integrate(
            |_, y: &[Complex64; 1]| [y[0] * 10.0],
            0.0,
            [Complex64::new(1.0, 0.0)],
            5.0,
            TOL,
            |_, y| {
                if y[0].norm() > 1e6 {
                    y[0] /= 1e6;
                    count += 1;
                }
            },
        )
        .unwrap();
        let total = y[0].re.ln() + count as f64 * 1e6f64.ln();
        assert!((total - 50.0).abs() < 1e-9);
        assert!(count > 0);
    }

    #[test]
    fn finite_time_blowup_underflows() {
        // y = 1 / (1 - t)
        let f = |_: f64, y: &[Complex64; 1]| [y[0] * y[0]];
        let r = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], 2.0, TOL, |_, _| {});
        assert!(matches!(r, Err(Error::StepUnderflow { .. })));
    }
}
