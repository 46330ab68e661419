//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use ptspectra::linalg::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix(order: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(order, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monic characteristic polynomial coefficients `c[0..=n]` (`c[n] = 1`) by
/// the Faddeev-LeVerrier recursion. Fine for the small orders used here.
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.order();
    let mul = |x: &[Complex64], y: &[Complex64]| {
        let mut out = vec![Complex64::default(); n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += x[i * n + k] * y[k * n + j];
                }
            }
        }
        out
    };
    let mut coeffs = vec![Complex64::default(); n + 1];
    coeffs[n] = c(1.0, 0.0);
    let mut m = vec![Complex64::default(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a.as_slice(), &m);
        for i in 0..n {
            next[i * n + i] += coeffs[n - k + 1];
        }
        let am = mul(a.as_slice(), &next);
        let trace: Complex64 = (0..n).map(|i| am[i * n + i]).sum();
        coeffs[n - k] = -trace / k as f64;
        m = next;
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::default();
    let mut dp = Complex64::default();
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of a monic polynomial by the Aberth-Ehrlich iteration.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

/// Largest distance after greedily pairing each of `a` with the closest
/// unused element of `b`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("same length");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Unit-scale oscillator functions `h_0..h_{n_max}` at `x` from the
/// normalised Hermite recurrence.
pub fn oscillator_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut h = vec![0.0; n_max + 1];
    h[0] = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n_max >= 1 {
        h[1] = std::f64::consts::SQRT_2 * x * h[0];
    }
    for n in 2..=n_max {
        h[n] = (2.0 / n as f64).sqrt() * x * h[n - 1] - ((n - 1) as f64 / n as f64).sqrt() * h[n - 2];
    }
    h
}

/// Adaptive Simpson integration on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[derive(Clone, Copy)]
    struct Panel {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
    }
    fn step(f: &dyn Fn(f64) -> f64, p: Panel, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (p.a + p.b);
        let (flm, frm) = (f(0.5 * (p.a + m)), f(0.5 * (m + p.b)));
        let left = Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm) };
        let right = Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb) };
        let delta = left.whole + right.whole - p.whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left.whole + right.whole + delta / 15.0;
        }
        step(f, left, 0.5 * tol, depth - 1) + step(f, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    step(f, Panel { a, b, fa, fm, fb, whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb) }, tol, 24)
}

/// `<phi_m| x^power |phi_n>` for `phi_n(x) = sqrt(alpha) h_n(alpha x)`, by
/// quadrature on the real line.
pub fn position_element(m: usize, n: usize, power: i32, alpha: f64) -> f64 {
    let top = m.max(n);
    let integrand = |y: f64| {
        let h = oscillator_functions(top, y);
        h[m] * h[n] * y.powi(power)
    };
    // substitute y = alpha x; the tails beyond |y| = 14 are below 1e-40
    let half = adaptive_simpson(&integrand, 0.0, 14.0, 1e-13) + adaptive_simpson(&integrand, -14.0, 0.0, 1e-13);
    half / alpha.powi(power)
}

/// Reference eigenvalues of `(ix)^5`.
pub const DM: [f64; 11] = [
    1.16477040794341,
    4.36378436771211,
    8.95516699824067,
    14.4177548302741,
    20.6101375100489,
    27.4284077210062,
    34.8037156407346,
    42.6845638108818,
    51.030837828189,
    59.81014759020,
    68.9956534721,
];

pub const NI: [f64; 11] = [
    1.164771, 4.363785, 8.955167, 14.417755, 20.610138, 27.428408, 34.803715, 42.684564, 51.030837, 59.810150, 68.995644,
];

pub const NM: [f64; 11] = [
    0.8906863480,
    4.278845331,
    8.876737420,
    14.35514917,
    20.55551587,
    27.37969662,
    34.75941365,
    42.64372812,
    50.99281286,
    59.77445901,
    68.96194510,
];

/// Off-axis problem for the quintic.
pub const RPM: [f64; 4] = [1.9082645781707777, 8.587220836207222, 17.710809011731145, 28.595103311735975];

pub const BB: [f64; 4] = [1.771244715, 8.509035978, 17.65253759, 28.54706617];

/// Published line sets for the quintic: (label, whether the potential is
/// `-(ix)^5`, numerators over 14).
pub const LINE_SETS: [(&str, bool, [i64; 6]); 4] = [
    ("(ix)^5 A", false, [1, 13, 15, 17, 25, 27]),
    ("(ix)^5 B", false, [1, 3, 5, 9, 11, 13]),
    ("-(ix)^5 A", true, [15, 17, 19, 23, 25, 27]),
    ("-(ix)^5 B", true, [1, 3, 11, 13, 15, 27]),
];
