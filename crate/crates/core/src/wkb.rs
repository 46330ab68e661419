//! Leading-order semiclassical energies.
//!
//! All closed forms have the shape `E_n = [C (n + 1/2)]^p` with
//! `p = 2K / (K + 2)`. The numeric route integrates `sqrt(E - V)` along the
//! straight segment joining a PT-paired couple of turning points.

use crate::error::{Error, Result};
use crate::level::{EnergyLevel, Method};
use crate::potential::{reduce_angle, turning_points, PotentialSpec};
use crate::special::{gamma, gauss_chebyshev_second};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Labels are accepted only within this distance of an integer.
pub const LABEL_WINDOW: f64 = 0.2;

fn sqrt_pi() -> f64 {
    PI.sqrt()
}

/// Leading term of the asymptotic energy expansion for `(ix)^(2N+1)`.
///
/// Panics if `big_n == 0`.
pub fn energy_nm(n: usize, big_n: u32) -> f64 {
    assert!(big_n >= 1, "N must be positive");
    let k = 2.0 * big_n as f64 + 1.0;
    let c = sqrt_pi() * (k + 2.0) * gamma(0.5 + 1.0 / k)
        / (2.0 * (PI / (2.0 * k)).cos() * gamma(1.0 / k));
    (c * (n as f64 + 0.5)).powf(2.0 * k / (k + 2.0))
}

/// WKB energy for `-(ix)^(2N+1)` with boundary conditions in the wedges
/// centred on `arg z = -pi/2 +- 2pi/(2N+3)`.
///
/// Panics if `big_n == 0`.
pub fn energy_bb(n: usize, big_n: u32) -> f64 {
    assert!(big_n >= 1, "N must be positive");
    let k = 2.0 * big_n as f64 + 1.0;
    let c = sqrt_pi() * gamma(1.5 + 1.0 / k) / ((PI / k).sin() * gamma(1.0 + 1.0 / k));
    (c * (n as f64 + 0.5)).powf(2.0 * k / (k + 2.0))
}

/// WKB energy for `x^(2M) (ix)^eps` with turning points `x_0` and
/// `-conj(x_0)`.
///
/// Panics if `m == 0` (the paired turning points coincide).
pub fn energy_general(n: usize, m: u32, epsilon: u32) -> f64 {
    assert!(m >= 1, "M must be positive");
    let k = 2.0 * m as f64 + epsilon as f64;
    let c = sqrt_pi() * gamma(1.5 + 1.0 / k) / ((PI * m as f64 / k).sin() * gamma(1.0 + 1.0 / k));
    (c * (n as f64 + 0.5)).powf(2.0 * k / (k + 2.0))
}

pub fn levels_bb(n_max: usize, big_n: u32) -> Vec<EnergyLevel> {
    (0..=n_max).map(|n| EnergyLevel::exact(n, energy_bb(n, big_n), Method::WkbBb)).collect()
}

pub fn levels_nm(n_max: usize, big_n: u32) -> Vec<EnergyLevel> {
    (0..=n_max).map(|n| EnergyLevel::exact(n, energy_nm(n, big_n), Method::WkbNm)).collect()
}

pub fn levels_general(n_max: usize, m: u32, epsilon: u32) -> Vec<EnergyLevel> {
    (0..=n_max)
        .map(|n| EnergyLevel::exact(n, energy_general(n, m, epsilon), Method::WkbGeneral))
        .collect()
}

/// `int_{x_minus}^{x_plus} sqrt(E - V(x)) dx` along the straight segment.
///
/// The branch has positive real part at the midpoint and is continued along
/// the segment. Both endpoints must be simple zeros of `E - V`.
pub fn segment_action(
    spec: &PotentialSpec,
    energy: f64,
    x_minus: Complex64,
    x_plus: Complex64,
) -> Result<Complex64> {
    let mid = (x_plus + x_minus) * 0.5;
    let half = (x_plus - x_minus) * 0.5;
    // E - V(x(t)) = (1 - t^2) G(t) with G analytic and zero-free on [-1, 1]
    let g = |t: f64| (energy - spec.evaluate(mid + half * t)) / (1.0 - t * t);

    let mut previous: Option<Complex64> = None;
    for nodes in [129usize, 257, 513, 1025, 2049, 4097] {
        let value = chebyshev_sum(&g, nodes)? * half;
        if let Some(p) = previous {
            if (value - p).norm() <= 1e-12 * (1.0 + value.norm()) {
                return Ok(value);
            }
        }
        previous = Some(value);
    }
    Ok(previous.expect("at least one pass"))
}

fn chebyshev_sum(g: &impl Fn(f64) -> Complex64, nodes: usize) -> Result<Complex64> {
    let (t, w) = gauss_chebyshev_second(nodes);
    let centre = nodes / 2;
    let mut root = vec![Complex64::new(0.0, 0.0); nodes];
    let mut start = g(t[centre]).sqrt();
    if start.re < 0.0 {
        start = -start;
    }
    root[centre] = start;
    let scale = start.norm().max(f64::MIN_POSITIVE);

    let mut track = |range: &mut dyn Iterator<Item = usize>, step: isize| -> Result<()> {
        for i in range {
            let prev = root[(i as isize - step) as usize];
            let mut r = g(t[i]).sqrt();
            if (r - prev).norm() > (r + prev).norm() {
                r = -r;
            }
            // a zero of G on the path shows up as a collapse of |sqrt G|
            // or as a jump the continuation cannot follow
            if r.norm() < 1e-7 * scale || (r - prev).norm() > 0.5 * (r.norm() + prev.norm()) {
                return Err(Error::DegeneratePath { t: t[i] });
            }
            root[i] = r;
        }
        Ok(())
    };
    track(&mut (centre + 1..nodes), 1)?;
    track(&mut (0..centre).rev(), -1)?;

    Ok(root.iter().zip(&w).map(|(r, w)| r * *w).sum())
}

fn check_segment(spec: &PotentialSpec, energy: f64, x_minus: Complex64, x_plus: Complex64) -> Result<()> {
    let tp = turning_points(spec, energy)?;
    let scale = tp.points[0].norm();
    let chord = x_plus - x_minus;
    for &p in &tp.points {
        if (p - x_plus).norm() < 1e-9 * scale || (p - x_minus).norm() < 1e-9 * scale {
            continue;
        }
        let t = ((p - x_minus) * chord.conj()).re / chord.norm_sqr();
        if t > 0.0 && t < 1.0 {
            let foot = x_minus + chord * t;
            if (p - foot).norm() < 1e-9 * scale {
                return Err(Error::DegeneratePath { t: 2.0 * t - 1.0 });
            }
        }
    }
    Ok(())
}

fn real_action(spec: &PotentialSpec, energy: f64, x_minus: Complex64, x_plus: Complex64) -> Result<f64> {
    check_segment(spec, energy, x_minus, x_plus)?;
    let s = segment_action(spec, energy, x_minus, x_plus)?;
    if s.im.abs() >= 1e-8 * (1.0 + s.re.abs()) {
        return Err(Error::ComplexAction { re: s.re, im: s.im });
    }
    Ok(s.re)
}

/// Quantization integral between `x_- = -conj(x_0)` and `x_+ = x_0`.
///
/// `spec` must have `s = +1` and `b = 0`.
pub fn quantization_integral(spec: &PotentialSpec, energy: f64) -> Result<f64> {
    let tp = turning_points(spec, energy)?;
    real_action(spec, energy, tp.pair_minus, tp.pair_plus)
}

/// `quantization_integral / pi - 1/2`.
pub fn quantum_number(spec: &PotentialSpec, energy: f64) -> Result<f64> {
    Ok(quantization_integral(spec, energy)? / PI - 0.5)
}

/// Rounds a fractional quantum number when it lies within
/// [`LABEL_WINDOW`] of a non-negative integer.
pub fn label(quantum_number: f64) -> Option<usize> {
    let r = quantum_number.round();
    if r >= 0.0 && (quantum_number - r).abs() <= LABEL_WINDOW {
        Some(r as usize)
    } else {
        None
    }
}

/// WKB model for the eigenvalue problem posed on a ray pair.
///
/// The turning points are the PT pair nearest to the right ray. For a
/// monomial the action scales as `E^((K+2)/(2K))`, so one integral at
/// `E = 1` fixes every level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayWkb {
    degree: u32,
    unit_action: f64,
}

impl RayWkb {
    /// The linear term is dropped; it does not affect the leading order.
    pub fn new(spec: &PotentialSpec, theta_right: f64) -> Result<Self> {
        let base = spec.without_linear_term().positive_form();
        let tp = turning_points(&base, 1.0)?;
        let (x_plus, x_minus) = tp.pair_nearest(reduce_angle(theta_right));
        let unit_action = real_action(&base, 1.0, x_minus, x_plus)?;
        if !(unit_action > 0.0) {
            return Err(Error::ComplexAction { re: unit_action, im: 0.0 });
        }
        Ok(Self { degree: base.degree(), unit_action })
    }

    fn power(&self) -> f64 {
        let k = self.degree as f64;
        (k + 2.0) / (2.0 * k)
    }

    pub fn unit_action(&self) -> f64 {
        self.unit_action
    }

    pub fn energy(&self, n: f64) -> f64 {
        ((n + 0.5) * PI / self.unit_action).powf(1.0 / self.power())
    }

    pub fn quantum_number(&self, energy: f64) -> f64 {
        self.unit_action * energy.max(0.0).powf(self.power()) / PI - 0.5
    }

    /// `dE/dn` at `energy`.
    pub fn spacing(&self, energy: f64) -> f64 {
        PI / (self.unit_action * self.power() * energy.powf(self.power() - 1.0))
    }
}
