//! Eigenvalues by integrating the Schrödinger equation along complex rays.
//!
//! On the ray `x = rho e^{i theta}` the equation `-psi'' + V psi = E psi`
//! becomes `d^2 psi / d rho^2 = e^{2 i theta} (V - E) psi`. The solution that
//! decays along the right ray is integrated inward from `rho_max` to the
//! origin. By PT symmetry the solution decaying along the mirrored ray is
//! `psi_L(x) = conj(psi_R(-conj x))`, so the Wronskian at the origin reduces
//! to `2 Re[conj(psi(0)) psi'(0)]` and only one ray has to be integrated.

use crate::error::{Error, Result};
use crate::level::{EnergyLevel, Method};
use crate::ode::{self, Tolerances};
use crate::potential::PotentialSpec;
use crate::special::gauss_legendre;
use crate::stokes::{asymptotic_lines, RayPair};
use crate::wkb::{label, RayWkb};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Magnitude above which the running solution is renormalised.
const RESCALE_LIMIT: f64 = 1e100;
/// Decay action required of an explicit `rho_max`.
pub const MIN_DECAY_ACTION: f64 = 35.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "value")]
pub enum RhoMax {
    /// Chosen per energy so that the decay action reaches the target.
    Auto { action: f64 },
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    pub rho_max: RhoMax,
    pub ode_rel_tol: f64,
    pub ode_abs_tol: f64,
    /// Scan step as a fraction of the local WKB level spacing.
    pub scan_step: f64,
    /// Absolute energy tolerance of the bisection.
    pub root_tol: f64,
    pub max_bisections: usize,
    /// Worker threads for the energy scan (1 = serial).
    pub threads: usize,
    pub match_point: MatchPoint,
}

/// Where the solutions from the two rays are compared. Any point on the
/// imaginary axis is a fixed point of `x -> -conj(x)`, so the PT reduction
/// of the Wronskian holds at each of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchPoint {
    /// Straight along the ray down to `x = 0`.
    Origin,
    /// Down the ray to the radius of the WKB turning points, then straight to
    /// the midpoint of the chord joining them. The chord lies in the
    /// oscillatory region, which keeps the match well conditioned when the
    /// origin is deep in a classically forbidden zone.
    ChordMidpoint,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            rho_max: RhoMax::Auto { action: 40.0 },
            ode_rel_tol: 1e-12,
            ode_abs_tol: 1e-14,
            scan_step: 0.1,
            root_tol: 1e-10,
            max_bisections: 200,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()).min(8),
            match_point: MatchPoint::ChordMidpoint,
        }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.ode_rel_tol, self.ode_abs_tol, self.scan_step, self.root_tol];
        if positive.iter().any(|v| !(*v > 0.0)) || self.max_bisections == 0 {
            return Err(Error::InvalidParameter(format!("shooting configuration out of range: {self:?}")));
        }
        match self.rho_max {
            RhoMax::Auto { action } if !(action > 0.0) => {
                Err(Error::InvalidParameter(format!("target decay action must be positive, got {action}")))
            }
            RhoMax::Fixed(r) if !(r > 0.0) => {
                Err(Error::InvalidParameter(format!("rho_max must be positive, got {r}")))
            }
            _ => Ok(()),
        }
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances { rel: self.ode_rel_tol, abs: self.ode_abs_tol }
    }
}

/// `Q(rho) = e^{2 i theta} (V(rho e^{i theta}) - E)`.
fn ray_coefficient(spec: &PotentialSpec, energy: f64, theta: f64, rho: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, theta);
    phase * phase * (spec.evaluate(phase * rho) - energy)
}

/// `Re int_0^rho sqrt(Q) d rho`, the exponent of decay accumulated out to
/// `rho`.
pub fn decay_action(spec: &PotentialSpec, energy: f64, theta: f64, rho: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(24);
    let panels = 16;
    let width = rho / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = p as f64 * width;
        for (t, w) in nodes.iter().zip(&weights) {
            let r = a + 0.5 * width * (t + 1.0);
            total += 0.5 * width * w * ray_coefficient(spec, energy, theta, r).sqrt().re;
        }
    }
    total
}

/// Smallest `rho` with `decay_action(rho) >= target`.
pub fn auto_rho_max(spec: &PotentialSpec, energy: f64, theta: f64, target: f64) -> Result<f64> {
    let mut hi = 1.0;
    let mut guard = 0;
    while decay_action(spec, energy, theta, hi) < target {
        hi *= 1.5;
        guard += 1;
        if guard > 200 {
            return Err(Error::InvalidParameter(format!(
                "ray at theta = {theta} never accumulates decay action; not a decaying direction"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if decay_action(spec, energy, theta, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi {
            break;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaySolution {
    /// `psi` at the end point, divided by `exp(log_scale)`.
    pub psi: Complex64,
    /// `d psi / dx` at the end point (not `d/d rho`), same scaling as `psi`.
    pub dpsi_dx: Complex64,
    pub log_scale: f64,
    pub rho_max: f64,
    pub rho_end: f64,
    pub steps: usize,
    pub warnings: Vec<String>,
}

impl RaySolution {
    /// `psi'/psi` at the end point.
    pub fn log_derivative(&self) -> Complex64 {
        self.dpsi_dx / self.psi
    }
}

fn resolve_rho_max(spec: &PotentialSpec, energy: f64, theta: f64, config: &ShootingConfig) -> Result<f64> {
    match config.rho_max {
        RhoMax::Auto { action } => auto_rho_max(spec, energy, theta, action),
        RhoMax::Fixed(r) => Ok(r),
    }
}

struct PathSolution {
    psi: Complex64,
    dpsi_dx: Complex64,
    log_scale: f64,
    steps: usize,
}

/// Integrates `(psi, dpsi/dx)` along the polygon through `vertices`.
fn integrate_path(
    spec: &PotentialSpec,
    energy: f64,
    vertices: &[Complex64],
    y0: [Complex64; 2],
    config: &ShootingConfig,
) -> Result<PathSolution> {
    let mut y = y0;
    let mut log_scale = 0.0;
    let mut steps = 0;
    for leg in vertices.windows(2) {
        let (a, d) = (leg[0], leg[1] - leg[0]);
        if d.norm() == 0.0 {
            continue;
        }
        let rhs = |t: f64, y: &[Complex64; 2]| [d * y[1], d * (spec.evaluate(a + d * t) - energy) * y[0]];
        let (out, stats) = ode::integrate(rhs, 0.0, y, 1.0, config.tolerances(), |_, y| {
            let size = y[0].norm().max(y[1].norm());
            if size > RESCALE_LIMIT {
                y[0] /= size;
                y[1] /= size;
                log_scale += size.ln();
            }
        })
        .map_err(|e| match e {
            Error::StepUnderflow { rho } => Error::StepUnderflow { rho: (a + d * rho).norm() },
            other => other,
        })?;
        y = out;
        steps += stats.accepted;
    }
    Ok(PathSolution { psi: y[0], dpsi_dx: y[1], log_scale, steps })
}

/// Seed `(psi, dpsi/dx)` at `rho_max e^{i theta}` for the solution decaying
/// outward, from the leading WKB behaviour.
fn seed(spec: &PotentialSpec, energy: f64, theta: f64, rho_max: f64) -> Result<[Complex64; 2]> {
    let q_far = ray_coefficient(spec, energy, theta, rho_max);
    if q_far.norm() < 1e-12 {
        return Err(Error::AmbiguousSeed { magnitude: q_far.norm() });
    }
    let mut decay = q_far.sqrt();
    if decay.re < 0.0 {
        decay = -decay;
    }
    Ok([Complex64::new(1.0, 0.0), -decay * Complex64::from_polar(1.0, -theta)])
}

/// Integrates the decaying solution on the ray `theta` from `rho_max` in to
/// `rho_end`.
pub fn integrate_ray_to(
    spec: &PotentialSpec,
    energy: f64,
    theta: f64,
    rho_end: f64,
    config: &ShootingConfig,
) -> Result<RaySolution> {
    config.validate()?;
    let mut warnings = Vec::new();
    if !asymptotic_lines(spec).is_antistokes(theta) {
        warnings.push(format!("theta = {theta} is not an anti-Stokes direction"));
    }
    let rho_max = resolve_rho_max(spec, energy, theta, config)?;
    if !(rho_end >= 0.0 && rho_end < rho_max) {
        return Err(Error::InvalidParameter(format!(
            "end point {rho_end} must lie in [0, rho_max = {rho_max})"
        )));
    }
    let y0 = seed(spec, energy, theta, rho_max)?;
    let phase = Complex64::from_polar(1.0, theta);
    let sol = integrate_path(spec, energy, &[phase * rho_max, phase * rho_end], y0, config)?;
    Ok(RaySolution {
        psi: sol.psi,
        dpsi_dx: sol.dpsi_dx,
        log_scale: sol.log_scale,
        rho_max,
        rho_end,
        steps: sol.steps,
        warnings,
    })
}

/// Polygon from `rho_max e^{i theta}` to the match point.
fn match_path(
    spec: &PotentialSpec,
    energy: f64,
    theta: f64,
    rho_max: f64,
    match_point: MatchPoint,
) -> Result<Vec<Complex64>> {
    let phase = Complex64::from_polar(1.0, theta);
    let start = phase * rho_max;
    match match_point {
        MatchPoint::Origin => Ok(vec![start, Complex64::new(0.0, 0.0)]),
        MatchPoint::ChordMidpoint => {
            let base = spec.without_linear_term().positive_form();
            let tp = crate::potential::turning_points(&base, energy.abs().max(1e-300))?;
            let (x_plus, _) = tp.pair_nearest(theta);
            let radius = x_plus.norm().min(rho_max);
            let target = Complex64::new(0.0, x_plus.im);
            Ok(vec![start, phase * radius, target])
        }
    }
}

/// Solution decaying on `theta`, evaluated at the configured match point.
pub fn integrate_to_match(
    spec: &PotentialSpec,
    energy: f64,
    theta: f64,
    config: &ShootingConfig,
) -> Result<RaySolution> {
    config.validate()?;
    let rho_max = resolve_rho_max(spec, energy, theta, config)?;
    let y0 = seed(spec, energy, theta, rho_max)?;
    let path = match_path(spec, energy, theta, rho_max, config.match_point)?;
    let sol = integrate_path(spec, energy, &path, y0, config)?;
    let end = *path.last().expect("path has two vertices");
    Ok(RaySolution {
        psi: sol.psi,
        dpsi_dx: sol.dpsi_dx,
        log_scale: sol.log_scale,
        rho_max,
        rho_end: end.norm(),
        steps: sol.steps,
        warnings: Vec::new(),
    })
}

/// [`integrate_ray_to`] with the end point at the origin.
pub fn integrate_ray(spec: &PotentialSpec, energy: f64, theta: f64, config: &ShootingConfig) -> Result<RaySolution> {
    integrate_ray_to(spec, energy, theta, 0.0, config)
}

/// Normalised matching function
/// `F(E) = 2 Re[conj(psi) psi'] / (|psi|^2 + |psi'|^2)` at the match point,
/// in `[-1, 1]` and independent of the overall scale of `psi`.
///
/// `F` vanishes exactly when the solutions decaying on the two mirrored rays
/// are linearly dependent.
pub fn matching(spec: &PotentialSpec, energy: f64, theta_right: f64, config: &ShootingConfig) -> Result<f64> {
    let sol = integrate_to_match(spec, energy, theta_right, config)?;
    let w = 2.0 * (sol.psi.conj() * sol.dpsi_dx).re;
    let norm = sol.psi.norm_sqr() + sol.dpsi_dx.norm_sqr() + f64::MIN_POSITIVE;
    Ok((w / norm).clamp(-1.0, 1.0))
}

/// Wronskian `psi_L psi_R' - psi_L' psi_R` at the match point with both
/// rays integrated independently, normalised like [`matching`].
///
/// For PT-mirrored rays it is real up to integration error.
pub fn two_ray_wronskian(spec: &PotentialSpec, energy: f64, rays: RayPair, config: &ShootingConfig) -> Result<Complex64> {
    let right = integrate_to_match(spec, energy, rays.theta_right, config)?;
    let left = {
        config.validate()?;
        let rho_max = resolve_rho_max(spec, energy, rays.theta_left, config)?;
        let y0 = seed(spec, energy, rays.theta_left, rho_max)?;
        let path: Vec<Complex64> = match_path(spec, energy, rays.theta_right, rho_max, config.match_point)?
            .into_iter()
            .map(|x| -x.conj())
            .collect();
        integrate_path(spec, energy, &path, y0, config)?
    };
    let scale = (left.log_scale - right.log_scale).exp();
    let w = (left.psi * right.dpsi_dx - left.dpsi_dx * right.psi) * scale;
    Ok(w / (right.psi.norm_sqr() + right.dpsi_dx.norm_sqr() + f64::MIN_POSITIVE))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SpectrumWarning {
    /// Root whose WKB quantum number is not close to an integer.
    Unlabeled { value: f64, quantum_number: f64 },
    /// Several roots rounded to the same label.
    Collision { n: usize, values: Vec<f64> },
    /// No root was found for this label.
    Missing { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootingSpectrum {
    pub rays: RayPair,
    pub levels: Vec<EnergyLevel>,
    pub warnings: Vec<SpectrumWarning>,
    pub scan_points: usize,
}

fn evaluate_grid(
    spec: &PotentialSpec,
    grid: &[f64],
    theta: f64,
    config: &ShootingConfig,
) -> Result<Vec<f64>> {
    let threads = config.threads.max(1).min(grid.len().max(1));
    if threads == 1 {
        return grid.iter().map(|&e| matching(spec, e, theta, config)).collect();
    }
    let chunk = grid.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|&e| matching(spec, e, theta, config)).collect::<Result<Vec<f64>>>()))
            .collect();
        let mut out = Vec::with_capacity(grid.len());
        for h in handles {
            out.extend(h.join().expect("scan worker panicked")?);
        }
        Ok(out)
    })
}

/// Energy grid from `lo` to `hi` with steps of `fraction` WKB spacings.
fn scan_grid(wkb: &RayWkb, lo: f64, hi: f64, fraction: f64) -> Vec<f64> {
    let mut grid = vec![lo];
    let mut e = lo;
    while e < hi {
        e += fraction * wkb.spacing(e);
        grid.push(e.min(hi));
    }
    grid
}

fn bisect(
    spec: &PotentialSpec,
    theta: f64,
    config: &ShootingConfig,
    (mut lo, mut f_lo): (f64, f64),
    (mut hi, _): (f64, f64),
) -> Result<(f64, f64)> {
    for _ in 0..config.max_bisections {
        if hi - lo <= config.root_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = matching(spec, mid, theta, config)?;
        if f_mid == 0.0 {
            return Ok((mid, 0.0));
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), hi - lo))
}

/// Levels `0..=n_max` of the problem posed on `rays`.
///
/// The scan covers `[0.1 E_0, 1.5 E_{n_max}]` of the WKB model attached to
/// the right ray. Every sign change of [`matching`] is refined by bisection
/// and labelled through the WKB quantum number.
pub fn find_eigenvalues(
    spec: &PotentialSpec,
    rays: RayPair,
    n_max: usize,
    config: &ShootingConfig,
) -> Result<ShootingSpectrum> {
    config.validate()?;
    let wkb = RayWkb::new(spec, rays.theta_right)?;
    let lo = 0.1 * wkb.energy(0.0);
    let hi = 1.5 * wkb.energy(n_max as f64);
    if let RhoMax::Fixed(r) = config.rho_max {
        let action = decay_action(spec, hi, rays.theta_right, r);
        if action < MIN_DECAY_ACTION {
            return Err(Error::RayTooShort { rho_max: r, action, required: MIN_DECAY_ACTION, energy: hi });
        }
    }

    let grid = scan_grid(&wkb, lo, hi, config.scan_step);
    let values = evaluate_grid(spec, &grid, rays.theta_right, config)?;

    let brackets: Vec<((f64, f64), (f64, f64))> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, f)| f[0] != 0.0 && (f[0] > 0.0) != (f[1] > 0.0))
        .map(|(e, f)| ((e[0], f[0]), (e[1], f[1])))
        .collect();
    let mut roots: Vec<(f64, f64)> = grid
        .iter()
        .zip(&values)
        .filter(|(_, f)| **f == 0.0)
        .map(|(e, _)| (*e, 0.0))
        .collect();
    for (a, b) in brackets {
        roots.push(bisect(spec, rays.theta_right, config, a, b)?);
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots.dedup_by(|a, b| (a.0 - b.0).abs() <= 2.0 * config.root_tol);

    let mut warnings = Vec::new();
    let mut by_label: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for (value, width) in roots {
        let q = wkb.quantum_number(value);
        match label(q) {
            Some(n) => by_label.entry(n).or_default().push((value, width)),
            None => {
                if q < n_max as f64 + 0.5 {
                    warnings.push(SpectrumWarning::Unlabeled { value, quantum_number: q });
                }
            }
        }
    }
    let mut levels = Vec::new();
    for n in 0..=n_max {
        match by_label.get(&n).map(Vec::as_slice) {
            None | Some([]) => warnings.push(SpectrumWarning::Missing { n }),
            Some([(value, width)]) => levels.push(EnergyLevel {
                n,
                value: *value,
                method: Method::Shooting,
                err_estimate: *width,
            }),
            Some(many) => {
                warnings.push(SpectrumWarning::Collision { n, values: many.iter().map(|r| r.0).collect() });
                let (value, width) = many[0];
                levels.push(EnergyLevel { n, value, method: Method::Shooting, err_estimate: width });
            }
        }
    }
    Ok(ShootingSpectrum { rays, levels, warnings, scan_points: grid.len() })
}
