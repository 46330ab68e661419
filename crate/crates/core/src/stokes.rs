//! Asymptotic Stokes geometry.
//!
//! Convention used throughout: an *anti-Stokes* direction is one along which
//! the WKB exponent `int sqrt(V) dx` is real at infinity, so solutions grow or
//! decay purely exponentially (the centres of the Stokes wedges). A *Stokes*
//! direction is one along which the exponent is imaginary; solutions
//! oscillate there and these directions bound the wedges.
//!
//! With `V ~ s i^eps x^K`, the exponent phase on the ray `arg x = theta` is
//! `(K+2) theta / 2 + phi0`, `phi0 = eps pi/4 + (1 - s) pi/4`. Every angle is
//! an integer multiple of `pi / (2(K+2))`, which is how they are stored.

use crate::error::{Error, Result};
use crate::potential::{reduce_angle, turning_points, PotentialSpec, Sign};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    Stokes,
    AntiStokes,
}

impl LineKind {
    pub fn other(self) -> Self {
        match self {
            LineKind::Stokes => LineKind::AntiStokes,
            LineKind::AntiStokes => LineKind::Stokes,
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineKind::Stokes => "stokes",
            LineKind::AntiStokes => "antistokes",
        })
    }
}

/// An asymptotic direction `angle = numerator * pi / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLine {
    pub angle: f64,
    pub kind: LineKind,
    pub numerator: i64,
    pub denominator: i64,
}

impl AsymptoticLine {
    fn new(numerator: i64, denominator: i64, kind: LineKind) -> Self {
        let numerator = numerator.rem_euclid(2 * denominator);
        Self { angle: PI * numerator as f64 / denominator as f64, kind, numerator, denominator }
    }

    /// `(p, q)` with `angle = p pi / q` in lowest terms.
    pub fn pi_fraction(&self) -> (i64, i64) {
        let g = gcd(self.numerator, self.denominator);
        (self.numerator / g, self.denominator / g)
    }

    /// Numerator over a requested denominator, when exact.
    pub fn numerator_over(&self, denominator: i64) -> Option<i64> {
        let scaled = self.numerator * denominator;
        (scaled % self.denominator == 0).then(|| scaled / self.denominator)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Formats `p pi / q` as `17pi/14`, `pi/2`, `0`.
pub fn format_pi_fraction(p: i64, q: i64) -> String {
    match (p, q) {
        (0, _) => "0".to_string(),
        (1, 1) => "pi".to_string(),
        (p, 1) => format!("{p}pi"),
        (1, q) => format!("pi/{q}"),
        (p, q) => format!("{p}pi/{q}"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesDiagram {
    pub degree: u32,
    /// Sorted by angle.
    pub lines: Vec<AsymptoticLine>,
}

impl StokesDiagram {
    pub fn of_kind(&self, kind: LineKind) -> impl Iterator<Item = &AsymptoticLine> {
        self.lines.iter().filter(move |l| l.kind == kind)
    }

    pub fn antistokes(&self) -> impl Iterator<Item = &AsymptoticLine> {
        self.of_kind(LineKind::AntiStokes)
    }

    pub fn stokes(&self) -> impl Iterator<Item = &AsymptoticLine> {
        self.of_kind(LineKind::Stokes)
    }

    /// Kind of the direction `numerator * pi / denominator`, if it is one.
    pub fn classify(&self, numerator: i64, denominator: i64) -> Option<LineKind> {
        self.lines
            .iter()
            .find(|l| {
                l.numerator_over(denominator)
                    .is_some_and(|p| p.rem_euclid(2 * denominator) == numerator.rem_euclid(2 * denominator))
            })
            .map(|l| l.kind)
    }

    /// Kind of the direction nearest to `angle` and the distance to it.
    pub fn nearest(&self, angle: f64) -> (&AsymptoticLine, f64) {
        self.lines
            .iter()
            .map(|l| (l, angle_distance(l.angle, angle)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("diagram is never empty")
    }

    pub fn is_antistokes(&self, angle: f64) -> bool {
        let (l, d) = self.nearest(angle);
        l.kind == LineKind::AntiStokes && d < 1e-9
    }
}

pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = reduce_angle(a - b);
    d.min(TAU - d)
}

pub fn asymptotic_lines(spec: &PotentialSpec) -> StokesDiagram {
    let k = spec.degree() as i64;
    let eps = spec.epsilon as i64;
    let shift = eps + if spec.sign == Sign::Minus { 2 } else { 0 };
    let denominator = 2 * (k + 2);
    let mut lines = Vec::with_capacity(2 * (k as usize + 2));
    for j in 0..(k + 2) {
        lines.push(AsymptoticLine::new(4 * j - shift, denominator, LineKind::AntiStokes));
        lines.push(AsymptoticLine::new(4 * j + 2 - shift, denominator, LineKind::Stokes));
    }
    lines.sort_by_key(|l| l.numerator);
    StokesDiagram { degree: spec.degree(), lines }
}

/// A PT-mirrored pair of rays, `theta_left = pi - theta_right`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayPair {
    pub theta_right: f64,
    pub theta_left: f64,
}

impl RayPair {
    pub fn mirrored(theta_right: f64) -> Self {
        Self { theta_right: reduce_angle(theta_right), theta_left: reduce_angle(PI - theta_right) }
    }
}

/// Rays `arg z = -pi/2 +- 2pi/(m+2)` on which `-(iz)^m` eigenfunctions decay.
pub fn bb_rays(m: u32) -> RayPair {
    let d = TAU / (m as f64 + 2.0);
    RayPair { theta_right: reduce_angle(-PI / 2.0 + d), theta_left: reduce_angle(-PI / 2.0 - d) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WedgeMode {
    /// Rays closest to the real axis; their wedges contain it.
    ContainsRealAxis,
    /// The next PT-mirrored pair away from the real axis.
    OffAxis,
}

/// PT-mirrored anti-Stokes pairs ordered by their distance from the real
/// axis (`|sin theta|`). Pairs centred on adjacent wedges are skipped: they
/// share a Stokes boundary and pose no eigenvalue problem.
pub fn mirrored_pairs(spec: &PotentialSpec) -> Vec<RayPair> {
    let diagram = asymptotic_lines(spec);
    let wedge = TAU / (spec.degree() as f64 + 2.0);
    let anti: Vec<&AsymptoticLine> = diagram.antistokes().collect();
    let d = anti[0].denominator;
    let mut pairs: Vec<(RayPair, f64)> = Vec::new();
    for line in &anti {
        if line.angle.cos() <= 0.0 {
            continue;
        }
        let mirror = (d - line.numerator).rem_euclid(2 * d);
        if mirror == line.numerator {
            continue;
        }
        if let Some(partner) = anti.iter().find(|l| l.numerator == mirror) {
            if angle_distance(line.angle, partner.angle) < wedge + 1e-12 {
                continue;
            }
            pairs.push((RayPair { theta_right: line.angle, theta_left: partner.angle }, line.angle.sin()));
        }
    }
    // ties broken toward the lower half plane
    pairs.sort_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(a.1.total_cmp(&b.1)));
    pairs.into_iter().map(|p| p.0).collect()
}

pub fn wedge_rays(spec: &PotentialSpec, mode: WedgeMode) -> Result<RayPair> {
    let pairs = mirrored_pairs(spec);
    let idx = match mode {
        WedgeMode::ContainsRealAxis => 0,
        WedgeMode::OffAxis => 1,
    };
    pairs.get(idx).copied().ok_or(Error::NoRayPair)
}

/// A traced Stokes or anti-Stokes line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub kind: LineKind,
    pub start: Complex64,
    pub branch: usize,
    pub points: Vec<Complex64>,
    /// `S = int_{start}^{x} sqrt(V - E) dx` at every point.
    pub action: Vec<Complex64>,
}

impl Polyline {
    pub fn end(&self) -> Complex64 {
        *self.points.last().expect("non-empty polyline")
    }
}

/// Turning points of the `b = 0` part of `spec`.
pub fn all_turning_points(spec: &PotentialSpec, energy: f64) -> Result<Vec<Complex64>> {
    Ok(turning_points(&spec.without_linear_term().positive_form(), energy)?.points)
}

/// Follows the line of `kind` leaving the turning point `start` along local
/// direction `branch` (0, 1 or 2) for the given arc length.
///
/// Anti-Stokes lines keep the accumulated action real, Stokes lines keep it
/// imaginary. The curve is parameterised by arc length:
/// `dx/ds = u conj(w) / |w|`, `w = sqrt(V - E)`, `u = 1` or `i`.
pub fn trace_line(
    spec: &PotentialSpec,
    energy: f64,
    start: Complex64,
    kind: LineKind,
    branch: usize,
    arc_length: f64,
) -> Result<Polyline> {
    if !(energy > 0.0) || !(arc_length > 0.0) || branch > 2 {
        return Err(Error::InvalidParameter(format!(
            "trace needs E > 0, arc length > 0 and branch < 3 (E = {energy}, arc = {arc_length}, branch = {branch})"
        )));
    }
    let tps = all_turning_points(spec, energy)?;
    let scale = energy.powf(1.0 / spec.degree() as f64);
    let residual = (spec.evaluate(start) - energy).norm();
    if residual > 1e-8 * energy.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "start {start} is not a turning point (|V - E| = {residual:e})"
        )));
    }
    let u = match kind {
        LineKind::AntiStokes => Complex64::new(1.0, 0.0),
        LineKind::Stokes => Complex64::new(0.0, 1.0),
    };

    // local geometry: V - E ~ V'(x_t) (x - x_t), S^2 ~ (4/9) V' (x - x_t)^3
    let slope = spec.derivative(start);
    let offset_phase = match kind {
        LineKind::AntiStokes => 0.0,
        LineKind::Stokes => PI,
    };
    let phi = (offset_phase + TAU * branch as f64 - slope.arg()) / 3.0;
    let heading = Complex64::from_polar(1.0, phi);
    let mut x = start + heading * (1e-4 * scale);
    let mut w = (spec.evaluate(x) - energy).sqrt();
    if (u * w.conj() / w.norm() * heading.conj()).re < 0.0 {
        w = -w;
    }
    let root = |x: Complex64, reference: Complex64| {
        let r = (spec.evaluate(x) - energy).sqrt();
        if (r - reference).norm() > (r + reference).norm() {
            -r
        } else {
            r
        }
    };
    let field = |x: Complex64, reference: Complex64| {
        let r = root(x, reference);
        (u * r.conj() / r.norm(), r)
    };

    let guard = 1e-3 * scale;
    let mut left_start = false;
    let mut s = 1e-4 * scale;
    let mut action = w * (x - start) * (2.0 / 3.0);
    let mut points = vec![start, x];
    let mut actions = vec![Complex64::new(0.0, 0.0), action];
    let h_max = arc_length / 400.0;

    while s < arc_length {
        let nearest = tps.iter().map(|p| (x - p).norm()).fold(f64::INFINITY, f64::min);
        let h = (0.02 * nearest).min(h_max).min(arc_length - s).max(1e-12);

        let (k1, w1) = field(x, w);
        let (k2, w2) = field(x + k1 * (h / 2.0), w1);
        let (k3, w3) = field(x + k2 * (h / 2.0), w2);
        let (k4, _) = field(x + k3 * h, w3);
        let next = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

        let wm = root((x + next) * 0.5, w);
        let wn = root(next, wm);
        action += (w + wm * 4.0 + wn) / 6.0 * (next - x);
        x = next;
        w = wn;
        s += h;
        points.push(x);
        actions.push(action);

        let close = tps.iter().find(|p| (x - **p).norm() < guard);
        match close {
            Some(p) if (*p - start).norm() < 1e-9 * scale => {
                if left_start {
                    return Err(Error::TraceCollision { point: *p, arc: s });
                }
            }
            Some(p) => return Err(Error::TraceCollision { point: *p, arc: s }),
            None => left_start = true,
        }
    }
    Ok(Polyline { kind, start, branch, points, action: actions })
}
