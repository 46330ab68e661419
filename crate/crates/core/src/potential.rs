//! The potential family `V(x) = s * x^(2M) * (ix)^eps + i*b*x`.
//!
//! Exponents are integers, so every power is a product of complex scalars and
//! no branch cut is ever chosen.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub m: u32,
    pub epsilon: u32,
    pub sign: Sign,
    /// Coefficient of the `i*b*x` term.
    pub b: f64,
}

impl PotentialSpec {
    pub fn new(m: u32, epsilon: u32, sign: Sign, b: f64) -> Result<Self> {
        let spec = Self { m, epsilon, sign, b };
        if spec.degree() < 2 {
            return Err(Error::InvalidParameter(format!(
                "degree 2M + eps must be at least 2 (M = {m}, eps = {epsilon})"
            )));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!("b must be finite, got {b}")));
        }
        Ok(spec)
    }

    /// `(ix)^k`.
    pub fn ix_power(k: u32) -> Self {
        Self { m: 0, epsilon: k, sign: Sign::Plus, b: 0.0 }
    }

    /// `-(ix)^k` in canonical form, `x^2 (ix)^(k-2)`.
    pub fn neg_ix_power(k: u32) -> Self {
        Self { m: 0, epsilon: k, sign: Sign::Minus, b: 0.0 }.canonicalize()
    }

    /// Polynomial degree `K = 2M + eps`.
    pub fn degree(&self) -> u32 {
        2 * self.m + self.epsilon
    }

    /// Leading coefficient `c` in `V(x) ~ c x^K`, i.e. `s * i^eps`.
    pub fn leading_coefficient(&self) -> Complex64 {
        I.powu(self.epsilon) * self.sign.value()
    }

    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        let monomial = x.powu(2 * self.m) * (I * x).powu(self.epsilon);
        monomial * self.sign.value() + I * x * self.b
    }

    pub fn derivative(&self, x: Complex64) -> Complex64 {
        let k = self.degree();
        self.leading_coefficient() * x.powu(k - 1) * k as f64 + I * self.b
    }

    /// Rewrites `-x^(2M) (ix)^eps` as `x^(2M+2) (ix)^(eps-2)` when possible.
    pub fn canonicalize(&self) -> Self {
        if self.sign == Sign::Minus && self.epsilon >= 2 {
            Self { m: self.m + 1, epsilon: self.epsilon - 2, sign: Sign::Plus, b: self.b }
        } else {
            *self
        }
    }

    /// All `(M, eps, s)` triples that describe the same polynomial.
    pub fn representations(&self) -> Vec<Self> {
        let k = self.degree();
        let c = self.leading_coefficient();
        let mut out = Vec::new();
        for eps in (0..=k).rev() {
            if !(k - eps).is_multiple_of(2) {
                continue;
            }
            let m = (k - eps) / 2;
            for sign in [Sign::Plus, Sign::Minus] {
                let cand = Self { m, epsilon: eps, sign, b: self.b };
                if (cand.leading_coefficient() - c).norm() < 1e-12 {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// True when both specs are the same polynomial.
    pub fn same_potential(&self, other: &Self) -> bool {
        self.degree() == other.degree()
            && self.b == other.b
            && (self.leading_coefficient() - other.leading_coefficient()).norm() < 1e-12
    }

    /// A representation with `s = +1`; prefers [`Self::canonicalize`].
    pub fn positive_form(&self) -> Self {
        let canon = self.canonicalize();
        if canon.sign == Sign::Plus {
            return canon;
        }
        self.representations()
            .into_iter()
            .find(|r| r.sign == Sign::Plus)
            .expect("degree >= 2 always admits a positive representation")
    }

    pub fn without_linear_term(&self) -> Self {
        Self { b: 0.0, ..*self }
    }

    pub fn with_sign_flipped(&self) -> Self {
        Self { sign: self.sign.flip(), ..*self }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "" };
        write!(f, "{s}x^{}(ix)^{}", 2 * self.m, self.epsilon)?;
        if self.b != 0.0 {
            write!(f, " + {}ix", self.b)?;
        }
        Ok(())
    }
}

/// Reduces an angle into `[0, 2pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Lower half plane including the real axis (`sin(angle) <= 0`).
pub fn in_lower_half(angle: f64) -> bool {
    angle.sin() <= 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurningPointSet {
    pub energy: f64,
    /// `x_j`, indexed by `j = 0..K`.
    pub points: Vec<Complex64>,
    /// Arguments of `points`, in `[0, 2pi)`.
    pub angles: Vec<f64>,
    pub pair_plus: Complex64,
    pub pair_minus: Complex64,
}

impl TurningPointSet {
    /// Pair `(x, -conj(x))` where `x` is the point whose argument is closest
    /// to `theta`.
    pub fn pair_nearest(&self, theta: f64) -> (Complex64, Complex64) {
        let dist = |a: f64| {
            let d = reduce_angle(a - theta);
            d.min(TAU - d)
        };
        let x = self
            .points
            .iter()
            .zip(&self.angles)
            .min_by(|a, b| dist(*a.1).total_cmp(&dist(*b.1)))
            .map(|(p, _)| *p)
            .expect("at least two turning points");
        (x, -x.conj())
    }
}

/// Roots of `E - x^(2M) (ix)^eps = 0`,
/// `x_j = exp(-i pi (eps - 4j) / (2K)) E^(1/K)`.
pub fn turning_points(spec: &PotentialSpec, energy: f64) -> Result<TurningPointSet> {
    if spec.sign != Sign::Plus || spec.b != 0.0 {
        return Err(Error::NonCanonical { sign: spec.sign.as_i8(), b: spec.b });
    }
    if !(energy > 0.0) {
        return Err(Error::InvalidParameter(format!("energy must be positive, got {energy}")));
    }
    let k = spec.degree();
    let radius = energy.powf(1.0 / k as f64);
    let eps = spec.epsilon as f64;
    let angles: Vec<f64> = (0..k)
        .map(|j| reduce_angle(-PI * (eps - 4.0 * j as f64) / (2.0 * k as f64)))
        .collect();
    let points: Vec<Complex64> = angles.iter().map(|&a| Complex64::from_polar(radius, a)).collect();
    let pair_plus = points[0];
    Ok(TurningPointSet { energy, points, angles, pair_plus, pair_minus: -pair_plus.conj() })
}

/// Samples `n` pseudo-random points in `[-2, 2]^2` with a fixed seed.
pub fn sample_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect()
}

/// PT symmetry test `conj(V(-conj x)) == V(x)` for an arbitrary function.
pub fn pt_check_fn(v: impl Fn(Complex64) -> Complex64, n_samples: usize) -> bool {
    sample_points(n_samples.max(1), 0x5eed)
        .into_iter()
        .all(|x| {
            let vx = v(x);
            (v(-x.conj()).conj() - vx).norm() < 1e-12 * (1.0 + vx.norm())
        })
}

pub fn pt_check(spec: &PotentialSpec, n_samples: usize) -> bool {
    pt_check_fn(|x| spec.evaluate(x), n_samples)
}
