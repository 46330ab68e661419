//! Diagonalization in a harmonic-oscillator basis.
//!
//! With `phi_n(x) = sqrt(alpha) h_n(alpha x)` the position operator is
//! tridiagonal and `p^2` pentadiagonal, so `H = p^2 + V(x)` is assembled from
//! powers of `X`. `X^K` is formed on a padded basis of `size + K` states and
//! truncated; this makes every kept entry exact.
//!
//! The truncated Hamiltonian is complex symmetric. Its real eigenvalues are
//! tracked over a schedule of basis sizes and only levels that have settled
//! are reported. This only reproduces the spectrum of problems whose Stokes
//! wedges contain the real axis.

use crate::error::{Error, Result};
use crate::level::{EnergyLevel, Method};
use crate::linalg::{eigenvalues, ComplexMatrix, RealMatrix};
use crate::potential::PotentialSpec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisConfig {
    pub size: usize,
    /// Inverse length scale of the oscillator functions.
    pub alpha: f64,
}

impl BasisConfig {
    pub fn new(size: usize, alpha: f64) -> Result<Self> {
        if size == 0 || !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("basis needs size >= 1 and alpha > 0 (got {size}, {alpha})")));
        }
        Ok(Self { size, alpha })
    }
}

pub fn position_matrix(size: usize, alpha: f64) -> RealMatrix {
    let scale = 1.0 / (alpha * std::f64::consts::SQRT_2);
    RealMatrix::from_fn(size, |m, n| {
        if m == n + 1 {
            ((n + 1) as f64).sqrt() * scale
        } else if n == m + 1 {
            (n as f64).sqrt() * scale
        } else {
            0.0
        }
    })
}

pub fn momentum_squared_matrix(size: usize, alpha: f64) -> RealMatrix {
    let a2 = alpha * alpha;
    RealMatrix::from_fn(size, |m, n| {
        if m == n {
            a2 * (2 * n + 1) as f64 / 2.0
        } else if m == n + 2 {
            -a2 * (((n + 1) * (n + 2)) as f64).sqrt() / 2.0
        } else if n == m + 2 {
            -a2 * (((m + 1) * (m + 2)) as f64).sqrt() / 2.0
        } else {
            0.0
        }
    })
}

/// `<m| x^power |n>` for `m, n < size`.
pub fn position_power(size: usize, alpha: f64, power: u32) -> RealMatrix {
    let work = size + power as usize;
    let x = position_matrix(work, alpha);
    let mut acc = RealMatrix::identity(work);
    for _ in 0..power {
        acc = x.matmul(&acc);
    }
    let t = acc.truncated(size);
    // the product is symmetric up to rounding; pin it exactly
    RealMatrix::from_fn(size, |i, j| 0.5 * (t[(i, j)] + t[(j, i)]))
}

/// `H = P^2 + s i^eps X^K + i b X`.
pub fn build_hamiltonian(spec: &PotentialSpec, basis: &BasisConfig) -> ComplexMatrix {
    let n = basis.size;
    let mut h = momentum_squared_matrix(n, basis.alpha).to_complex();
    let xk = position_power(n, basis.alpha, spec.degree());
    h.add_scaled_real(&xk, spec.leading_coefficient());
    if spec.b != 0.0 {
        h.add_scaled_real(&position_matrix(n, basis.alpha), Complex64::new(0.0, spec.b));
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagConfig {
    pub alpha: f64,
    /// Eigenvalues with `|Im| < im_tol (1 + |lambda|)` count as real.
    pub im_tol: f64,
    /// Stabilisation threshold for `n <= 5`.
    pub stab_tol: f64,
    /// Stabilisation threshold for `n > 5`.
    pub stab_tol_excited: f64,
    /// Basis sizes solved concurrently (1 = serial).
    pub threads: usize,
}

impl Default for DiagConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            im_tol: 1e-8,
            stab_tol: 1e-9,
            stab_tol_excited: 1e-6,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()).min(4),
        }
    }
}

impl DiagConfig {
    fn stab_tol_for(&self, n: usize) -> f64 {
        if n <= 5 {
            self.stab_tol
        } else {
            self.stab_tol_excited
        }
    }
}

/// A level that did not settle over the size schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Unstable {
    pub n: usize,
    /// Value at the largest size, if a real eigenvalue with this index exists.
    pub value: Option<f64>,
    pub change: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagSpectrum {
    pub sizes: Vec<usize>,
    /// Real eigenvalues in ascending order, per basis size.
    pub real_eigenvalues: Vec<Vec<f64>>,
    /// Stabilised levels.
    pub levels: Vec<EnergyLevel>,
    pub unstable: Vec<Unstable>,
}

impl DiagSpectrum {
    /// The `n`-th real eigenvalue at the largest basis size, stabilised or not.
    pub fn largest_size_value(&self, n: usize) -> Option<f64> {
        self.real_eigenvalues.last().and_then(|v| v.get(n).copied())
    }

    pub fn level(&self, n: usize) -> Option<&EnergyLevel> {
        self.levels.iter().find(|l| l.n == n)
    }
}

/// Real eigenvalues of `H` at one basis size, ascending.
pub fn real_eigenvalues(spec: &PotentialSpec, basis: &BasisConfig, im_tol: f64) -> Result<Vec<f64>> {
    let h = build_hamiltonian(spec, basis);
    let mut real: Vec<f64> = eigenvalues(&h)?
        .into_iter()
        .filter(|z| z.im.abs() < im_tol * (1.0 + z.norm()))
        .map(|z| z.re)
        .collect();
    real.sort_by(f64::total_cmp);
    Ok(real)
}

/// Levels `0..=n_max` that settle across the last two sizes of `sizes`.
pub fn real_spectrum(spec: &PotentialSpec, sizes: &[usize], config: &DiagConfig, n_max: usize) -> Result<DiagSpectrum> {
    if sizes.len() < 3 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("need at least three ascending basis sizes, got {sizes:?}")));
    }
    let k = spec.degree() as usize;
    if sizes[0] < k + 2 {
        return Err(Error::InvalidParameter(format!("basis size {} is below K + 2 = {}", sizes[0], k + 2)));
    }
    let bases: Vec<BasisConfig> = sizes.iter().map(|&s| BasisConfig::new(s, config.alpha)).collect::<Result<_>>()?;
    let solve = |b: &BasisConfig| real_eigenvalues(spec, b, config.im_tol);
    let per_size: Vec<Vec<f64>> = if config.threads > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = bases.iter().map(|b| s.spawn(move || solve(b))).collect();
            handles.into_iter().map(|h| h.join().expect("eigensolver thread panicked")).collect::<Result<_>>()
        })?
    } else {
        bases.iter().map(solve).collect::<Result<_>>()?
    };

    let last = &per_size[per_size.len() - 1];
    let prev = &per_size[per_size.len() - 2];
    let mut levels = Vec::new();
    let mut unstable = Vec::new();
    for n in 0..=n_max {
        match (last.get(n), prev.get(n)) {
            (Some(&v), Some(&p)) => {
                let change = (v - p).abs();
                if change < config.stab_tol_for(n) * (1.0 + v.abs()) {
                    levels.push(EnergyLevel { n, value: v, method: Method::Diagonalization, err_estimate: change });
                } else {
                    unstable.push(Unstable { n, value: Some(v), change: Some(change) });
                }
            }
            (v, _) => unstable.push(Unstable { n, value: v.copied(), change: None }),
        }
    }
    Ok(DiagSpectrum { sizes: sizes.to_vec(), real_eigenvalues: per_size, levels, unstable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Sign;
    use std::f64::consts::SQRT_2;

    #[test]
    fn position_examples() {
        let x = position_matrix(2, 1.0);
        assert_eq!(x.as_slice(), &[0.0, 1.0 / SQRT_2, 1.0 / SQRT_2, 0.0]);
        let x1 = position_matrix(7, 1.0);
        let x3 = position_matrix(7, 3.0);
        for (a, b) in x1.as_slice().iter().zip(x3.as_slice()) {
            assert!((a / 3.0 - b).abs() < 1e-15);
        }
    }

    #[test]
    fn position_squared_diagonal() {
        for alpha in [0.5, 1.0, 2.0] {
            let x2 = position_power(10, alpha, 2);
            for n in 0..10 {
                let expected = (2 * n + 1) as f64 / (2.0 * alpha * alpha);
                assert!((x2[(n, n)] - expected).abs() < 1e-13 * expected);
            }
        }
    }

    #[test]
    fn momentum_examples() {
        assert_eq!(momentum_squared_matrix(1, 1.0).as_slice(), &[0.5]);
        let p1 = momentum_squared_matrix(6, 1.0);
        let p2 = momentum_squared_matrix(6, 1.7);
        for (a, b) in p1.as_slice().iter().zip(p2.as_slice()) {
            assert!((a * 1.7 * 1.7 - b).abs() < 1e-14);
        }
        // p^2 + x^2 is diagonal with entries 2n + 1
        let h = build_hamiltonian(&PotentialSpec::new(1, 0, Sign::Plus, 0.0).unwrap(), &BasisConfig::new(6, 1.0).unwrap());
        for m in 0..6 {
            for n in 0..6 {
                let expected = if m == n { (2 * n + 1) as f64 } else { 0.0 };
                assert!((h[(m, n)] - expected).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn truncated_power_is_exact() {
        // <0|x^4|0> = 3/4 and <0|x^4|4> = sqrt(24)/4 at alpha = 1
        let x4 = position_power(3, 1.0, 4);
        assert!((x4[(0, 0)] - 0.75).abs() < 1e-14);
        let x4 = position_power(5, 1.0, 4);
        assert!((x4[(0, 4)] - 24f64.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_symmetric() {
        for spec in [PotentialSpec::ix_power(5), PotentialSpec { b: 0.7, ..PotentialSpec::neg_ix_power(5) }] {
            let h = build_hamiltonian(&spec, &BasisConfig::new(40, 1.3).unwrap());
            assert_eq!(h.max_asymmetry(), 0.0);
        }
    }

    #[test]
    fn harmonic_spectrum_is_exact() {
        let ho = PotentialSpec::new(1, 0, Sign::Plus, 0.0).unwrap();
        let s = real_spectrum(&ho, &[20, 30, 40], &DiagConfig::default(), 5).unwrap();
        assert!(s.unstable.is_empty());
        for l in &s.levels {
            assert!((l.value - (2 * l.n + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn low_levels_do_not_depend_on_alpha() {
        let spec = PotentialSpec::ix_power(5);
        let sizes = [80, 120, 160, 200];
        let reference = real_spectrum(&spec, &sizes, &DiagConfig::default(), 3).unwrap();
        for alpha in [0.8, 1.5] {
            let s = real_spectrum(&spec, &sizes, &DiagConfig { alpha, ..DiagConfig::default() }, 3).unwrap();
            for n in 0..=3 {
                let (a, b) = (s.largest_size_value(n).unwrap(), reference.largest_size_value(n).unwrap());
                assert!((a - b).abs() < 1e-6 * b, "n={n} alpha={alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn off_axis_spectrum_is_not_reached() {
        let s = real_spectrum(&PotentialSpec::neg_ix_power(5), &[80, 120, 160, 200], &DiagConfig::default(), 6).unwrap();
        assert!(!s.levels.is_empty());
        for l in &s.levels {
            assert!((l.value - 1.908264578).abs() > 1e-2 * 1.908264578);
        }
    }

    #[test]
    fn rejects_short_schedule() {
        let ho = PotentialSpec::new(1, 0, Sign::Plus, 0.0).unwrap();
        assert!(real_spectrum(&ho, &[10, 20], &DiagConfig::default(), 2).is_err());
        assert!(real_spectrum(&ho, &[10, 30, 20], &DiagConfig::default(), 2).is_err());
        assert!(BasisConfig::new(0, 1.0).is_err());
    }
}
