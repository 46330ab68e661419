//! Eigenvalues of PT-symmetric anharmonic oscillators
//!
//! The Hamiltonian is `H = p^2 + V(x)` with
//! `V(x) = s * x^(2M) * (ix)^eps + i*b*x`. Three independent routes to the
//! spectrum are provided:
//!
//! * [`wkb`]: leading-order semiclassical closed forms and a numeric check of
//!   the quantization integral between a pair of complex turning points,
//! * [`shooting`]: numerical integration of the Schrödinger equation along a
//!   PT-mirrored pair of anti-Stokes rays, matched on the imaginary axis,
//! * [`diag`]: diagonalization in a harmonic-oscillator basis.
//!
//! [`stokes`] classifies the asymptotic directions of the potential and picks
//! the ray pairs; different pairs define different eigenvalue problems for the
//! same potential.
//!
//! ```
//! use ptspectra::{potential::PotentialSpec, wkb};
//!
//! let e0 = wkb::energy_nm(0, 2);
//! assert!((e0 - 0.8906863480).abs() < 1e-9);
//! let v = PotentialSpec::ix_power(5);
//! assert_eq!(v.degree(), 5);
//! ```
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod diag;
pub mod error;
pub mod linalg;
pub mod ode;
pub mod potential;
pub mod shooting;
pub mod special;
pub mod stokes;
pub mod wkb;

mod level;

pub use error::{Error, Result};
pub use level::{EnergyLevel, Method};
pub use num_complex::Complex64;
pub use potential::{PotentialSpec, Sign};
pub use stokes::{RayPair, StokesDiagram, WedgeMode};
