use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("turning points need a canonical spec with s = +1 and b = 0 (got s = {sign}, b = {b})")]
    NonCanonical { sign: i8, b: f64 },

    #[error("E - V(x) vanishes inside the integration segment near t = {t}")]
    DegeneratePath { t: f64 },

    #[error("quantization integral has imaginary part {im:e} (real part {re})")]
    ComplexAction { re: f64, im: f64 },

    #[error("step size underflow at rho = {rho}")]
    StepUnderflow { rho: f64 },

    #[error("seed branch is ambiguous: |V - E| = {magnitude:e} at rho_max")]
    AmbiguousSeed { magnitude: f64 },

    #[error("rho_max = {rho_max} gives decay action {action:.3} < {required} at E = {energy}")]
    RayTooShort { rho_max: f64, action: f64, required: f64, energy: f64 },

    #[error("no PT-mirrored anti-Stokes pair available")]
    NoRayPair,

    #[error("line trace ran into the turning point at {point} after arc length {arc:.4}")]
    TraceCollision { point: num_complex::Complex64, arc: f64 },

    #[error("QR iteration failed to converge; unconverged rows {rows:?}")]
    NoConvergence { rows: Vec<usize> },
}
