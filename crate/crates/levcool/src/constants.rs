//! Physical constants (CODATA 2018), SI units.

/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.8541878128e-12;

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299792458.0;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054571817e-34;
