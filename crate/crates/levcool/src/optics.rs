//! Dyadic Green function, near/far-field tensors, and dipole-dipole optical
//! binding forces.
//!
//! The "exact" force is the full closed form carrying all three orders in
//! 1/r0 of the dipole Green function; the far-field variant keeps only the
//! highest orders in k·R0. Both are evaluated from closed forms; the gradient
//! of the interaction energy is kept as a test-only cross check.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use thiserror::Error;

use crate::constants::EPS0;

#[derive(Debug, Error, PartialEq)]
pub enum OpticsError {
    #[error("coincident dipoles: zero separation")]
    CoincidentDipoles,
    #[error("invalid scan range: {0}")]
    InvalidRange(String),
}

/// Near-field tensor M_n(r) = (3 r r^T - r^2 I)/r^2; satisfies M_n(r)·r = 2r.
pub fn near_tensor(r: Vector3<f64>) -> Matrix3<f64> {
    let r2 = r.norm_squared();
    (3.0 * r * r.transpose() - r2 * Matrix3::identity()) / r2
}

/// Far-field tensor M_f(r) = (r^2 I - r r^T)/r^2; transverse: M_f(r)·r = 0.
pub fn far_tensor(r: Vector3<f64>) -> Matrix3<f64> {
    let r2 = r.norm_squared();
    (r2 * Matrix3::identity() - r * r.transpose()) / r2
}

/// Free-space dyadic Green tensor between two dipoles separated by `r0`,
/// at wave number `k0`:
///
/// ```text
/// G(r0) = e^{i k0 r0} / (4 pi eps0 r0)
///         [ (1 - i k0 r0)/r0^2 (3 rhat rhat - I) + k0^2 (I - rhat rhat) ]
/// ```
///
/// Even in its argument: G(r0) = G(-r0).
pub fn green_tensor(r0: Vector3<f64>, k0: f64) -> Result<Matrix3<Complex64>, OpticsError> {
    let r = r0.norm();
    if !(r > 0.0) {
        return Err(OpticsError::CoincidentDipoles);
    }
    let kr = k0 * r;
    let pre = Complex64::new(0.0, kr).exp() / (4.0 * std::f64::consts::PI * EPS0 * r);
    let near = Complex64::new(1.0, -kr) / (r * r);
    let mn = near_tensor(r0);
    let mf = far_tensor(r0);
    Ok(Matrix3::from_fn(|i, j| pre * (near * mn[(i, j)] + k0 * k0 * mf[(i, j)])))
}

/// Which force expression produced a [`BindingForce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceVariant {
    Exact,
    FarField,
}

/// Optical binding force on particle 1 for the on-axis, y-polarized
/// configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BindingForce {
    /// N
    pub fx: f64,
    pub fy: f64,
    pub fz: f64,
    /// Evaluation separation (m).
    pub separation: f64,
    pub variant: ForceVariant,
}

fn force_prefactor(alpha: f64, e10: f64, e20: f64, r0: f64) -> f64 {
    alpha * alpha * e10 * e20 / (8.0 * std::f64::consts::PI * EPS0 * r0.powi(4))
}

/// Full dipole-Green-function binding force:
///
/// ```text
/// Fx = pref [ 3 cos u + 3 u sin u - 2 u^2 cos u - u^3 sin u ],  u = k R0
/// Fy = 0
/// Fz = pref [ -u sin u + u^2 cos u + u^3 sin u ]
/// ```
pub fn binding_force_exact(
    e10: f64,
    e20: f64,
    r0: f64,
    k_tw: f64,
    alpha: f64,
) -> Result<BindingForce, OpticsError> {
    if !(r0 > 0.0) {
        return Err(OpticsError::CoincidentDipoles);
    }
    let u = k_tw * r0;
    let (s, c) = u.sin_cos();
    let pref = force_prefactor(alpha, e10, e20, r0);
    Ok(BindingForce {
        fx: pref * (3.0 * c + 3.0 * u * s - 2.0 * u * u * c - u * u * u * s),
        fy: 0.0,
        fz: pref * (-u * s + u * u * c + u * u * u * s),
        separation: r0,
        variant: ForceVariant::Exact,
    })
}

/// Far-field binding force: only the u^2 cos and u^3 sin terms survive,
/// i.e. the force derived from the 1/r0 part of the Green function alone.
pub fn binding_force_farfield(
    e10: f64,
    e20: f64,
    r0: f64,
    k_tw: f64,
    alpha: f64,
) -> Result<BindingForce, OpticsError> {
    if !(r0 > 0.0) {
        return Err(OpticsError::CoincidentDipoles);
    }
    let u = k_tw * r0;
    let (s, c) = u.sin_cos();
    let pref = force_prefactor(alpha, e10, e20, r0);
    Ok(BindingForce {
        fx: pref * (-2.0 * u * u * c - u * u * u * s),
        fy: 0.0,
        fz: pref * (u * u * c + u * u * u * s),
        separation: r0,
        variant: ForceVariant::FarField,
    })
}

/// One row of a force scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceScanRow {
    /// Separation in units of the tweezer wavelength.
    pub r0_over_lambda: f64,
    pub fx_exact: f64,
    pub fx_farfield: f64,
    pub fz_exact: f64,
    pub fz_farfield: f64,
}

/// Inputs for a force scan: field amplitudes at the two foci and the tweezer
/// wave number / wavelength.
#[derive(Debug, Clone, Copy)]
pub struct ForceScanParams {
    pub e10: f64,
    pub e20: f64,
    pub alpha: f64,
    pub wavelength: f64,
}

/// Evaluate exact and far-field forces over a uniform grid of R0/lambda.
pub fn force_scan(
    range: (f64, f64),
    n_points: usize,
    params: &ForceScanParams,
) -> Result<Vec<ForceScanRow>, OpticsError> {
    let (lo, hi) = range;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(OpticsError::InvalidRange(format!("[{lo}, {hi}] not a positive interval")));
    }
    if n_points < 2 {
        return Err(OpticsError::InvalidRange(format!("need >= 2 points, got {n_points}")));
    }
    let k_tw = 2.0 * std::f64::consts::PI / params.wavelength;
    let step = (hi - lo) / (n_points - 1) as f64;
    let mut rows = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let scaled = lo + step * i as f64;
        let r0 = scaled * params.wavelength;
        let ex = binding_force_exact(params.e10, params.e20, r0, k_tw, params.alpha)?;
        let ff = binding_force_farfield(params.e10, params.e20, r0, k_tw, params.alpha)?;
        rows.push(ForceScanRow {
            r0_over_lambda: scaled,
            fx_exact: ex.fx,
            fx_farfield: ff.fx,
            fz_exact: ex.fz,
            fz_farfield: ff.fz,
        });
    }
    Ok(rows)
}
