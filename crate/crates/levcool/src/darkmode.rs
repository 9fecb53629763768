//! Hybrid-mode transforms and dark-mode diagnostics.
//!
//! The two-mode rotation mixes (q1, q2) -> (q+, q-) with weights G_j/G+;
//! the five-mode version hybridizes each direction sector with a complex
//! unitary built from the linearized couplings. Dark-mode detection is a
//! continuous residual: the Frobenius norm of the minus-mode's couplings to
//! everything outside its own block, measured on the drift matrix conjugated
//! into the hybrid basis.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use thiserror::Error;

use crate::models::{LinearModel, ModelKind};

#[derive(Debug, Error, PartialEq)]
pub enum DarkModeError {
    #[error("hybrid transform undefined: zero coupling norm in the {0} sector")]
    ZeroSector(&'static str),
    #[error("transform dimension {transform} does not match model dimension {model}")]
    DimensionMismatch { transform: usize, model: usize },
}

/// Two-mode hybridization data.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridTwoMode {
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Coupling of the plus mode to the cavity: sqrt(G1^2 + G2^2).
    pub g_plus: f64,
    /// Position-position and momentum-momentum couplings between the hybrid
    /// modes.
    pub g_q: f64,
    pub g_p: f64,
    /// Orthogonal rotation mapping (q1, q2) -> (q+, q-).
    pub rotation: Matrix2<f64>,
}

/// Hybridize two mechanical modes coupled to the cavity with strengths
/// G1, G2 and to each other with G_x.
pub fn hybridize_two_mode(
    omega1: f64,
    omega2: f64,
    g1: f64,
    g2: f64,
    g_x: f64,
) -> Result<HybridTwoMode, DarkModeError> {
    let norm2 = g1 * g1 + g2 * g2;
    if !(norm2 > 0.0) {
        return Err(DarkModeError::ZeroSector("mechanical"));
    }
    let g_plus = norm2.sqrt();
    Ok(HybridTwoMode {
        omega_plus: (omega1 * g1 * g1 + omega2 * g2 * g2) / norm2,
        omega_minus: (omega1 * g2 * g2 + omega2 * g1 * g1) / norm2,
        g_plus,
        g_q: ((omega2 - omega1) * g1 * g2 - g_x * (g1 * g1 - g2 * g2)) / norm2,
        g_p: (omega2 - omega1) * g1 * g2 / norm2,
        rotation: Matrix2::new(g1, g2, -g2, g1) / g_plus,
    })
}

/// Five-mode hybridization data: one complex unitary per direction sector
/// plus the decoupling-condition coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridFiveMode {
    /// Rows map (b_1x, b_2x) -> (B_1+, B_1-).
    pub x_transform: Matrix2<Complex64>,
    /// Rows map (b_1z, b_2z) -> (B_2+, B_2-).
    pub z_transform: Matrix2<Complex64>,
    pub zeta1: Complex64,
    pub zeta2: Complex64,
    pub xi1: Complex64,
    pub xi2: Complex64,
}

fn sector_unitary(ga: Complex64, gb: Complex64) -> Matrix2<Complex64> {
    let norm = (ga.norm_sqr() + gb.norm_sqr()).sqrt();
    Matrix2::new(ga / norm, gb / norm, gb.conj() / norm, -ga.conj() / norm)
}

/// Build the four-B-mode hybridization from the linearized couplings.
pub fn hybridize_five_mode(
    g_1x: Complex64,
    g_2x: Complex64,
    g_1z: Complex64,
    g_2z: Complex64,
    g_x: f64,
    g_z: f64,
) -> Result<HybridFiveMode, DarkModeError> {
    if g_1x.norm_sqr() + g_2x.norm_sqr() == 0.0 {
        return Err(DarkModeError::ZeroSector("x"));
    }
    if g_1z.norm_sqr() + g_2z.norm_sqr() == 0.0 {
        return Err(DarkModeError::ZeroSector("z"));
    }
    Ok(HybridFiveMode {
        x_transform: sector_unitary(g_1x, g_2x),
        z_transform: sector_unitary(g_1z, g_2z),
        zeta1: Complex64::from(g_x) / (2.0 * g_1x.conj()),
        zeta2: Complex64::from(g_z) / (2.0 * g_1z),
        xi1: std::f64::consts::SQRT_2 * g_1x.conj() / g_1x.norm(),
        xi2: std::f64::consts::SQRT_2 * g_1z.conj() / g_1z.norm(),
    })
}

/// Expand a complex mode-mixing 2x2 into the 4x4 real phase-space block:
/// for B_i = sum_j U_ij b_j the quadratures transform as
/// Q_i = sum_j (Re U_ij q_j - Im U_ij p_j), P_i = sum_j (Im U_ij q_j + Re U_ij p_j).
fn phase_space_block(u: &Matrix2<Complex64>) -> DMatrix<f64> {
    let mut s = DMatrix::<f64>::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            s[(2 * i, 2 * j)] = u[(i, j)].re;
            s[(2 * i, 2 * j + 1)] = -u[(i, j)].im;
            s[(2 * i + 1, 2 * j)] = u[(i, j)].im;
            s[(2 * i + 1, 2 * j + 1)] = u[(i, j)].re;
        }
    }
    s
}

/// Full phase-space transform for a three-mode model: hybrid mechanical
/// quadratures first, cavity unchanged. Orthogonal.
pub fn three_mode_transform(h: &HybridTwoMode) -> DMatrix<f64> {
    let u = h.rotation.map(Complex64::from);
    let s = phase_space_block(&u);
    let mut t = DMatrix::<f64>::identity(6, 6);
    t.view_mut((0, 0), (4, 4)).copy_from(&s);
    t
}

/// Full phase-space transform for a five-mode model: x sector, z sector,
/// cavity.
pub fn five_mode_transform(h: &HybridFiveMode) -> DMatrix<f64> {
    let sx = phase_space_block(&h.x_transform);
    let sz = phase_space_block(&h.z_transform);
    let mut t = DMatrix::<f64>::identity(10, 10);
    t.view_mut((0, 0), (4, 4)).copy_from(&sx);
    t.view_mut((4, 4), (4, 4)).copy_from(&sz);
    t
}

/// Phase-space row pairs of the candidate dark (minus) modes in the hybrid
/// ordering produced by the transforms above.
fn minus_mode_rows(kind: ModelKind) -> Vec<[usize; 2]> {
    match kind {
        ModelKind::ThreeMode => vec![[2, 3]],
        ModelKind::FiveMode => vec![[2, 3], [6, 7]],
    }
}

/// Conjugate the drift matrix by the hybrid transform and return, per minus
/// mode, the Frobenius norm of its couplings to everything outside its own
/// 2x2 block.
pub fn dark_mode_measure(
    model: &LinearModel,
    transform: &DMatrix<f64>,
) -> Result<Vec<f64>, DarkModeError> {
    let n = model.dim();
    if transform.nrows() != n || transform.ncols() != n {
        return Err(DarkModeError::DimensionMismatch { transform: transform.nrows(), model: n });
    }
    let a_h = transform * &model.drift * transform.transpose();
    let mut out = Vec::new();
    for rows in minus_mode_rows(model.kind) {
        let mut sum = 0.0;
        for &r in &rows {
            for c in 0..n {
                if !rows.contains(&c) {
                    sum += a_h[(r, c)] * a_h[(r, c)] + a_h[(c, r)] * a_h[(c, r)];
                }
            }
        }
        out.push(sum.sqrt());
    }
    Ok(out)
}

/// Covariance matrix conjugated into the hybrid basis.
pub fn hybrid_covariance(v: &DMatrix<f64>, transform: &DMatrix<f64>) -> DMatrix<f64> {
    transform * v * transform.transpose()
}

/// Phonon numbers of the hybrid modes [plus, minus] per sector, from a
/// hybrid-basis covariance.
pub fn hybrid_phonon_numbers(v_hybrid: &DMatrix<f64>, kind: ModelKind) -> Vec<f64> {
    let pairs: &[[usize; 2]] = match kind {
        ModelKind::ThreeMode => &[[0, 1], [2, 3]],
        ModelKind::FiveMode => &[[0, 1], [2, 3], [4, 5], [6, 7]],
    };
    pairs
        .iter()
        .map(|[q, p]| 0.5 * (v_hybrid[(*q, *q)] + v_hybrid[(*p, *p)] - 1.0))
        .collect()
}
