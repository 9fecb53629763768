//! Linearized Langevin models: drift matrix, noise matrix, and the
//! semiclassical fixed point feeding the five-mode linearization.
//!
//! Basis orderings are fixed once and transcribed entry-for-entry:
//!
//! - three-mode: (dq1, dp1, dq2, dp2, dX, dY)
//! - five-mode:  (dq1x, dp1x, dq2x, dp2x, dq1z, dp1z, dq2z, dp2z, dX, dY)
//!
//! The five-mode coefficient matrix keeps the printed sign pattern as is,
//! including the +sqrt(2) B_j entries in the x-momentum rows against the
//! -sqrt(2) D_j entries in the z-momentum rows.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::params::DerivedParams;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("non-finite parameter: {0}")]
    NonFinite(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("all optomechanical couplings vanish; pass allow_uncoupled to build anyway")]
    Uncoupled,
    #[error("particle {0} is untrapped; model would have singular zero-point scales")]
    Untrapped(usize),
    #[error("three-mode reduction requires node placement (|sin(k D/2)| = 1); {0}")]
    NotAtNodes(String),
    #[error("semiclassical iteration diverged after {iterations} iterations")]
    SemiclassicalDiverged { iterations: usize },
    #[error("semiclassical iteration did not converge: residual {residual:.3e} after {iterations} iterations")]
    SemiclassicalStalled { iterations: usize, residual: f64 },
    #[error("drift matrix violates the model sparsity pattern at ({0}, {1})")]
    Structure(usize, usize),
}

/// Parameters of the three-mode model (cavity + two x modes), rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeModeParams {
    pub omega1: f64,
    pub omega2: f64,
    /// Scaled cavity couplings G_j = sqrt(2) g_j x_{j,zpf}.
    pub g1: f64,
    pub g2: f64,
    /// Scaled position-position coupling G_x = 2 k_x x_{1,zpf} x_{2,zpf} / hbar.
    pub g_x: f64,
    /// Scaled displacement drives R_j = sqrt(2) R x_{j,zpf}; they shift
    /// equilibria only and do not enter the fluctuation matrices.
    pub r1: f64,
    pub r2: f64,
    pub detuning: f64,
    pub kappa: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub n_th1: f64,
    pub n_th2: f64,
    /// Permit a model in which neither mechanical mode couples to the cavity.
    pub allow_uncoupled: bool,
}

impl ThreeModeParams {
    fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("g1", self.g1),
            ("g2", self.g2),
            ("g_x", self.g_x),
            ("r1", self.r1),
            ("r2", self.r2),
            ("detuning", self.detuning),
            ("kappa", self.kappa),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("n_th1", self.n_th1),
            ("n_th2", self.n_th2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name.to_string()));
            }
        }
        if !(self.omega1 > 0.0 && self.omega2 > 0.0) {
            return Err(ModelError::Invalid("mechanical frequencies must be positive".into()));
        }
        if !(self.kappa > 0.0) {
            return Err(ModelError::Invalid("kappa must be positive".into()));
        }
        if self.gamma1 < 0.0 || self.gamma2 < 0.0 || self.n_th1 < 0.0 || self.n_th2 < 0.0 {
            return Err(ModelError::Invalid("rates and occupations must be nonnegative".into()));
        }
        if self.g1 == 0.0 && self.g2 == 0.0 && !self.allow_uncoupled {
            return Err(ModelError::Uncoupled);
        }
        Ok(())
    }

    /// Assemble the three-mode parameters from the physical derivation.
    /// Valid only at node placement, where the tweezer-cavity couplings are
    /// real and the z modes decouple from the cavity.
    pub fn from_physical(
        d: &DerivedParams,
        detuning: f64,
        kappa: f64,
        gamma: (f64, f64),
        n_th: (f64, f64),
    ) -> Result<Self, ModelError> {
        if !d.tweezer1.trapped {
            return Err(ModelError::Untrapped(1));
        }
        if !d.tweezer2.trapped {
            return Err(ModelError::Untrapped(2));
        }
        // Node condition: cavity drive and z couplings vanish, x couplings
        // real. Tolerate floating-point dust relative to the coupling scale.
        let scale = d.g_tilde_x[0].norm().max(d.g_tilde_x[1].norm());
        let imag = d.g_tilde_x[0].im.abs().max(d.g_tilde_x[1].im.abs());
        let z_mag = d.g_tilde_z[0].norm().max(d.g_tilde_z[1].norm());
        if imag > 1e-6 * scale || z_mag > 1e-6 * scale {
            return Err(ModelError::NotAtNodes(format!(
                "residual couplings: |Im g_x| = {imag:.3e}, |g_z| = {z_mag:.3e} vs scale {scale:.3e}"
            )));
        }
        Ok(Self {
            omega1: d.omega_dressed1[0],
            omega2: d.omega_dressed2[0],
            g1: SQRT2 * d.g_tilde_x[0].re * d.x_zpf[0],
            g2: SQRT2 * d.g_tilde_x[1].re * d.x_zpf[1],
            g_x: 2.0 * d.k_couple[0] * d.x_zpf[0] * d.x_zpf[1] / crate::constants::HBAR,
            r1: SQRT2 * d.r_tilde * d.x_zpf[0],
            r2: SQRT2 * d.r_tilde * d.x_zpf[1],
            detuning,
            kappa,
            gamma1: gamma.0,
            gamma2: gamma.1,
            n_th1: n_th.0,
            n_th2: n_th.1,
            allow_uncoupled: false,
        })
    }
}

/// Parameters of the five-mode model (cavity + x and z modes), rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveModeParams {
    /// Dressed frequencies (1x, 2x, 1z, 2z).
    pub omega_1x: f64,
    pub omega_2x: f64,
    pub omega_1z: f64,
    pub omega_2z: f64,
    pub g_x: f64,
    pub g_z: f64,
    /// Linearized complex couplings G~_{jx} = A_j + i B_j,
    /// G~_{jz} = C_j + i D_j.
    pub g_1x: Complex64,
    pub g_2x: Complex64,
    pub g_1z: Complex64,
    pub g_2z: Complex64,
    /// Effective detuning Delta~.
    pub detuning: f64,
    pub kappa: f64,
    pub gamma: [f64; 4],
    pub n_th: [f64; 4],
    /// Displacement drives R~_j (diagnostic; not part of the fluctuation
    /// matrices).
    pub r1: f64,
    pub r2: f64,
    /// Semiclassical amplitudes; zero on the reduced entry path.
    pub amp_a: Complex64,
    pub amp_x1: f64,
    pub amp_x2: f64,
    pub amp_z1: f64,
    pub amp_z2: f64,
    pub allow_uncoupled: bool,
}

impl FiveModeParams {
    /// Reduced entry: frequencies/couplings in units of omega_tilde_1x,
    /// semiclassical amplitudes bypassed.
    #[allow(clippy::too_many_arguments)]
    pub fn reduced(
        omega_2x: f64,
        omega_1z: f64,
        omega_2z: f64,
        g_x: f64,
        g_z: f64,
        g_1x: Complex64,
        g_2x: Complex64,
        g_1z: Complex64,
        g_2z: Complex64,
        detuning: f64,
        kappa: f64,
        gamma: [f64; 4],
        n_th: [f64; 4],
    ) -> Result<Self, ModelError> {
        let p = Self {
            omega_1x: 1.0,
            omega_2x,
            omega_1z,
            omega_2z,
            g_x,
            g_z,
            g_1x,
            g_2x,
            g_1z,
            g_2z,
            detuning,
            kappa,
            gamma,
            n_th,
            r1: 0.0,
            r2: 0.0,
            amp_a: Complex64::new(0.0, 0.0),
            amp_x1: 0.0,
            amp_x2: 0.0,
            amp_z1: 0.0,
            amp_z2: 0.0,
            allow_uncoupled: false,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let reals = [
            ("omega_1x", self.omega_1x),
            ("omega_2x", self.omega_2x),
            ("omega_1z", self.omega_1z),
            ("omega_2z", self.omega_2z),
            ("g_x", self.g_x),
            ("g_z", self.g_z),
            ("detuning", self.detuning),
            ("kappa", self.kappa),
        ];
        for (name, v) in reals {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name.to_string()));
            }
        }
        for (name, v) in [
            ("g_1x", self.g_1x),
            ("g_2x", self.g_2x),
            ("g_1z", self.g_1z),
            ("g_2z", self.g_2z),
        ] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(ModelError::NonFinite(name.to_string()));
            }
        }
        for v in self.gamma.iter().chain(self.n_th.iter()) {
            if !v.is_finite() || *v < 0.0 {
                return Err(ModelError::Invalid("rates and occupations must be nonnegative, finite".into()));
            }
        }
        if [self.omega_1x, self.omega_2x, self.omega_1z, self.omega_2z]
            .iter()
            .any(|w| !(*w > 0.0))
        {
            return Err(ModelError::Invalid("mechanical frequencies must be positive".into()));
        }
        if !(self.kappa > 0.0) {
            return Err(ModelError::Invalid("kappa must be positive".into()));
        }
        let coupled = self.g_1x.norm() + self.g_2x.norm() + self.g_1z.norm() + self.g_2z.norm();
        if coupled == 0.0 && !self.allow_uncoupled {
            return Err(ModelError::Uncoupled);
        }
        Ok(())
    }
}

/// Which drift/noise structure a [`LinearModel`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    ThreeMode,
    FiveMode,
}

/// A mechanical mode's location in the state vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MechMode {
    pub label: &'static str,
    pub q_index: usize,
    pub p_index: usize,
}

/// Immutable drift/noise pair ready for the steady-state solver.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub kind: ModelKind,
    /// n x n drift matrix (rad/s).
    pub drift: DMatrix<f64>,
    /// n x n diagonal noise correlation matrix (rad/s).
    pub noise: DMatrix<f64>,
    pub labels: Vec<&'static str>,
    pub mech_modes: Vec<MechMode>,
}

impl LinearModel {
    pub fn dim(&self) -> usize {
        self.drift.nrows()
    }
}

/// Positions allowed to be nonzero in the three-mode drift matrix.
fn three_mode_mask() -> [[bool; 6]; 6] {
    let mut m = [[false; 6]; 6];
    // q rows carry only the Omega_j p coupling
    m[0][1] = true;
    m[2][3] = true;
    // p rows: frequency, damping, mechanical coupling, cavity X
    for (p, q, other_q) in [(1, 0, 2), (3, 2, 0)] {
        m[p][q] = true;
        m[p][p] = true;
        m[p][other_q] = true;
        m[p][4] = true;
    }
    // cavity rows
    m[4][4] = true;
    m[4][5] = true;
    m[5][0] = true;
    m[5][2] = true;
    m[5][4] = true;
    m[5][5] = true;
    m
}

fn check_structure(a: &DMatrix<f64>, mask: &dyn Fn(usize, usize) -> bool) -> Result<(), ModelError> {
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if a[(i, j)] != 0.0 && !mask(i, j) {
                return Err(ModelError::Structure(i, j));
            }
        }
    }
    Ok(())
}

/// Build the 6x6 three-mode drift and noise matrices.
pub fn build_three_mode(p: &ThreeModeParams) -> Result<LinearModel, ModelError> {
    p.validate()?;
    let mut a = DMatrix::<f64>::zeros(6, 6);
    a[(0, 1)] = p.omega1;
    a[(1, 0)] = -p.omega1;
    a[(1, 1)] = -p.gamma1;
    a[(1, 2)] = p.g_x;
    a[(1, 4)] = -SQRT2 * p.g1;
    a[(2, 3)] = p.omega2;
    a[(3, 0)] = p.g_x;
    a[(3, 2)] = -p.omega2;
    a[(3, 3)] = -p.gamma2;
    a[(3, 4)] = -SQRT2 * p.g2;
    a[(4, 4)] = -p.kappa;
    a[(4, 5)] = p.detuning;
    a[(5, 0)] = -SQRT2 * p.g1;
    a[(5, 2)] = -SQRT2 * p.g2;
    a[(5, 4)] = -p.detuning;
    a[(5, 5)] = -p.kappa;

    let mask = three_mode_mask();
    check_structure(&a, &|i, j| mask[i][j])?;

    let mut q = DMatrix::<f64>::zeros(6, 6);
    q[(1, 1)] = p.gamma1 * (2.0 * p.n_th1 + 1.0);
    q[(3, 3)] = p.gamma2 * (2.0 * p.n_th2 + 1.0);
    q[(4, 4)] = p.kappa;
    q[(5, 5)] = p.kappa;

    Ok(LinearModel {
        kind: ModelKind::ThreeMode,
        drift: a,
        noise: q,
        labels: vec!["q1", "p1", "q2", "p2", "X", "Y"],
        mech_modes: vec![
            MechMode { label: "1x", q_index: 0, p_index: 1 },
            MechMode { label: "2x", q_index: 2, p_index: 3 },
        ],
    })
}

/// Positions allowed to be nonzero in the five-mode drift matrix.
fn five_mode_mask() -> [[bool; 10]; 10] {
    let mut m = [[false; 10]; 10];
    for (q, p) in [(0, 1), (2, 3), (4, 5), (6, 7)] {
        m[q][p] = true;
        m[p][q] = true;
        m[p][p] = true;
        m[p][8] = true;
        m[p][9] = true;
    }
    // mechanical pair couplings within each direction
    m[1][2] = true;
    m[3][0] = true;
    m[5][6] = true;
    m[7][4] = true;
    // cavity rows couple to every mechanical q
    for col in [0, 2, 4, 6] {
        m[8][col] = true;
        m[9][col] = true;
    }
    m[8][8] = true;
    m[8][9] = true;
    m[9][8] = true;
    m[9][9] = true;
    m
}

/// Build the 10x10 five-mode drift and noise matrices, with the printed
/// A_j/B_j/C_j/D_j sign pattern.
pub fn build_five_mode(p: &FiveModeParams) -> Result<LinearModel, ModelError> {
    p.validate()?;
    let (a1, b1) = (p.g_1x.re, p.g_1x.im);
    let (a2, b2) = (p.g_2x.re, p.g_2x.im);
    let (c1, d1) = (p.g_1z.re, p.g_1z.im);
    let (c2, d2) = (p.g_2z.re, p.g_2z.im);

    let mut a = DMatrix::<f64>::zeros(10, 10);
    a[(0, 1)] = p.omega_1x;
    a[(1, 0)] = -p.omega_1x;
    a[(1, 1)] = -p.gamma[0];
    a[(1, 2)] = p.g_x;
    a[(1, 8)] = -SQRT2 * a1;
    a[(1, 9)] = SQRT2 * b1;
    a[(2, 3)] = p.omega_2x;
    a[(3, 0)] = p.g_x;
    a[(3, 2)] = -p.omega_2x;
    a[(3, 3)] = -p.gamma[1];
    a[(3, 8)] = -SQRT2 * a2;
    a[(3, 9)] = SQRT2 * b2;
    a[(4, 5)] = p.omega_1z;
    a[(5, 4)] = -p.omega_1z;
    a[(5, 5)] = -p.gamma[2];
    a[(5, 6)] = p.g_z;
    a[(5, 8)] = -SQRT2 * c1;
    a[(5, 9)] = -SQRT2 * d1;
    a[(6, 7)] = p.omega_2z;
    a[(7, 4)] = p.g_z;
    a[(7, 6)] = -p.omega_2z;
    a[(7, 7)] = -p.gamma[3];
    a[(7, 8)] = -SQRT2 * c2;
    a[(7, 9)] = -SQRT2 * d2;
    a[(8, 0)] = -SQRT2 * b1;
    a[(8, 2)] = -SQRT2 * b2;
    a[(8, 4)] = -SQRT2 * d1;
    a[(8, 6)] = -SQRT2 * d2;
    a[(8, 8)] = -p.kappa;
    a[(8, 9)] = p.detuning;
    a[(9, 0)] = -SQRT2 * a1;
    a[(9, 2)] = -SQRT2 * a2;
    a[(9, 4)] = -SQRT2 * c1;
    a[(9, 6)] = -SQRT2 * c2;
    a[(9, 8)] = -p.detuning;
    a[(9, 9)] = -p.kappa;

    let mask = five_mode_mask();
    check_structure(&a, &|i, j| mask[i][j])?;

    let mut q = DMatrix::<f64>::zeros(10, 10);
    for (idx, row) in [1usize, 3, 5, 7].iter().enumerate() {
        q[(*row, *row)] = p.gamma[idx] * (2.0 * p.n_th[idx] + 1.0);
    }
    q[(8, 8)] = p.kappa;
    q[(9, 9)] = p.kappa;

    Ok(LinearModel {
        kind: ModelKind::FiveMode,
        drift: a,
        noise: q,
        labels: vec!["q1x", "p1x", "q2x", "p2x", "q1z", "p1z", "q2z", "p2z", "X", "Y"],
        mech_modes: vec![
            MechMode { label: "1x", q_index: 0, p_index: 1 },
            MechMode { label: "2x", q_index: 2, p_index: 3 },
            MechMode { label: "1z", q_index: 4, p_index: 5 },
            MechMode { label: "2z", q_index: 6, p_index: 7 },
        ],
    })
}

/// Converged semiclassical steady state and the resulting linearized
/// parameters.
#[derive(Debug, Clone)]
pub struct SemiclassicalSolution {
    pub params: FiveModeParams,
    pub iterations: usize,
    /// Relative residual of the five steady-state equations at the returned
    /// amplitudes.
    pub residual: f64,
}

/// Damped fixed-point solver settings.
const RELAX: f64 = 0.5;
const FP_TOL: f64 = 1e-12;
const FP_MAX_ITER: usize = 100_000;
const FP_BLOWUP: f64 = 1e30;

/// Solve the five coupled steady-state equations for the cavity amplitude
/// and the four displacement means by damped fixed-point iteration
/// (relaxation 0.5, relative tolerance 1e-12, all-zero start), then
/// linearize the couplings around the fixed point. Displacement means are
/// in zero-point units.
pub fn solve_semiclassical(
    d: &DerivedParams,
    detuning: f64,
    kappa: f64,
    gamma: [f64; 4],
    n_th: [f64; 4],
) -> Result<SemiclassicalSolution, ModelError> {
    if !d.tweezer1.trapped {
        return Err(ModelError::Untrapped(1));
    }
    if !d.tweezer2.trapped {
        return Err(ModelError::Untrapped(2));
    }
    if !(kappa > 0.0) {
        return Err(ModelError::Invalid("kappa must be positive".into()));
    }
    let hbar = crate::constants::HBAR;
    let (w1x, w2x) = (d.omega_dressed1[0], d.omega_dressed2[0]);
    let (w1z, w2z) = (d.omega_dressed1[2], d.omega_dressed2[2]);
    let (xz1, xz2) = (d.x_zpf[0], d.x_zpf[1]);
    let (zz1, zz2) = (d.z_zpf[0], d.z_zpf[1]);
    if [w1x, w2x, w1z, w2z].iter().any(|w| !(*w > 0.0)) {
        return Err(ModelError::Invalid("dressed frequencies must be positive".into()));
    }

    let g_x1 = SQRT2 * d.g_tilde_x[0] * xz1;
    let g_x2 = SQRT2 * d.g_tilde_x[1] * xz2;
    let g_z1 = Complex64::i() * SQRT2 * d.g_tilde_z[0] * zz1;
    let g_z2 = Complex64::i() * SQRT2 * d.g_tilde_z[1] * zz2;
    let gx = 2.0 * d.k_couple[0] * xz1 * xz2 / hbar;
    let gz = 2.0 * d.k_couple[2] * zz1 * zz2 / hbar;
    let r1 = SQRT2 * d.r_tilde * xz1;
    let r2 = SQRT2 * d.r_tilde * xz2;
    let omega_t = d.omega_tilde;
    let delta_prime = detuning - d.delta_shift;

    let mut a = Complex64::new(0.0, 0.0);
    let (mut x1, mut x2, mut z1, mut z2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);

    // One evaluation of the five steady-state right-hand sides.
    let step = |a: Complex64, x1: f64, x2: f64, z1: f64, z2: f64| {
        let delta_t = delta_prime + d.g_tilde_ax[0] * xz1 * x1 + d.g_tilde_ax[1] * xz2 * x2;
        let g_ax1 = SQRT2 * d.g_tilde_ax[0] * a.conj() * xz1;
        let g_ax2 = SQRT2 * d.g_tilde_ax[1] * a.conj() * xz2;
        let a_new = (Complex64::i()
            * (omega_t.conj() + g_x1.conj() * x1 + g_x2.conj() * x2 + g_z1.conj() * z1
                + g_z2.conj() * z2))
            / Complex64::new(-kappa, -delta_t);
        let x1_new = ((-g_ax1 * a).re + gx * x2 - r1 - 2.0 * (g_x1 * a).im) / w1x;
        let x2_new = ((-g_ax2 * a).re + gx * x1 + r2 - 2.0 * (g_x2 * a).im) / w2x;
        let z1_new = (gz * z2 - 2.0 * (g_z1 * a).im) / w1z;
        // denominator transcribed as printed
        let z2_new = (gz * z1 - 2.0 * (g_z2 * a).im) / w2x;
        (a_new, x1_new, x2_new, z1_new, z2_new)
    };

    let mut iterations = 0;
    loop {
        let (an, x1n, x2n, z1n, z2n) = step(a, x1, x2, z1, z2);
        let an = RELAX * a + (1.0 - RELAX) * an;
        let x1n = RELAX * x1 + (1.0 - RELAX) * x1n;
        let x2n = RELAX * x2 + (1.0 - RELAX) * x2n;
        let z1n = RELAX * z1 + (1.0 - RELAX) * z1n;
        let z2n = RELAX * z2 + (1.0 - RELAX) * z2n;
        let change =
            (an - a).norm() + (x1n - x1).abs() + (x2n - x2).abs() + (z1n - z1).abs() + (z2n - z2).abs();
        let scale = an.norm() + x1n.abs() + x2n.abs() + z1n.abs() + z2n.abs();
        a = an;
        x1 = x1n;
        x2 = x2n;
        z1 = z1n;
        z2 = z2n;
        iterations += 1;
        if !scale.is_finite() || scale > FP_BLOWUP {
            return Err(ModelError::SemiclassicalDiverged { iterations });
        }
        if change <= FP_TOL * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        if iterations >= FP_MAX_ITER {
            return Err(ModelError::SemiclassicalStalled {
                iterations,
                residual: change / scale.max(f64::MIN_POSITIVE),
            });
        }
    }

    // Residual: substitute the amplitudes back into the five equations.
    let (ar, x1r, x2r, z1r, z2r) = step(a, x1, x2, z1, z2);
    let scale = a.norm() + x1.abs() + x2.abs() + z1.abs() + z2.abs();
    let residual = ((ar - a).norm()
        + (x1r - x1).abs()
        + (x2r - x2).abs()
        + (z1r - z1).abs()
        + (z2r - z2).abs())
        / scale.max(f64::MIN_POSITIVE);

    let delta_t = delta_prime + d.g_tilde_ax[0] * xz1 * x1 + d.g_tilde_ax[1] * xz2 * x2;
    let g_ax1 = SQRT2 * d.g_tilde_ax[0] * a.conj() * xz1;
    let g_ax2 = SQRT2 * d.g_tilde_ax[1] * a.conj() * xz2;

    let params = FiveModeParams {
        omega_1x: w1x,
        omega_2x: w2x,
        omega_1z: w1z,
        omega_2z: w2z,
        g_x: gx,
        g_z: gz,
        g_1x: g_x1 + g_ax1,
        g_2x: g_x2 + g_ax2,
        g_1z: g_z1,
        g_2z: g_z2,
        detuning: delta_t,
        kappa,
        gamma,
        n_th,
        r1,
        r2,
        amp_a: a,
        amp_x1: x1,
        amp_x2: x2,
        amp_z1: z1,
        amp_z2: z2,
        allow_uncoupled: false,
    };
    Ok(SemiclassicalSolution { params, iterations, residual })
}
