//! Stability analysis, steady-state covariance, and phonon extraction.
//!
//! The Lyapunov equation A V + V A^T = -Q is solved by Kronecker
//! vectorization: (I (x) A + A (x) I) vec(V) = -vec(Q), a dense n^2 x n^2
//! system. Model dimensions are 6 or 10, so the solve is a 36- or 100-row LU.
//! [`evolve_covariance`] integrates dV/dt = A V + V A^T + Q with classical
//! RK4 and exists to cross-check the direct solve.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::models::LinearModel;

#[derive(Debug, Error, PartialEq)]
pub enum SteadyError {
    #[error("eigenvalue computation failed to converge")]
    EigenFailure,
    #[error("drift matrix is not square/finite: {0}")]
    BadMatrix(String),
    #[error("drift matrix is unstable (margin {margin:.6e}, marginal: {marginal})")]
    Unstable { margin: f64, marginal: bool },
    #[error("Lyapunov system is singular or ill-conditioned (condition estimate {cond:.3e})")]
    IllConditioned { cond: f64 },
    #[error("Lyapunov residual {residual:.3e} exceeds tolerance {tol:.0e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("covariance integration blew up at t = {t:.3e}")]
    IntegrationBlowup { t: f64 },
    #[error("time step {dt:.3e} too coarse for ||A|| = {norm:.3e}; need dt < 0.1/||A||")]
    BadTimestep { dt: f64, norm: f64 },
    #[error("covariance initial condition must be symmetric")]
    AsymmetricInit,
}

/// Relative residual tolerance for the direct Lyapunov solve.
pub const LYAP_RESIDUAL_TOL: f64 = 1e-10;
/// Condition-estimate ceiling beyond which the solve is reported
/// ill-conditioned.
pub const LYAP_COND_LIMIT: f64 = 1e14;

/// Stability verdict for a drift matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// Max real part of the eigenvalues (rad/s).
    pub margin: f64,
    /// True when the margin sits within the tolerance band around zero;
    /// marginal systems are reported unstable (the Lyapunov solution is
    /// unbounded there).
    pub marginal: bool,
}

fn check_square_finite(a: &DMatrix<f64>) -> Result<(), SteadyError> {
    if a.nrows() != a.ncols() {
        return Err(SteadyError::BadMatrix(format!("{}x{}", a.nrows(), a.ncols())));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(SteadyError::BadMatrix("non-finite entry".into()));
    }
    Ok(())
}

/// Eigenvalue stability criterion: stable iff every eigenvalue real part is
/// below -tol, with tol = 1e-12 ||A||_F.
pub fn is_stable(a: &DMatrix<f64>) -> Result<Stability, SteadyError> {
    check_square_finite(a)?;
    let norm = a.norm();
    if norm == 0.0 {
        // all eigenvalues exactly zero: marginal
        return Ok(Stability { stable: false, margin: 0.0, marginal: true });
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), 1e-14, 100_000)
        .ok_or(SteadyError::EigenFailure)?;
    let eigs = schur.complex_eigenvalues();
    let margin = eigs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-12 * norm;
    let stable = margin < -tol;
    let marginal = !stable && margin < tol;
    Ok(Stability { stable, margin, marginal })
}

/// Column-stacking vectorization.
fn vec_of(m: &DMatrix<f64>) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_column_slice(m.as_slice())
}

fn unvec(v: &nalgebra::DVector<f64>, n: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(n, n, v.as_slice())
}

/// A V + V A^T + Q evaluated with compensated accumulation (exact FMA
/// product splitting + Neumaier summation). The plain evaluation loses
/// ~||A|| ||V|| eps to cancellation, which swamps a true residual of
/// 1e-10 ||Q|| whenever the covariance dwarfs the noise matrix (hot,
/// weakly damped modes); the compensated form measures the actual defect.
pub fn residual_matrix(a: &DMatrix<f64>, v: &DMatrix<f64>, q: &DMatrix<f64>) -> DMatrix<f64> {
    fn add(x: f64, sum: &mut f64, comp: &mut f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }
    let n = a.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for k in 0..n {
            let p = a[(i, k)] * v[(k, j)];
            let e = a[(i, k)].mul_add(v[(k, j)], -p);
            add(p, &mut sum, &mut comp);
            add(e, &mut sum, &mut comp);
            let p = v[(i, k)] * a[(j, k)];
            let e = v[(i, k)].mul_add(a[(j, k)], -p);
            add(p, &mut sum, &mut comp);
            add(e, &mut sum, &mut comp);
        }
        add(q[(i, j)], &mut sum, &mut comp);
        sum + comp
    })
}

/// Relative Lyapunov residual ||A V + V A^T + Q||_F / ||Q||_F.
pub fn lyapunov_residual(a: &DMatrix<f64>, v: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
    residual_matrix(a, v, q).norm() / q.norm().max(f64::MIN_POSITIVE)
}

/// Solve A V + V A^T = -Q for a stable A; V is symmetrized before return and
/// guaranteed to satisfy the residual bound [`LYAP_RESIDUAL_TOL`].
pub fn solve_lyapunov(a: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<DMatrix<f64>, SteadyError> {
    let st = is_stable(a)?;
    if !st.stable {
        return Err(SteadyError::Unstable { margin: st.margin, marginal: st.marginal });
    }
    check_square_finite(q)?;
    let n = a.nrows();
    if q.nrows() != n {
        return Err(SteadyError::BadMatrix(format!("Q is {}x{}, A is {n}x{n}", q.nrows(), q.ncols())));
    }

    let eye = DMatrix::<f64>::identity(n, n);
    let m = eye.kronecker(a) + a.kronecker(&eye);
    let rhs = -vec_of(q);
    let lu = m.clone().lu();
    let Some(sol) = lu.solve(&rhs) else {
        return Err(SteadyError::IllConditioned { cond: condition_estimate(&m) });
    };
    let mut v = unvec(&sol, n);
    v = (&v + v.transpose()) * 0.5;

    // Iterative refinement against the compensated residual; the stiff rate
    // ratios here (gamma/kappa ~ 1e-8) leave the single LU pass an order or
    // two above the floor.
    let q_norm = q.norm().max(f64::MIN_POSITIVE);
    for _ in 0..3 {
        let r = residual_matrix(a, &v, q);
        if r.norm() / q_norm <= 0.01 * LYAP_RESIDUAL_TOL {
            break;
        }
        let Some(delta) = lu.solve(&(-vec_of(&r))) else { break };
        v += unvec(&delta, n);
        v = (&v + v.transpose()) * 0.5;
    }

    let residual = lyapunov_residual(a, &v, q);
    if residual > LYAP_RESIDUAL_TOL {
        let cond = condition_estimate(&m);
        if cond > LYAP_COND_LIMIT {
            return Err(SteadyError::IllConditioned { cond });
        }
        return Err(SteadyError::ResidualTooLarge { residual, tol: LYAP_RESIDUAL_TOL });
    }
    Ok(v)
}

/// 2-norm condition estimate via singular values (n <= 100 here, so exact
/// SVD is cheap and only computed on the failure path).
fn condition_estimate(m: &DMatrix<f64>) -> f64 {
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.max();
    let min = svd.singular_values.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Final mean phonon number per mechanical mode:
/// n_j = (V_qq + V_pp - 1)/2 on that mode's quadrature diagonal.
pub fn phonon_numbers(v: &DMatrix<f64>, model: &LinearModel) -> Vec<f64> {
    model
        .mech_modes
        .iter()
        .map(|m| 0.5 * (v[(m.q_index, m.q_index)] + v[(m.p_index, m.p_index)] - 1.0))
        .collect()
}

/// Full steady-state result for one model.
#[derive(Debug, Clone)]
pub struct CoolingResult {
    pub stable: bool,
    pub marginal: bool,
    /// Max real part of the drift eigenvalues (rad/s).
    pub margin: f64,
    /// Steady-state covariance (present only when stable).
    pub covariance: Option<DMatrix<f64>>,
    /// Per-mode phonon numbers, ordered as `model.mech_modes`.
    pub phonons: Option<Vec<f64>>,
    /// Relative Lyapunov residual of the returned covariance.
    pub residual: Option<f64>,
}

/// Stability check, Lyapunov solve and phonon extraction in one call.
/// Unstable models produce a result with absent covariance/phonons rather
/// than an error.
pub fn solve_cooling(model: &LinearModel) -> Result<CoolingResult, SteadyError> {
    let st = is_stable(&model.drift)?;
    if !st.stable {
        return Ok(CoolingResult {
            stable: false,
            marginal: st.marginal,
            margin: st.margin,
            covariance: None,
            phonons: None,
            residual: None,
        });
    }
    let v = solve_lyapunov(&model.drift, &model.noise)?;
    let residual = lyapunov_residual(&model.drift, &v, &model.noise);
    let phonons = phonon_numbers(&v, model);
    Ok(CoolingResult {
        stable: true,
        marginal: false,
        margin: st.margin,
        covariance: Some(v),
        phonons: Some(phonons),
        residual: Some(residual),
    })
}

/// Integrate dV/dt = A V + V A^T + Q from V0 with classical RK4.
///
/// Independent of [`solve_lyapunov`]; used to validate it. Requires
/// dt < 0.1/||A||.
pub fn evolve_covariance(
    a: &DMatrix<f64>,
    q: &DMatrix<f64>,
    v0: &DMatrix<f64>,
    t_final: f64,
    dt: f64,
) -> Result<DMatrix<f64>, SteadyError> {
    check_square_finite(a)?;
    check_square_finite(q)?;
    let norm = a.norm();
    if !(dt > 0.0) || dt >= 0.1 / norm.max(f64::MIN_POSITIVE) {
        return Err(SteadyError::BadTimestep { dt, norm });
    }
    if (v0 - v0.transpose()).norm() > 1e-10 * v0.norm().max(1.0) {
        return Err(SteadyError::AsymmetricInit);
    }
    if t_final == 0.0 {
        return Ok(v0.clone());
    }
    let n = a.nrows();
    let steps = (t_final / dt).ceil() as usize;
    let h = t_final / steps as f64;
    // Symmetry is preserved along the flow, so V A^T = (A V)^T and each
    // stage needs a single product.
    let mut av = DMatrix::<f64>::zeros(n, n);
    let mut stage = DMatrix::<f64>::zeros(n, n);
    let mut f_of = |v: &DMatrix<f64>, out: &mut DMatrix<f64>| {
        av.gemm(1.0, a, v, 0.0);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = av[(i, j)] + av[(j, i)] + q[(i, j)];
            }
        }
    };
    let mut v = v0.clone();
    let mut k1 = DMatrix::<f64>::zeros(n, n);
    let mut k2 = DMatrix::<f64>::zeros(n, n);
    let mut k3 = DMatrix::<f64>::zeros(n, n);
    let mut k4 = DMatrix::<f64>::zeros(n, n);
    let blowup = 1e150 * (v0.norm() + q.norm() + 1.0);
    for step in 0..steps {
        f_of(&v, &mut k1);
        for (s, (vv, kk)) in stage.iter_mut().zip(v.iter().zip(k1.iter())) {
            *s = vv + h / 2.0 * kk;
        }
        f_of(&stage, &mut k2);
        for (s, (vv, kk)) in stage.iter_mut().zip(v.iter().zip(k2.iter())) {
            *s = vv + h / 2.0 * kk;
        }
        f_of(&stage, &mut k3);
        for (s, (vv, kk)) in stage.iter_mut().zip(v.iter().zip(k3.iter())) {
            *s = vv + h * kk;
        }
        f_of(&stage, &mut k4);
        for (i, vv) in v.iter_mut().enumerate() {
            *vv += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !v.norm().is_finite() || v.norm() > blowup {
            return Err(SteadyError::IntegrationBlowup { t: (step + 1) as f64 * h });
        }
    }
    Ok(v)
}
