//! Brute-force oracle for the squeeze-operator algebra on a truncated
//! single-mode Fock space.
//!
//! Dense complex matrices stand in for the ladder operators; the squeezed
//! state is built literally as exp(C)|0⟩ with C = (f/2)(a†a† − aa) and its
//! expectation values ⟨a†a⟩ and ⟨aa⟩ are read off numerically. They must
//! reproduce sinh²f and cosh f·sinh f, which is exactly what the analytic
//! density module assumes. The oracle has to be more trustworthy than what
//! it checks, so the truncation guard refuses rather than degrades: the
//! squeezed-vacuum population of level m decays like (tanh f)^m across even
//! levels, and (tanh |f|)^N must already be below 1e-12.
//!
//! Matrices stay dense: dimensions up to ~100 make sparsity pointless.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

/// Dense complex operator on the truncated Fock space.
pub type FockOperator = DMatrix<Complex64>;

/// Population leaked past the truncation must stay below this.
pub const TRUNCATION_LEAK_LIMIT: f64 = 1e-12;

/// Residual allowed on ‖exp(M)·exp(−M) − I‖.
pub const EXP_RESIDUAL_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("Fock truncation needs at least 2 levels (got {dim})")]
    DimensionTooSmall { dim: usize },
    #[error("matrix exponential residual {residual:.3e} exceeds {limit:.0e}")]
    ConvergenceFailure { residual: f64, limit: f64 },
    #[error(
        "squeeze f = {f} leaks population ≈ {leak:.3e} past {dim} levels (limit {limit:.0e})"
    )]
    TruncationError {
        f: f64,
        dim: usize,
        leak: f64,
        limit: f64,
    },
}

/// Annihilation and creation matrices: a[n-1, n] = √n, a† its adjoint.
///
/// Their commutator equals the identity except in the (N-1, N-1) corner,
/// the usual truncation artifact.
pub fn ladder_pair(dim: usize) -> Result<(FockOperator, FockOperator), FockError> {
    if dim < 2 {
        return Err(FockError::DimensionTooSmall { dim });
    }
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let a_dagger = a.adjoint();
    Ok((a, a_dagger))
}

/// Quadratic generator C = (f/2)(a†a† − aa), anti-Hermitian by construction.
pub fn squeeze_generator(f: f64, dim: usize) -> Result<FockOperator, FockError> {
    let (a, a_dagger) = ladder_pair(dim)?;
    let half_f = Complex64::new(0.5 * f, 0.0);
    Ok((&a_dagger * &a_dagger - &a * &a) * half_f)
}

/// Matrix exponential by scaling-and-squaring over a Taylor kernel.
///
/// The result is checked a posteriori: ‖exp(M)·exp(−M) − I‖₁ must not
/// exceed [`EXP_RESIDUAL_LIMIT`], otherwise the call fails rather than
/// hand back a silently degraded operator.
pub fn matrix_exp(m: &FockOperator) -> Result<FockOperator, FockError> {
    let forward = exp_unchecked(m);
    let backward = exp_unchecked(&(-m));
    let dim = m.nrows();
    let residual = one_norm(&(&forward * &backward - DMatrix::<Complex64>::identity(dim, dim)));
    if residual.is_finite() && residual <= EXP_RESIDUAL_LIMIT {
        Ok(forward)
    } else {
        Err(FockError::ConvergenceFailure {
            residual,
            limit: EXP_RESIDUAL_LIMIT,
        })
    }
}

fn exp_unchecked(m: &FockOperator) -> FockOperator {
    let dim = m.nrows();
    let norm = one_norm(m);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = m / Complex64::new((2.0f64).powi(squarings as i32), 0.0);

    // Plain Taylor sum; with ‖scaled‖ ≤ 1/2 thirty terms are far past f64.
    let mut sum = DMatrix::<Complex64>::identity(dim, dim);
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    for n in 1..=40u32 {
        term = (&term * &scaled) / Complex64::new(f64::from(n), 0.0);
        sum += &term;
        if one_norm(&term) < 1e-20 * one_norm(&sum) {
            break;
        }
    }

    let mut result = sum;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

fn one_norm(m: &FockOperator) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..m.ncols() {
        let col: f64 = m.column(j).iter().map(|z| z.norm()).sum();
        if col.is_nan() {
            return f64::NAN;
        }
        worst = worst.max(col);
    }
    worst
}

/// Squeezed-vacuum expectations from the truncated-space state
/// |Ω⟩ = exp(C)|0⟩: returns (⟨a†a⟩, Re ⟨aa⟩).
///
/// Analytically these are sinh²f and cosh f·sinh f; the imaginary part of
/// ⟨aa⟩ vanishes and is checked, not returned.
pub fn bogoliubov_expectations(f: f64, dim: usize) -> Result<(f64, f64), FockError> {
    if dim < 2 {
        return Err(FockError::DimensionTooSmall { dim });
    }
    let leak = f.abs().tanh().powi(dim as i32);
    // Negated form on purpose: a NaN leak must refuse, not pass.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(leak < TRUNCATION_LEAK_LIMIT) {
        return Err(FockError::TruncationError {
            f,
            dim,
            leak,
            limit: TRUNCATION_LEAK_LIMIT,
        });
    }

    let (a, _) = ladder_pair(dim)?;
    let unitary = matrix_exp(&squeeze_generator(f, dim)?)?;
    let state = unitary.column(0).into_owned();

    let norm_defect = (state.norm() - 1.0).abs();
    if norm_defect > 1e-10 {
        return Err(FockError::ConvergenceFailure {
            residual: norm_defect,
            limit: 1e-10,
        });
    }

    let a_state = &a * &state;
    let n_expect = a_state.norm_squared();
    let aa = state.dotc(&(&a * &a_state));
    debug_assert!(aa.im.abs() < 1e-10, "⟨aa⟩ picked up an imaginary part");
    Ok((n_expect, aa.re))
}
