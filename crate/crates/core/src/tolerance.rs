//! Numerical tolerances. Every validation in the crate references these.

/// Max |m_ij - conj(m_ji)| accepted for a density matrix.
pub const HERMITIAN: f64 = 1e-12;

/// Max |tr(rho) - 1| accepted for a density matrix.
pub const TRACE: f64 = 1e-12;

/// Smallest eigenvalue accepted as "non-negative". Also the PPT threshold.
pub const PSD: f64 = 1e-10;

/// Eigen-decomposition accuracy contract (reconstruction, orthonormality).
pub const EIGEN: f64 = 1e-10;

/// Hermiticity slack accepted on input to the eigensolver.
pub const EIGEN_INPUT_HERMITIAN: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;

/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Max |sum K^dag K - I| for a Kraus channel.
pub const COMPLETENESS: f64 = 1e-12;

/// Max |U^dag U - I| for a local unitary.
pub const UNITARY: f64 = 1e-12;

/// Max |B^dag B - I| for a change-of-basis matrix.
pub const BASIS: f64 = 1e-10;

/// Max |<psi|psi> - 1| for a pure state.
pub const NORM: f64 = 1e-12;

/// Eigenvalues of a density matrix below this are treated as exact zeros
/// when building the concurrence decomposition.
pub const RANK: f64 = 1e-14;

/// Bisection stopping width for critical-parameter solvers.
pub const BISECTION: f64 = 1e-12;

/// Bisection iteration cap.
pub const BISECTION_MAX_ITER: usize = 200;

/// Strict inequalities between entanglement values must exceed this margin.
pub const STRICT_MARGIN: f64 = 1e-10;
