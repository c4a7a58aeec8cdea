//! Bipartite states on `C^dim_a ⊗ C^dim_b`.
//!
//! Product-basis index convention: `|i>_A ⊗ |j>_B` sits at `i * dim_b + j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, ComplexMatrix};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Validated bipartite density matrix: Hermitian, unit trace, PSD.
///
/// Serialises as `{"dimA", "dimB", "matrix": [[re, im], ...]}` with the
/// matrix flattened row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates every invariant and reports the first violated one with its slack.
    pub fn new(dim_a: usize, dim_b: usize, mat: ComplexMatrix) -> Result<Self> {
        let n = dim_a * dim_b;
        if n == 0 || mat.rows() != n || mat.cols() != n {
            return Err(Error::dims(
                format!("{n}x{n} for dims ({dim_a}, {dim_b})"),
                format!("{}x{}", mat.rows(), mat.cols()),
            ));
        }
        let herm = mat.hermitian_deviation();
        if herm > tolerance::HERMITIAN {
            return Err(Error::InvariantViolated {
                kind: "density matrix",
                invariant: "Hermitian",
                slack: herm,
            });
        }
        let tr = (mat.trace() - c(1.0, 0.0)).norm();
        if tr > tolerance::TRACE {
            return Err(Error::InvariantViolated {
                kind: "density matrix",
                invariant: "unit trace",
                slack: tr,
            });
        }
        let min = hermitian_eigen(&mat)?.min();
        if min < -tolerance::PSD {
            return Err(Error::InvariantViolated {
                kind: "density matrix",
                invariant: "positive semidefinite",
                slack: -min,
            });
        }
        Ok(Self { dim_a, dim_b, mat })
    }

    /// For outputs of maps that preserve the invariants by construction.
    pub(crate) fn from_trusted(dim_a: usize, dim_b: usize, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.rows(), dim_a * dim_b);
        Self { dim_a, dim_b, mat }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::from_trusted(
            psi.dim_a,
            psi.dim_b,
            ComplexMatrix::outer(&psi.amplitudes, &psi.amplitudes),
        )
    }

    /// Product state `rho_a ⊗ rho_b`; both factors must be valid single-system states.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        Self::new(rho_a.rows(), rho_b.rows(), crate::linalg::kron(rho_a, rho_b))
    }

    /// I / (dim_a dim_b).
    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self::from_trusted(dim_a, dim_b, ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.dim_a,
            Subsystem::B => self.dim_b,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dim_a == 2 && self.dim_b == 2
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return f64::INFINITY;
        }
        self.mat.max_abs_diff(&other.mat)
    }

    /// Transposes the indices of `side` only. Entries are permuted, never
    /// combined, so trace and Hermiticity carry over exactly.
    pub fn partial_transpose(&self, side: Subsystem) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        let mut out = ComplexMatrix::zeros(da * db, da * db);
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let (row, col) = match side {
                            Subsystem::A => (k * db + j, i * db + l),
                            Subsystem::B => (i * db + l, k * db + j),
                        };
                        out[(i * db + j, k * db + l)] = self.mat[(row, col)];
                    }
                }
            }
        }
        out
    }

    /// Reduced state of the `keep` subsystem.
    pub fn partial_trace(&self, keep: Subsystem) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        match keep {
            Subsystem::A => {
                ComplexMatrix::from_fn(da, da, |i, k| (0..db).map(|j| self.mat[(i * db + j, k * db + j)]).sum())
            }
            Subsystem::B => {
                ComplexMatrix::from_fn(db, db, |j, l| (0..da).map(|i| self.mat[(i * db + j, i * db + l)]).sum())
            }
        }
    }

    /// Number of eigenvalues of the `side` marginal above `tolerance::PSD`.
    pub fn local_rank(&self, side: Subsystem) -> Result<usize> {
        let spectrum = hermitian_eigen(&self.partial_trace(side))?;
        Ok(spectrum.eigenvalues.iter().filter(|&&l| l > tolerance::PSD).count())
    }

    /// Convex mixture `(1 - w) self + w other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ParameterOutOfRange {
                name: "weight",
                value: w,
                range: "[0, 1]",
            });
        }
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return Err(Error::dims(
                format!("({}, {})", self.dim_a, self.dim_b),
                format!("({}, {})", other.dim_a, other.dim_b),
            ));
        }
        let mat = &self.mat.scale_real(1.0 - w) + &other.mat.scale_real(w);
        Ok(Self::from_trusted(self.dim_a, self.dim_b, mat))
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DensityMatrix", 3)?;
        st.serialize_field("dimA", &self.dim_a)?;
        st.serialize_field("dimB", &self.dim_b)?;
        st.serialize_field("matrix", self.mat.as_slice())?;
        st.end()
    }
}

/// Normalised pure state on `C^dim_a ⊗ C^dim_b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if dim_a * dim_b == 0 || amplitudes.len() != dim_a * dim_b {
            return Err(Error::dims(
                format!("{} amplitudes", dim_a * dim_b),
                format!("{}", amplitudes.len()),
            ));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > tolerance::NORM {
            return Err(Error::InvariantViolated {
                kind: "pure state",
                invariant: "unit norm",
                slack: (norm - 1.0).abs(),
            });
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Builds `Σ c_k |i_k j_k>` from `(i, j, c)` triples.
    pub fn from_terms(dim_a: usize, dim_b: usize, terms: &[(usize, usize, Complex64)]) -> Result<Self> {
        let mut amps = vec![c(0.0, 0.0); dim_a * dim_b];
        for &(i, j, z) in terms {
            if i >= dim_a || j >= dim_b {
                return Err(Error::dims(
                    format!("levels < ({dim_a}, {dim_b})"),
                    format!("({i}, {j})"),
                ));
            }
            amps[i * dim_b + j] += z;
        }
        Self::new(dim_a, dim_b, amps)
    }

    /// Rescales an unnormalised vector. Returns the squared norm alongside.
    pub fn normalized(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvariantViolated {
                kind: "pure state",
                invariant: "non-zero norm",
                slack: norm,
            });
        }
        let s = norm.sqrt();
        let amps = amplitudes.into_iter().map(|z| z / s).collect();
        Ok((Self::new(dim_a, dim_b, amps)?, norm))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitudes arranged as a `dim_a x dim_b` matrix.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim_a, self.dim_b, |i, j| self.amplitudes[i * self.dim_b + j])
    }

    /// Schmidt coefficients in descending order, `min(dim_a, dim_b)` of them.
    pub fn schmidt_coefficients(&self) -> Result<Vec<f64>> {
        let m = self.coefficient_matrix();
        let gram = if self.dim_a <= self.dim_b {
            m.matmul(&m.adjoint())
        } else {
            m.adjoint().matmul(&m)
        };
        let mut coeffs: Vec<f64> = hermitian_eigen(&gram)?
            .eigenvalues
            .into_iter()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        coeffs.reverse();
        Ok(coeffs)
    }

    /// `(u_a ⊗ u_b) |psi>`.
    pub fn apply_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Vec<Complex64> {
        let op = crate::linalg::kron(u_a, u_b);
        op.apply(&self.amplitudes)
    }

    /// |<self|other>|^2.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}
