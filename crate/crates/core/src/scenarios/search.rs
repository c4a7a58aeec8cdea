//! Scan of the local unitary orbit of a state for changes in the critical
//! noise value.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::solve::{solve_lambda_sep, SolveOptions};
use crate::channels::{local_unitary, ChannelFamily};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::{DensityMatrix, Subsystem};

/// Records with a larger gap are candidate seeds for selective breaking.
pub const CANDIDATE_GAP: f64 = 1e-6;

/// Gaps are compared after rounding to this resolution so that records
/// equal up to solver noise are ordered by grid index.
const GAP_RESOLUTION: f64 = 1e-9;

pub fn rz(angle: f64) -> ComplexMatrix {
    let h = 0.5 * angle;
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::from_polar(1.0, -h);
    m[(1, 1)] = Complex64::from_polar(1.0, h);
    m
}

pub fn ry(angle: f64) -> ComplexMatrix {
    let (s, co) = (0.5 * angle).sin_cos();
    ComplexMatrix::from_real(2, 2, &[co, -s, s, co])
}

/// `Rz(phi) Ry(theta) Rz(psi)`; `(pi/2, 0, 0)` is the rotation `U_A`.
pub fn euler_unitary(theta: f64, phi: f64, psi: f64) -> ComplexMatrix {
    rz(phi).matmul(&ry(theta)).matmul(&rz(psi))
}

/// Uniform Euler-angle grid: θ_k = kπ/n_θ, φ_k = 2πk/n_φ, ψ_k = 2πk/n_ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitGrid {
    pub theta_points: usize,
    pub phi_points: usize,
    pub psi_points: usize,
}

impl Default for OrbitGrid {
    fn default() -> Self {
        Self::cube(16)
    }
}

impl OrbitGrid {
    pub fn cube(n: usize) -> Self {
        Self {
            theta_points: n,
            phi_points: n,
            psi_points: n,
        }
    }

    pub fn len(&self) -> usize {
        self.theta_points * self.phi_points * self.psi_points
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Angles `(theta, phi, psi)` of grid point `index`, θ slowest.
    pub fn angles(&self, index: usize) -> (f64, f64, f64) {
        let k_psi = index % self.psi_points;
        let k_phi = (index / self.psi_points) % self.phi_points;
        let k_theta = index / (self.psi_points * self.phi_points);
        (
            PI * k_theta as f64 / self.theta_points as f64,
            2.0 * PI * k_phi as f64 / self.phi_points as f64,
            2.0 * PI * k_psi as f64 / self.psi_points as f64,
        )
    }

    /// Grid spacing in each angle.
    pub fn cell(&self) -> (f64, f64, f64) {
        (
            PI / self.theta_points as f64,
            2.0 * PI / self.phi_points as f64,
            2.0 * PI / self.psi_points as f64,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchRecord {
    pub index: usize,
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    /// `None` when the state never becomes PPT on the family's domain.
    pub lambda_sep_base: Option<f64>,
    pub lambda_sep_rotated: Option<f64>,
    /// `|lambda_sep_rotated - lambda_sep_base|`, when both exist.
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    pub grid: OrbitGrid,
    pub family: String,
    pub lambda_sep_base: Option<f64>,
    /// Sorted by gap, largest first; records without a gap come last.
    pub records: Vec<SearchRecord>,
}

impl SearchOutcome {
    pub fn top(&self) -> Option<&SearchRecord> {
        self.records.first()
    }

    pub fn max_gap(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.gap).reduce(f64::max)
    }

    pub fn candidates(&self) -> impl Iterator<Item = &SearchRecord> {
        self.records.iter().filter(|r| r.gap.is_some_and(|g| g > CANDIDATE_GAP))
    }
}

fn lambda_sep_or_none(family: &ChannelFamily, rho: &DensityMatrix, opts: &SolveOptions) -> Result<Option<f64>> {
    match solve_lambda_sep(family, rho, opts) {
        Ok(root) => Ok(Some(root.value)),
        Err(Error::NoSignChange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// λ_sep of `(U ⊗ I) rho (U ⊗ I)^dag` for every `U` on the grid, compared
/// with λ_sep of `rho` itself.
pub fn orbit_search(
    rho: &DensityMatrix,
    family: &ChannelFamily,
    grid: &OrbitGrid,
    opts: &SolveOptions,
) -> Result<SearchOutcome> {
    if !rho.is_two_qubit() {
        return Err(Error::UnsupportedDimension {
            supported: "2x2",
            found: format!("{}x{}", rho.dim_a(), rho.dim_b()),
        });
    }
    let base = lambda_sep_or_none(family, rho, opts)?;
    let mut records = (0..grid.len())
        .into_par_iter()
        .map(|index| -> Result<SearchRecord> {
            let (theta, phi, psi) = grid.angles(index);
            let rotated = local_unitary(rho, &euler_unitary(theta, phi, psi), Subsystem::A)?;
            let lambda = lambda_sep_or_none(family, &rotated, opts)?;
            Ok(SearchRecord {
                index,
                theta,
                phi,
                psi,
                lambda_sep_base: base,
                lambda_sep_rotated: lambda,
                gap: base.zip(lambda).map(|(b, r)| (r - b).abs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let key = |r: &SearchRecord| r.gap.map(|g| (g / GAP_RESOLUTION).round() as i64).unwrap_or(-1);
    records.sort_by(|a, b| key(b).cmp(&key(a)).then(a.index.cmp(&b.index)));
    Ok(SearchOutcome {
        grid: *grid,
        family: family.name().to_string(),
        lambda_sep_base: base,
        records,
    })
}
