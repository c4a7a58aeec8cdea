//! Entanglement quantities of bipartite states.
//!
//! Logarithms are base 2 throughout, so a two-qubit maximally entangled
//! state carries one ebit. Distillable entanglement and entanglement cost
//! are not computed; they only appear as the endpoints bracketed by
//! [`g_lower_bound`] (below `E_D`) and [`entanglement_of_formation`] (above `E_C`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{bell_basis, c, change_basis, hermitian_eigen, kron, ComplexMatrix};
use crate::state::{DensityMatrix, Subsystem};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PptVerdict {
    Ppt,
    Npt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeparabilityVerdict {
    Separable,
    Entangled,
    Undecided,
}

/// Negativity `max(0, -2 μ_min)` and the minimum partial-transpose eigenvalue `μ_min`.
pub fn negativity(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let mu = min_pt_eigenvalue(rho)?;
    Ok(((-2.0 * mu).max(0.0), mu))
}

pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Ok(hermitian_eigen(&rho.partial_transpose(Subsystem::B))?.min())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparabilityReport {
    pub ppt: PptVerdict,
    pub verdict: SeparabilityVerdict,
    pub min_pt_eigenvalue: f64,
    /// Set when an explicit product decomposition was checked.
    pub decomposition_deviation: Option<f64>,
}

fn ppt_only(rho: &DensityMatrix) -> Result<SeparabilityReport> {
    let mu = min_pt_eigenvalue(rho)?;
    let ppt = if mu >= -tolerance::PSD {
        PptVerdict::Ppt
    } else {
        PptVerdict::Npt
    };
    let verdict = match ppt {
        PptVerdict::Npt => SeparabilityVerdict::Entangled,
        // Peres-Horodecki is sufficient in 2x2 and 2x3 only
        PptVerdict::Ppt if rho.dim_a() * rho.dim_b() <= 6 => SeparabilityVerdict::Separable,
        PptVerdict::Ppt => SeparabilityVerdict::Undecided,
    };
    Ok(SeparabilityReport {
        ppt,
        verdict,
        min_pt_eigenvalue: mu,
        decomposition_deviation: None,
    })
}

/// PPT test with a three-valued verdict. `Separable` is only issued where
/// PPT is equivalent to separability (`dim_a * dim_b <= 6`).
pub fn ppt_separability(rho: &DensityMatrix) -> Result<SeparabilityReport> {
    ppt_only(rho)
}

/// As [`ppt_separability`], but a verified product decomposition certifies
/// `Separable` in any dimension.
pub fn separability_with_decomposition(
    rho: &DensityMatrix,
    decomposition: &ProductDecomposition,
) -> Result<SeparabilityReport> {
    let mut report = ppt_only(rho)?;
    let deviation = decomposition.verify(rho)?;
    report.decomposition_deviation = Some(deviation);
    report.verdict = SeparabilityVerdict::Separable;
    Ok(report)
}

/// One term `weight * rho_a ⊗ rho_b` of a separable decomposition.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductTerm {
    pub weight: f64,
    pub rho_a: ComplexMatrix,
    pub rho_b: ComplexMatrix,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ProductDecomposition {
    pub terms: Vec<ProductTerm>,
}

impl ProductDecomposition {
    pub fn new(terms: Vec<ProductTerm>) -> Self {
        Self { terms }
    }

    pub fn to_matrix(&self) -> Option<ComplexMatrix> {
        let first = self.terms.first()?;
        let n = first.rho_a.rows() * first.rho_b.rows();
        let mut sum = ComplexMatrix::zeros(n, n);
        for t in &self.terms {
            sum = &sum + &kron(&t.rho_a, &t.rho_b).scale_real(t.weight);
        }
        Some(sum)
    }

    /// Checks every factor is a state, the weights form a distribution and
    /// the mixture reproduces `rho`. Returns the max-norm deviation.
    pub fn verify(&self, rho: &DensityMatrix) -> Result<f64> {
        let mut total = 0.0;
        for t in &self.terms {
            if t.weight < 0.0 || t.rho_a.rows() != rho.dim_a() || t.rho_b.rows() != rho.dim_b() {
                return Err(Error::DecompositionMismatch {
                    deviation: f64::INFINITY,
                });
            }
            for factor in [&t.rho_a, &t.rho_b] {
                DensityMatrix::new(factor.rows(), 1, factor.clone())?;
            }
            total += t.weight;
        }
        if (total - 1.0).abs() > tolerance::TRACE {
            return Err(Error::DecompositionMismatch {
                deviation: (total - 1.0).abs(),
            });
        }
        let deviation = self.to_matrix().map_or(f64::INFINITY, |m| m.max_abs_diff(rho.matrix()));
        if deviation > tolerance::HERMITIAN {
            return Err(Error::DecompositionMismatch { deviation });
        }
        Ok(deviation)
    }
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            supported: "two-qubit states",
            found: format!("{}x{}", rho.dim_a(), rho.dim_b()),
        })
    }
}

/// σ_y ⊗ σ_y, which is real: anti-diagonal (-1, 1, 1, -1).
fn sigma_yy() -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            c(if i == 0 || i == 3 { -1.0 } else { 1.0 }, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Spin-flipped state `(σ_y ⊗ σ_y) conj(rho) (σ_y ⊗ σ_y)`, conjugation in the
/// computational basis.
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(rho)?;
    let y = sigma_yy();
    Ok(y.matmul(&rho.matrix().conj()).matmul(&y))
}

/// Square roots `s_1 >= ... >= s_4` of the eigenvalues of `rho * spin_flip(rho)`.
///
/// With `rho = Σ |v_i><v_i|` over its non-null eigenvectors (`v_i = √p_i e_i`),
/// the `s_i` are the singular values of `τ_ij = <v_i| σ_y⊗σ_y |v_j*>`, which
/// are read off as the non-negative eigenvalues of the Hermitian dilation
/// `[[0, τ], [τ^dag, 0]]`. Every step stays inside the Hermitian eigensolver
/// and no square root is taken of a round-off sized eigenvalue.
pub fn spin_flip_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubit(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let scaled: Vec<Vec<_>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > tolerance::RANK)
        .map(|(k, &p)| eig.eigenvectors.column(k).into_iter().map(|z| z * p.sqrt()).collect())
        .collect();
    let r = scaled.len();
    let mut s = [0.0; 4];
    if r == 0 {
        return Ok(s);
    }
    let y = sigma_yy();
    let flipped: Vec<Vec<_>> = scaled
        .iter()
        .map(|v| y.apply(&v.iter().map(|z| z.conj()).collect::<Vec<_>>()))
        .collect();
    let tau = ComplexMatrix::from_fn(r, r, |i, j| {
        scaled[i].iter().zip(&flipped[j]).map(|(a, b)| a.conj() * b).sum()
    });
    let dilation = ComplexMatrix::from_fn(2 * r, 2 * r, |i, j| match (i < r, j < r) {
        (true, false) => tau[(i, j - r)],
        (false, true) => tau[(j, i - r)].conj(),
        _ => c(0.0, 0.0),
    });
    let spectrum = hermitian_eigen(&dilation)?.eigenvalues;
    for (k, value) in spectrum.iter().rev().take(r).enumerate() {
        s[k] = value.max(0.0);
    }
    Ok(s)
}

/// Wootters concurrence `max(0, s1 - s2 - s3 - s4)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let s = spin_flip_singular_values(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// `H[(1 + √(1 - C²)) / 2]`, the two-qubit entanglement of formation as a
/// function of the concurrence.
pub fn eof_from_concurrence(concurrence: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&concurrence) {
        return Err(Error::ParameterOutOfRange {
            name: "concurrence",
            value: concurrence,
            range: "[0, 1]",
        });
    }
    binary_entropy(0.5 * (1.0 + (1.0 - concurrence * concurrence).sqrt()))
}

pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    eof_from_concurrence(concurrence(rho)?)
}

/// Binary entropy in bits with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(-xlog2x(p) - xlog2x(1.0 - p))
}

/// `x log2 x` with `0 log 0 = 0`.
fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// An orthonormal basis of maximally entangled two-qubit states:
/// `{(U ⊗ I)|Φ+>, (U ⊗ I)|Φ->, (U ⊗ I)|Ψ+>, (U ⊗ I)|Ψ->}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellFrame {
    local_a: ComplexMatrix,
}

impl BellFrame {
    pub fn standard() -> Self {
        Self {
            local_a: ComplexMatrix::identity(2),
        }
    }

    /// Frame rotated by a local unitary on A.
    pub fn rotated(u_a: &ComplexMatrix) -> Result<Self> {
        if u_a.rows() != 2 || u_a.cols() != 2 {
            return Err(Error::dims("2x2 unitary", format!("{}x{}", u_a.rows(), u_a.cols())));
        }
        let deviation = u_a.unitarity_deviation();
        if deviation > tolerance::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { local_a: u_a.clone() })
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> ComplexMatrix {
        kron(&self.local_a, &ComplexMatrix::identity(2)).matmul(&bell_basis())
    }
}

/// Diagonal of `rho` written in the given Bell frame.
pub fn bell_diagonal(rho: &DensityMatrix, frame: &BellFrame) -> Result<[f64; 4]> {
    require_two_qubit(rho)?;
    let m = change_basis(rho.matrix(), &frame.basis())?;
    Ok([m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re])
}

/// Hashing bound `g = 1 + Σ λ_x log2 λ_x` over the Bell-frame diagonal.
/// Not clamped: negative values mean the bound is void (the usable bound
/// on distillable entanglement is `max(0, g)`).
pub fn g_lower_bound(rho: &DensityMatrix, frame: &BellFrame) -> Result<f64> {
    let diag = bell_diagonal(rho, frame)?;
    Ok(1.0 + diag.iter().map(|&l| xlog2x(l)).sum::<f64>())
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasureReport {
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
    pub concurrence: Option<f64>,
    pub entanglement_of_formation: Option<f64>,
    /// Hashing bound in the standard Bell frame.
    pub g_bound: Option<f64>,
    pub ppt_verdict: PptVerdict,
    pub separability_verdict: SeparabilityVerdict,
}

/// Every applicable quantity for one state. Two-qubit-only entries are `None`
/// for other dimensions.
pub fn measure_report(rho: &DensityMatrix) -> Result<MeasureReport> {
    let (negativity, mu) = negativity(rho)?;
    let sep = ppt_separability(rho)?;
    let (concurrence, eof, g) = if rho.is_two_qubit() {
        let conc = concurrence(rho)?;
        (
            Some(conc),
            Some(eof_from_concurrence(conc)?),
            Some(g_lower_bound(rho, &BellFrame::standard())?),
        )
    } else {
        (None, None, None)
    };
    Ok(MeasureReport {
        negativity,
        min_pt_eigenvalue: mu,
        concurrence,
        entanglement_of_formation: eof,
        g_bound: g,
        ppt_verdict: sep.ppt,
        separability_verdict: sep.verdict,
    })
}
