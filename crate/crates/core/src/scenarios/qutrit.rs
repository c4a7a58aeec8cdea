//! The two-qutrit construction: a dephasing channel that leaves one state
//! untouched and breaks the other, with the pair linked by a local filter.

use serde::Serialize;

use super::certify::LoccStep;
use super::states::{qutrit_psi1, qutrit_psi2};
use crate::channels::{apply_branch_pure, apply_local, qutrit_dephase, qutrit_filter};
use crate::error::Result;
use crate::linalg::{c, ComplexMatrix};
use crate::measures::{
    negativity, separability_with_decomposition, ProductDecomposition, ProductTerm, SeparabilityVerdict,
};
use crate::state::{DensityMatrix, PureState, Subsystem};

/// Slack for the branch-by-branch comparisons with ψ₂.
pub const BRANCH_MATCH: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchReport {
    pub outcome: usize,
    pub probability: f64,
    pub schmidt_coefficients: Vec<f64>,
    /// Max difference from `{√(1-q), √q}` (sorted descending, zeros included).
    pub schmidt_deviation: f64,
    /// `1 - |<ψ₂| (U ⊗ V) |branch>|²` after the correction.
    pub infidelity_after_correction: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QutritReport {
    pub q: f64,
    pub local_rank_psi1: usize,
    pub out1_negativity: f64,
    pub out1_min_pt_eigenvalue: f64,
    pub out1_decomposition: ProductDecomposition,
    pub out1_decomposition_deviation: f64,
    pub out1_verdict: SeparabilityVerdict,
    pub out2_negativity: f64,
    /// Max-norm distance of the output from `|ψ₂><ψ₂|`.
    pub out2_deviation: f64,
    pub filter_completeness_error: f64,
    pub branches: Vec<BranchReport>,
    /// Max-norm distance between the filtered-and-corrected ψ₁ and ψ₂.
    pub chain_deviation: f64,
    pub chain_verified: bool,
}

fn permutation(images: [usize; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3, 3);
    for (from, &to) in images.iter().enumerate() {
        m[(to, from)] = c(1.0, 0.0);
    }
    m
}

/// Level relabelings that bring each filter branch to ψ₂, applied on both sides.
pub fn branch_corrections() -> [ComplexMatrix; 2] {
    // outcome 0 leaves weight on |22> where ψ₂ wants |00>: swap levels 0 and 2
    // outcome 1: 1 -> 0, 2 -> 1
    [permutation([2, 1, 0]), permutation([2, 0, 1])]
}

fn level_projector(k: usize) -> ComplexMatrix {
    let mut diag = [0.0; 3];
    diag[k] = 1.0;
    ComplexMatrix::diag_real(&diag)
}

pub fn qutrit_example(q: f64) -> Result<QutritReport> {
    let filter = qutrit_filter(q)?;
    let psi1 = qutrit_psi1();
    let psi2 = qutrit_psi2(q)?;
    let rho1 = DensityMatrix::from_pure(&psi1);
    let rho2 = DensityMatrix::from_pure(&psi2);

    let dephase = qutrit_dephase();
    let out1 = apply_local(&dephase, &rho1, Subsystem::A)?;
    let out2 = apply_local(&dephase, &rho2, Subsystem::A)?;
    let (out1_negativity, out1_min_pt_eigenvalue) = negativity(&out1)?;
    let (out2_negativity, _) = negativity(&out2)?;

    let decomposition = ProductDecomposition::new(
        [1, 2]
            .into_iter()
            .map(|k| ProductTerm {
                weight: 0.5,
                rho_a: level_projector(k),
                rho_b: level_projector(k),
            })
            .collect(),
    );
    let sep = separability_with_decomposition(&out1, &decomposition)?;

    let mut expected = vec![(1.0 - q).sqrt(), q.sqrt(), 0.0];
    expected.sort_by(|a, b| b.total_cmp(a));
    let corrections = branch_corrections();
    let mut branches = Vec::with_capacity(2);
    for (outcome, (op, fix)) in filter.ops().iter().zip(&corrections).enumerate() {
        let Some((probability, branch)) = apply_branch_pure(op, &psi1, Subsystem::A)? else {
            continue;
        };
        let schmidt_coefficients = branch.schmidt_coefficients()?;
        let schmidt_deviation = schmidt_coefficients
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let corrected = PureState::new(3, 3, branch.apply_local(fix, fix))?;
        branches.push(BranchReport {
            outcome,
            probability,
            schmidt_coefficients,
            schmidt_deviation,
            infidelity_after_correction: 1.0 - corrected.fidelity(&psi2),
        });
    }

    let chain = LoccStep::FilterWithCorrection {
        side: Subsystem::A,
        filter: filter.clone(),
        corrections: corrections.iter().map(|u| (u.clone(), u.clone())).collect(),
    };
    let chain_deviation = chain.apply(&rho1)?.max_abs_diff(&rho2);
    let chain_verified = chain_deviation <= BRANCH_MATCH
        && branches.len() == 2
        && branches
            .iter()
            .all(|b| b.schmidt_deviation <= BRANCH_MATCH && b.infidelity_after_correction <= BRANCH_MATCH);

    Ok(QutritReport {
        q,
        local_rank_psi1: rho1.local_rank(Subsystem::A)?,
        out1_negativity,
        out1_min_pt_eigenvalue,
        out1_decomposition_deviation: sep.decomposition_deviation.unwrap_or(f64::INFINITY),
        out1_decomposition: decomposition,
        out1_verdict: sep.verdict,
        out2_negativity,
        out2_deviation: out2.max_abs_diff(&rho2),
        filter_completeness_error: filter.completeness_error(),
        branches,
        chain_deviation,
        chain_verified,
    })
}
