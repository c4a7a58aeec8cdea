//! Randomized check that, for pure entangled two-qubit inputs, a local
//! channel separating the output must be entanglement breaking.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{apply_local, is_entanglement_breaking, KrausChannel};
use crate::error::Result;
use crate::linalg::{c, ComplexMatrix};
use crate::measures::min_pt_eigenvalue;
use crate::random::{random_channel, stream_rng};
use crate::state::{DensityMatrix, PureState, Subsystem};
use crate::tolerance;

/// Everything needed to reproduce a failing trial.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub trial: u64,
    pub alpha: f64,
    pub kraus: Vec<ComplexMatrix>,
    pub output_min_pt_eigenvalue: f64,
    pub choi_min_pt_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NogoReport {
    pub trials: u64,
    pub seed: u64,
    /// Trials whose output was PPT.
    pub separable_outputs: u64,
    /// Of those, trials whose channel passed the entanglement-breaking test.
    pub eb_confirmed: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl NogoReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    /// Output entangled; nothing to check.
    Entangled,
    /// Output separable and the channel is entanglement breaking.
    Consistent,
    Counterexample,
}

/// `alpha |00> + sqrt(1 - alpha^2) |11>`.
pub fn schmidt_form(alpha: f64) -> Result<PureState> {
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    PureState::from_terms(2, 2, &[(0, 0, c(alpha, 0.0)), (1, 1, c(beta, 0.0))])
}

/// Applies `channel` to side A of the Schmidt-form state and checks the implication.
pub fn check_trial(channel: &KrausChannel, alpha: f64) -> Result<(TrialOutcome, f64, f64)> {
    let rho = DensityMatrix::from_pure(&schmidt_form(alpha)?);
    let mu_out = min_pt_eigenvalue(&apply_local(channel, &rho, Subsystem::A)?)?;
    if mu_out < -tolerance::PSD {
        return Ok((TrialOutcome::Entangled, mu_out, f64::NAN));
    }
    let eb = is_entanglement_breaking(channel)?;
    let outcome = if eb.breaking {
        TrialOutcome::Consistent
    } else {
        TrialOutcome::Counterexample
    };
    Ok((outcome, mu_out, eb.choi_min_pt_eigenvalue))
}

fn run_trial(seed: u64, trial: u64) -> Result<(TrialOutcome, Option<Counterexample>)> {
    let mut rng = stream_rng(seed, trial);
    let rank = rng.random_range(1..=4);
    let channel = random_channel(&mut rng, 2, rank)?;
    let alpha = loop {
        let a: f64 = rng.random();
        if a > 0.0 {
            break a;
        }
    };
    let (outcome, mu_out, mu_choi) = check_trial(&channel, alpha)?;
    let witness = (outcome == TrialOutcome::Counterexample).then(|| Counterexample {
        trial,
        alpha,
        kraus: channel.ops().to_vec(),
        output_min_pt_eigenvalue: mu_out,
        choi_min_pt_eigenvalue: mu_choi,
    });
    Ok((outcome, witness))
}

/// Trial `i` draws from its own ChaCha stream, so the report does not
/// depend on scheduling or thread count.
pub fn pure_state_nogo_scan(trials: u64, seed: u64) -> Result<NogoReport> {
    let results = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(seed, i))
        .collect::<Result<Vec<_>>>()?;
    let mut report = NogoReport {
        trials,
        seed,
        separable_outputs: 0,
        eb_confirmed: 0,
        counterexamples: Vec::new(),
    };
    for (outcome, witness) in results {
        match outcome {
            TrialOutcome::Entangled => {}
            TrialOutcome::Consistent => {
                report.separable_outputs += 1;
                report.eb_confirmed += 1;
            }
            TrialOutcome::Counterexample => report.separable_outputs += 1,
        }
        report.counterexamples.extend(witness);
    }
    Ok(report)
}
