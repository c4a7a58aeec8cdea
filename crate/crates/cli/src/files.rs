//! Built-in state references and the JSON file formats for states,
//! channels and certificate instances.

use std::path::Path;

use entbreak_core::channels::KrausChannel;
use entbreak_core::linalg::c;
use entbreak_core::scenarios::states;
use entbreak_core::scenarios::{LoccChain, LoccStep};
use entbreak_core::{ComplexMatrix, DensityMatrix, Subsystem};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Row-major list of `[re, im]` pairs.
pub type MatrixJson = Vec<[f64; 2]>;

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StateFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChannelFile {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrectionJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepJson {
    LocalUnitary {
        side: Subsystem,
        unitary: MatrixJson,
    },
    #[serde(rename = "replace_with_00")]
    ReplaceWith00 {
        epsilon: f64,
    },
    FilterWithCorrection {
        side: Subsystem,
        filter: ChannelFile,
        corrections: Vec<CorrectionJson>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SebInstance {
    pub channel: ChannelFile,
    pub omega1: StateFile,
    pub omega2: StateFile,
    pub chain: Vec<StepJson>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongSebInstance {
    pub channel: ChannelFile,
    pub omega1: StateFile,
    pub link: Vec<StepJson>,
    pub t: Vec<f64>,
}

fn matrix(rows: usize, cols: usize, entries: &[[f64; 2]]) -> CliResult<ComplexMatrix> {
    let data = entries.iter().map(|[re, im]| c(*re, *im)).collect();
    Ok(ComplexMatrix::from_vec(rows, cols, data)?)
}

fn square(entries: &[[f64; 2]]) -> CliResult<ComplexMatrix> {
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n * n != entries.len() {
        return Err(CliError::Usage(format!(
            "square matrix expected, got {} entries",
            entries.len()
        )));
    }
    matrix(n, n, entries)
}

impl StateFile {
    pub fn into_state(self) -> CliResult<DensityMatrix> {
        let n = self.dim_a * self.dim_b;
        Ok(DensityMatrix::new(self.dim_a, self.dim_b, matrix(n, n, &self.matrix)?)?)
    }
}

impl ChannelFile {
    pub fn into_channel(self) -> CliResult<KrausChannel> {
        let ops = self
            .kraus
            .iter()
            .map(|k| matrix(self.dim_out, self.dim_in, k))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(KrausChannel::new(ops)?)
    }
}

impl StepJson {
    pub fn into_step(self) -> CliResult<LoccStep> {
        Ok(match self {
            StepJson::LocalUnitary { side, unitary } => LoccStep::LocalUnitary {
                side,
                unitary: square(&unitary)?,
            },
            StepJson::ReplaceWith00 { epsilon } => LoccStep::ReplaceWith00 { epsilon },
            StepJson::FilterWithCorrection {
                side,
                filter,
                corrections,
            } => LoccStep::FilterWithCorrection {
                side,
                filter: filter.into_channel()?,
                corrections: corrections
                    .into_iter()
                    .map(|cj| Ok((square(&cj.a)?, square(&cj.b)?)))
                    .collect::<CliResult<Vec<_>>>()?,
            },
        })
    }
}

pub fn chain(steps: Vec<StepJson>) -> CliResult<LoccChain> {
    Ok(LoccChain::new(
        steps
            .into_iter()
            .map(StepJson::into_step)
            .collect::<CliResult<Vec<_>>>()?,
    ))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn parameter(reference: &str, rest: &str, key: &str) -> CliResult<f64> {
    rest.strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse::<f64>().ok())
        .ok_or_else(|| CliError::UnknownStateRef(reference.to_string()))
}

/// Resolves a built-in name (`rho1_in`, `rho2_in`, `rho3_in:t=V`, `phi_plus`,
/// `qutrit_psi1`, `qutrit_psi2:q=V`) or, failing that, a state file path.
pub fn resolve_state(reference: &str) -> CliResult<DensityMatrix> {
    let (name, rest) = match reference.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (reference, None),
    };
    let builtin = match (name, rest) {
        ("rho1_in", None) => Some(states::rho1_in()),
        ("rho2_in", None) => Some(states::rho2_in()),
        ("rho3_in", Some(r)) => Some(states::rho3_in(parameter(reference, r, "t")?)?),
        ("phi_plus", None) => Some(states::phi_plus()),
        ("qutrit_psi1", None) => Some(DensityMatrix::from_pure(&states::qutrit_psi1())),
        ("qutrit_psi2", Some(r)) => Some(DensityMatrix::from_pure(&states::qutrit_psi2(parameter(
            reference, r, "q",
        )?)?)),
        _ => None,
    };
    if let Some(state) = builtin {
        return Ok(state);
    }
    let path = Path::new(reference);
    if path.is_file() {
        return read_json::<StateFile>(path)?.into_state();
    }
    Err(CliError::UnknownStateRef(reference.to_string()))
}
