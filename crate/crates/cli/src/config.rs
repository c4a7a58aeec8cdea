use std::path::{Path, PathBuf};

use entbreak_core::scenarios::SolveOptions;
use serde::Deserialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_GRID_POINTS: usize = 101;
pub const SEED_ENV: &str = "ENTBREAK_SEED";

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConfigFile {
    pub grid_points: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Option<ToleranceOverrides>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Bracket width at which bisection stops.
    pub bisection: Option<f64>,
    /// Grid points used to find the first bracket.
    pub scan_points: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Settings after merging flags, config file, environment and defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid_points: usize,
    pub seed: u64,
    pub solve: SolveOptions,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    /// Precedence: flag, then config file, then `ENTBREAK_SEED` (seed only), then defaults.
    pub fn resolve(
        file: ConfigFile,
        grid_flag: Option<usize>,
        seed_flag: Option<u64>,
        output_flag: Option<PathBuf>,
        format_flag: Option<Format>,
    ) -> CliResult<Self> {
        let env_seed = match std::env::var(SEED_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")))?,
            ),
            Err(_) => None,
        };
        let grid_points = grid_flag.or(file.grid_points).unwrap_or(DEFAULT_GRID_POINTS);
        if grid_points < 2 {
            return Err(CliError::Usage(format!(
                "grid points must be at least 2, got {grid_points}"
            )));
        }
        let mut solve = SolveOptions::default();
        if let Some(t) = file.tolerances {
            if let Some(b) = t.bisection {
                if !(b > 0.0 && b.is_finite()) {
                    return Err(CliError::Usage(format!(
                        "bisection tolerance must be positive, got {b}"
                    )));
                }
                solve.tolerance = b;
            }
            if let Some(n) = t.scan_points {
                if n < 2 {
                    return Err(CliError::Usage(format!("scan points must be at least 2, got {n}")));
                }
                solve.scan_points = n;
            }
        }
        Ok(Self {
            grid_points,
            seed: seed_flag.or(file.seed).or(env_seed).unwrap_or(DEFAULT_SEED),
            solve,
            output_path: output_flag.or(file.output_path),
            format: format_flag.or(file.format),
        })
    }
}
