use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "entbreak",
    version,
    about = "Entanglement of small bipartite states under local noise"
)]
pub struct Cli {
    /// JSON run configuration; flags take precedence over it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regenerate figure data.
    Reproduce {
        #[command(subcommand)]
        figure: Figure,
    },
    /// Critical noise value or strict-window threshold.
    Solve {
        #[command(subcommand)]
        target: SolveTarget,
    },
    /// Check a (strong) selective entanglement-breaking certificate.
    Certify {
        #[arg(value_enum)]
        kind: CertifyKind,
        /// Instance file; the built-in phase-damping instance when omitted.
        #[arg(long, value_name = "FILE")]
        instance: Option<PathBuf>,
        /// Mixing weight of the second input (first member of the sequence for strong-seb).
        #[arg(long)]
        t: Option<f64>,
        /// Index of the last sequence member for strong-seb.
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Random channels against pure entangled inputs.
    ScanNogo {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Critical noise values over the local unitary orbit of a state.
    Search {
        #[arg(long, value_name = "REF")]
        state: String,
        #[arg(long, value_enum, default_value = "phase-damping")]
        family: Family,
        /// Points per Euler angle.
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Figure {
    /// Output negativities against the damping parameter.
    Fig2 {
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        /// CSV destination; a JSON summary is written next to it.
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveTarget {
    LambdaSep {
        #[arg(long, value_name = "REF")]
        state: String,
        #[arg(long, value_enum, default_value = "phase-damping")]
        family: Family,
    },
    TThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyKind {
    Seb,
    StrongSeb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    PhaseDamping,
}
