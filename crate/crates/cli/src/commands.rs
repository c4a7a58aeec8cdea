use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use entbreak_core::channels::{apply_local, phase_damping, ChannelFamily};
use entbreak_core::measures::negativity;
use entbreak_core::scenarios::certify::geometric_sequence;
use entbreak_core::scenarios::closed_form::{lambda_1, negativity_rho1_out, negativity_rho2_out, negativity_rho3_out};
use entbreak_core::scenarios::states::{rho1_in, rho2_in, rho3_in, u_a};
use entbreak_core::scenarios::{
    certify_selective_breaking, certify_strong_selective_breaking, orbit_search, pure_state_nogo_scan,
    solve_lambda_sep, solve_t_threshold, LoccChain, OrbitGrid, StrictWindow,
};
use entbreak_core::{Error, Subsystem};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CertifyKind, Cli, Command, Family, Figure, Format, SolveTarget};
use crate::config::{ConfigFile, RunConfig};
use crate::error::{exit, CliError, CliResult};
use crate::files::{self, SebInstance, StrongSebInstance};
use crate::format::{g15, g15_opt};

pub const FIG2_HEADER: &str = "lambda,N_rho1_out,N_rho2_out,N_rho3_out";
pub const SEARCH_HEADER: &str = "theta,phi,psi,lambda_sep,gap";

/// Standard output and standard error of a command.
pub struct Streams<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn emit_json(streams: &mut Streams, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(streams.out, "{text}").map_err(io_err)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn family(f: Family) -> ChannelFamily {
    match f {
        Family::PhaseDamping => ChannelFamily::phase_damping(),
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::PhaseDamping => "phase-damping",
    }
}

pub fn run(cli: Cli, streams: &mut Streams) -> CliResult<u8> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Reproduce {
            figure: Figure::Fig2 { t, grid, output },
        } => {
            let cfg = RunConfig::resolve(file, grid, None, output, cli.format)?;
            reproduce_fig2(&cfg, t.unwrap_or(1.0 / 3.0), streams)
        }
        Command::Solve { target } => {
            let cfg = RunConfig::resolve(file, None, None, None, cli.format)?;
            match target {
                SolveTarget::LambdaSep { state, family: f } => solve_lambda(&cfg, &state, f, streams),
                SolveTarget::TThreshold => solve_threshold(&cfg, streams),
            }
        }
        Command::Certify {
            kind,
            instance,
            t,
            depth,
        } => {
            let cfg = RunConfig::resolve(file, None, None, None, cli.format)?;
            let instance = instance.filter(|p| p.as_os_str() != "builtin");
            match kind {
                CertifyKind::Seb => certify_seb(&cfg, instance, t, streams),
                CertifyKind::StrongSeb => certify_strong(&cfg, instance, t, depth, streams),
            }
        }
        Command::ScanNogo { trials, seed } => {
            let cfg = RunConfig::resolve(file, None, seed, None, cli.format)?;
            scan_nogo(&cfg, trials, streams)
        }
        Command::Search { state, family: f, grid } => {
            let cfg = RunConfig::resolve(file, None, None, None, cli.format)?;
            search(&cfg, &state, f, grid, streams)
        }
    }
}

/// Rows of the negativity figure: `(λ, N1, N2, N3)`, `λ_k = k / (n - 1)`.
pub fn fig2_rows(t: f64, grid_points: usize) -> CliResult<Vec<[f64; 4]>> {
    if !(t > 0.0 && t < 2.0 / 3.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "(0, 2/3)",
        }
        .into());
    }
    let states = [rho1_in(), rho2_in(), rho3_in(t)?];
    (0..grid_points)
        .map(|k| {
            let lambda = if k + 1 == grid_points {
                1.0
            } else {
                k as f64 / (grid_points - 1) as f64
            };
            let ch = phase_damping(lambda)?;
            let mut row = [lambda, 0.0, 0.0, 0.0];
            for (slot, rho) in row[1..].iter_mut().zip(&states) {
                *slot = negativity(&apply_local(&ch, rho, Subsystem::A)?)?.0;
            }
            Ok(row)
        })
        .collect()
}

pub fn fig2_csv(rows: &[[f64; 4]]) -> String {
    let mut csv = String::from(FIG2_HEADER);
    csv.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|&x| g15(x)).collect();
        writeln!(csv, "{}", fields.join(",")).expect("writing to a String");
    }
    csv
}

fn reproduce_fig2(cfg: &RunConfig, t: f64, streams: &mut Streams) -> CliResult<u8> {
    let rows = fig2_rows(t, cfg.grid_points)?;
    let csv = fig2_csv(&rows);

    let residual = |col: usize, closed: &dyn Fn(f64) -> f64| {
        rows.iter().map(|r| (r[col] - closed(r[0])).abs()).fold(0.0, f64::max)
    };
    let lambda_sep = solve_lambda_sep(&ChannelFamily::phase_damping(), &rho2_in(), &cfg.solve)?;
    let at_lambda_1 = negativity(&apply_local(
        &phase_damping(lambda_sep.value)?,
        &rho1_in(),
        Subsystem::A,
    )?)?
    .0;
    let summary = json!({
        "figure": "fig2",
        "t": t,
        "gridPoints": cfg.grid_points,
        "seed": cfg.seed,
        "columns": FIG2_HEADER.split(',').collect::<Vec<_>>(),
        "lambda1": lambda_sep.value,
        "lambda1ClosedForm": lambda_1(),
        "lambda1Residual": lambda_sep.residual,
        "negativityRho1OutAtLambda1": at_lambda_1,
        "closedFormResiduals": {
            "N_rho1_out": residual(1, &negativity_rho1_out),
            "N_rho2_out": residual(2, &negativity_rho2_out),
            "N_rho3_out": residual(3, &|l| negativity_rho3_out(l, t)),
        },
    });

    match &cfg.output_path {
        Some(path) => {
            write_file(path, &csv)?;
            let companion = path.with_extension("json");
            let text = serde_json::to_string_pretty(&summary).expect("json values serialize") + "\n";
            write_file(&companion, &text)?;
            writeln!(streams.err, "wrote {} and {}", path.display(), companion.display()).map_err(io_err)?;
        }
        None if cfg.format == Some(Format::Json) => emit_json(streams, &summary)?,
        None => streams.out.write_all(csv.as_bytes()).map_err(io_err)?,
    }
    Ok(exit::OK)
}

fn root_json(target: &str, root: &entbreak_core::scenarios::RootReport, seed: u64) -> Value {
    json!({
        "target": target,
        "value": root.value,
        "residual": root.residual,
        "iterations": root.iterations,
        "bracket": [root.bracket.0, root.bracket.1],
        "seed": seed,
    })
}

fn solve_lambda(cfg: &RunConfig, state: &str, f: Family, streams: &mut Streams) -> CliResult<u8> {
    let rho = files::resolve_state(state)?;
    let root = solve_lambda_sep(&family(f), &rho, &cfg.solve)?;
    let mut report = root_json("lambda-sep", &root, cfg.seed);
    report["state"] = json!(state);
    report["family"] = json!(family_name(f));
    emit_json(streams, &report)?;
    Ok(exit::OK)
}

fn solve_threshold(cfg: &RunConfig, streams: &mut Streams) -> CliResult<u8> {
    let root = solve_t_threshold(&cfg.solve)?;
    let mut report = root_json("t-threshold", &root, cfg.seed);
    report["strictWindow"] = to_value(&StrictWindow {
        lo: 0.0,
        hi: root.value,
        lo_open: true,
        hi_open: false,
    });
    emit_json(streams, &report)?;
    Ok(exit::OK)
}

/// `t = 2(1 - ε)/3`: the replace-with-|00> weight taking rho1_in to rho3_in(t).
fn builtin_chain(t: f64) -> LoccChain {
    LoccChain::undo_rotation_then_replace(&u_a(), Subsystem::A, 1.0 - 1.5 * t)
}

fn report_failure(streams: &mut Streams, piece: Option<&str>, detail: Option<&str>) -> CliResult<()> {
    if let Some(piece) = piece {
        writeln!(
            streams.err,
            "certificate failed on piece `{piece}`: {}",
            detail.unwrap_or("")
        )
        .map_err(io_err)?;
    }
    Ok(())
}

fn certify_seb(cfg: &RunConfig, instance: Option<PathBuf>, t: Option<f64>, streams: &mut Streams) -> CliResult<u8> {
    let (source, cert) = match instance {
        None => {
            let t = t.unwrap_or(1.0 / 3.0);
            let cert =
                certify_selective_breaking(&phase_damping(lambda_1())?, &rho2_in(), &rho3_in(t)?, &builtin_chain(t))?
                    .with_strict_window(StrictWindow::for_replace_family()?);
            (json!({"builtin": "phase-damping", "t": t}), cert)
        }
        Some(path) => {
            if t.is_some() {
                return Err(CliError::Usage("--t applies to the built-in instance only".into()));
            }
            let inst: SebInstance = files::read_json(&path)?;
            let cert = certify_selective_breaking(
                &inst.channel.into_channel()?,
                &inst.omega1.into_state()?,
                &inst.omega2.into_state()?,
                &files::chain(inst.chain)?,
            )?;
            (json!({"file": path.display().to_string()}), cert)
        }
    };
    let failed = cert.pieces.iter().find(|p| !p.passed);
    report_failure(
        streams,
        failed.map(|p| p.piece.as_str()),
        failed.map(|p| p.detail.as_str()),
    )?;
    let report = json!({"kind": "seb", "instance": source, "seed": cfg.seed, "certificate": to_value(&cert)});
    emit_json(streams, &report)?;
    Ok(if cert.valid { exit::OK } else { exit::FAILED_CHECK })
}

fn certify_strong(
    cfg: &RunConfig,
    instance: Option<PathBuf>,
    t: Option<f64>,
    depth: usize,
    streams: &mut Streams,
) -> CliResult<u8> {
    let (source, cert) = match instance {
        None => {
            let t0 = t.unwrap_or(1.0 / 3.0);
            let ts = geometric_sequence(t0, depth);
            let cert =
                certify_strong_selective_breaking(&phase_damping(lambda_1())?, &rho2_in(), &builtin_chain(t0), &ts)?;
            (json!({"builtin": "phase-damping", "t0": t0, "depth": depth}), cert)
        }
        Some(path) => {
            if t.is_some() {
                return Err(CliError::Usage("--t applies to the built-in instance only".into()));
            }
            let inst: StrongSebInstance = files::read_json(&path)?;
            let cert = certify_strong_selective_breaking(
                &inst.channel.into_channel()?,
                &inst.omega1.into_state()?,
                &files::chain(inst.link)?,
                &inst.t,
            )?;
            (json!({"file": path.display().to_string()}), cert)
        }
    };
    let failed = cert.pieces.iter().find(|p| !p.passed);
    report_failure(
        streams,
        failed.map(|p| p.piece.as_str()),
        failed.map(|p| p.detail.as_str()),
    )?;
    let report = json!({"kind": "strong-seb", "instance": source, "seed": cfg.seed, "certificate": to_value(&cert)});
    emit_json(streams, &report)?;
    Ok(if cert.valid { exit::OK } else { exit::FAILED_CHECK })
}

fn scan_nogo(cfg: &RunConfig, trials: u64, streams: &mut Streams) -> CliResult<u8> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let report = pure_state_nogo_scan(trials, cfg.seed)?;
    emit_json(streams, &to_value(&report))?;
    if report.passed() {
        Ok(exit::OK)
    } else {
        writeln!(streams.err, "{} counterexample(s)", report.counterexamples.len()).map_err(io_err)?;
        Ok(exit::FAILED_CHECK)
    }
}

pub fn search_csv(outcome: &entbreak_core::scenarios::SearchOutcome) -> String {
    let mut csv = String::from(SEARCH_HEADER);
    csv.push('\n');
    for r in &outcome.records {
        writeln!(
            csv,
            "{},{},{},{},{}",
            g15(r.theta),
            g15(r.phi),
            g15(r.psi),
            g15_opt(r.lambda_sep_rotated),
            g15_opt(r.gap)
        )
        .expect("writing to a String");
    }
    csv
}

fn search(cfg: &RunConfig, state: &str, f: Family, grid: usize, streams: &mut Streams) -> CliResult<u8> {
    if grid == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    let rho = files::resolve_state(state)?;
    let mut outcome = orbit_search(&rho, &family(f), &OrbitGrid::cube(grid), &cfg.solve)?;
    if outcome.lambda_sep_base.is_none() {
        writeln!(
            streams.err,
            "no sign change: {state} is never entangled-then-separable along {}",
            family_name(f)
        )
        .map_err(io_err)?;
        outcome.records.clear();
    }
    match cfg.format {
        Some(Format::Json) => {
            let mut report = to_value(&outcome);
            report["state"] = json!(state);
            report["seed"] = json!(cfg.seed);
            emit_json(streams, &report)?;
        }
        _ => streams.out.write_all(search_csv(&outcome).as_bytes()).map_err(io_err)?,
    }
    Ok(exit::OK)
}
