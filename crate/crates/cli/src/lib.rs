//! Command-line front end for the three-dot quantum Otto engine simulator.
//!
//! Every command resolves a [`RunConfig`] in the order
//! defaults ← `--config` file ← `--preset` ← individual flags, runs, and
//! renders CSV or JSON. [`render`] produces the output without touching the
//! filesystem; the binary writes it out and maps errors to exit codes.

pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qdotto_core::{
    find_critical_lambdas, report_for_cycle, run_cycle, run_sweep, Column, CriticalPoint, Grid,
    JzConvention, PairingRule, StateTag,
};
use serde::de::DeserializeOwned;
use thiserror::Error;

pub use config::{Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 2 for invalid input, 3 for numerical failure, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qdotto",
    version,
    about = "Quantum Otto engine with three coupled quantum dots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a single cycle at the configured λ and report work and heats.
    Cycle(CommonArgs),
    /// Sweep λ over a grid.
    Sweep(SweepArgs),
    /// Sweep a named figure preset over its default grid.
    Figure {
        /// Preset name, e.g. work_heat_baseline or ent_sym_2mev.
        name: String,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Entanglement of the cold-end or hot-end thermal state at the configured λ.
    Entangle(EntangleArgs),
}

/// Parses a value through its serde spelling, so flags and config files
/// accept the same words.
fn serde_value<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_state(s: &str) -> Result<StateTag, String> {
    match serde_value::<StateTag>(s)? {
        StateTag::Custom => Err("expected 'cold' or 'hot'".into()),
        tag => Ok(tag),
    }
}

fn parse_triple(s: &str) -> Result<Vec<f64>, String> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    parts.map_err(|e| format!("expected comma-separated numbers: {e}"))
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    match *parse_triple(s)?.as_slice() {
        [start, stop, step] => Ok(Grid::new(start, stop, step)),
        _ => Err("expected start,stop,step".into()),
    }
}

fn parse_omega(s: &str) -> Result<[f64; 3], String> {
    match *parse_triple(s)?.as_slice() {
        [a, b, c] => Ok([a, b, c]),
        [a] => Ok([a; 3]),
        _ => Err("expected one value or three comma-separated values".into()),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Named parameter preset, applied over the config file.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exciton energies ħω in meV: one value for all dots or three values.
    #[arg(long, value_parser = parse_omega)]
    pub omega: Option<[f64; 3]>,
    /// Dipolar coupling ħJ_z in meV.
    #[arg(long)]
    pub jz: Option<f64>,
    /// Förster coupling λ in meV.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Dipole-field energy ħΩ at the hot end, meV.
    #[arg(long)]
    pub omega_hot: Option<f64>,
    /// Dipole-field energy ħΩ at the cold end, meV.
    #[arg(long)]
    pub omega_cold: Option<f64>,
    /// Hot-bath temperature, K.
    #[arg(long)]
    pub t_hot: Option<f64>,
    /// Cold-bath temperature, K.
    #[arg(long)]
    pub t_cold: Option<f64>,
    /// literal (2·J_z per excited pair) or per-pair (J_z per excited pair).
    #[arg(long, value_parser = serde_value::<JzConvention>)]
    pub jz_convention: Option<JzConvention>,
    /// Level pairing across adiabatic strokes: overlap or sorted.
    #[arg(long, value_parser = serde_value::<PairingRule>)]
    pub pairing: Option<PairingRule>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// λ grid in meV as start,stop,step (inclusive).
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Measure entanglement at every grid point.
    #[arg(long)]
    pub entangle: bool,
    /// Thermal state whose entanglement is measured: cold or hot.
    #[arg(long, value_parser = parse_state)]
    pub entangle_at: Option<StateTag>,
    /// Append critical λ values of these columns (e.g. w_mev, c12).
    #[arg(long, value_delimiter = ',')]
    pub criticals: Vec<Column>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EntangleArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Thermal state to analyse: cold or hot.
    #[arg(long, value_parser = parse_state)]
    pub entangle_at: Option<StateTag>,
}

/// Rendered command output and where it should go.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    /// `None` means standard output.
    pub path: Option<PathBuf>,
}

fn resolve(common: &CommonArgs, preset: Option<&str>) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(name) = preset {
        cfg.apply_preset(name)?;
    }
    let m = &mut cfg.model;
    let c = &mut cfg.cycle;
    if let Some(v) = common.omega {
        m.omega_mev = v;
    }
    if let Some(v) = common.jz {
        m.jz_mev = v;
    }
    if let Some(v) = common.lambda {
        m.lambda_mev = v;
    }
    if let Some(v) = common.jz_convention {
        m.jz_convention = v;
    }
    if let Some(v) = common.omega_hot {
        c.omega_field_hot_mev = v;
    }
    if let Some(v) = common.omega_cold {
        c.omega_field_cold_mev = v;
    }
    if let Some(v) = common.t_hot {
        c.t_hot_k = v;
    }
    if let Some(v) = common.t_cold {
        c.t_cold_k = v;
    }
    if let Some(v) = common.pairing {
        c.pairing = v;
    }
    if let Some(v) = common.format {
        cfg.output.format = v;
    }
    if let Some(v) = &common.out {
        cfg.output.path = Some(v.clone());
    }
    Ok(cfg)
}

fn resolve_sweep(args: &SweepArgs, preset: Option<&str>) -> Result<RunConfig, CliError> {
    let mut cfg = resolve(&args.common, preset)?;
    if let Some(g) = args.grid {
        cfg.sweep.grid = g;
    }
    if args.entangle {
        cfg.sweep.measure_entanglement = true;
    }
    if let Some(tag) = args.entangle_at {
        cfg.sweep.entanglement_at = tag;
    }
    Ok(cfg)
}

fn printed_config(cfg: &RunConfig) -> Rendered {
    Rendered {
        text: cfg.to_json() + "\n",
        path: None,
    }
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn render_cycle(common: &CommonArgs) -> Result<Rendered, CliError> {
    let cfg = resolve(common, common.preset.as_deref())?;
    if common.print_config {
        return Ok(printed_config(&cfg));
    }
    let result = run_cycle(&cfg.cycle_spec()?).map_err(numerical)?;
    let text = match cfg.output.format {
        Format::Csv => output::cycle_csv(&result)?,
        Format::Json => output::json_document(&cfg, &[output::CycleRecord::from(&result)], None),
    };
    Ok(Rendered {
        text,
        path: cfg.output.path,
    })
}

fn render_sweep(args: &SweepArgs, preset: Option<&str>) -> Result<Rendered, CliError> {
    let cfg = resolve_sweep(args, preset)?;
    if args.common.print_config {
        return Ok(printed_config(&cfg));
    }
    let spec = cfg.sweep_spec()?;
    if let Some(col) = args.criticals.iter().find(|c| c.is_entanglement()) {
        if !spec.measure_entanglement {
            return Err(CliError::Config(format!(
                "--criticals {col} needs sweep.measure_entanglement (pass --entangle)"
            )));
        }
    }
    let rows = run_sweep(&spec).map_err(config::sweep_error)?;
    let criticals: Vec<(String, CriticalPoint)> = args
        .criticals
        .iter()
        .flat_map(|&col| {
            find_critical_lambdas(&rows, col)
                .into_iter()
                .map(move |c| (col.header().to_string(), c))
        })
        .collect();
    let text = match cfg.output.format {
        Format::Csv => output::sweep_csv(&rows, &criticals)?,
        Format::Json => {
            let crit = (!args.criticals.is_empty()).then_some(criticals.as_slice());
            output::json_document(&cfg, &rows, crit)
        }
    };
    Ok(Rendered {
        text,
        path: cfg.output.path,
    })
}

fn render_entangle(args: &EntangleArgs) -> Result<Rendered, CliError> {
    let mut cfg = resolve(&args.common, args.common.preset.as_deref())?;
    if let Some(tag) = args.entangle_at {
        cfg.sweep.entanglement_at = tag;
    }
    if args.common.print_config {
        return Ok(printed_config(&cfg));
    }
    let cs = cfg.cycle_spec()?;
    let report = report_for_cycle(&cs, cfg.sweep.entanglement_at).map_err(numerical)?;
    let lambda = cs.base.lambda_mev;
    let text = match cfg.output.format {
        Format::Csv => output::entangle_csv(lambda, &report)?,
        Format::Json => {
            output::json_document(&cfg, &[output::EntangleRecord::new(lambda, &report)], None)
        }
    };
    Ok(Rendered {
        text,
        path: cfg.output.path,
    })
}

/// Runs a parsed command and returns its output.
pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Cycle(common) => render_cycle(common),
        Command::Sweep(args) => render_sweep(args, args.common.preset.as_deref()),
        Command::Figure { name, args } => {
            if args.common.preset.is_some() {
                return Err(CliError::Config(
                    "figure takes its preset as the positional name; drop --preset".into(),
                ));
            }
            render_sweep(args, Some(name))
        }
        Command::Entangle(args) => render_entangle(args),
    }
}

/// Runs a command and writes its output to the configured destination.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let rendered = render(cli)?;
    match &rendered.path {
        Some(path) => std::fs::write(path, &rendered.text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
