//! Argument definitions and subcommand runners.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polconv_core::gate::{GateParams, KrausCoefficients, Preset};
use polconv_core::graph::{run_scenario, Scenario, DEFAULT_STAR_CENTER};
use polconv_core::measures::{concurrence, discord, DiscordResult, Side};
use polconv_core::robustness::{sample_success_probabilities, summarize, McConfig, McReport};
use polconv_core::states::{NamedState, State, IDENTITY_THRESHOLD, MIXED_STATE_NAMES};
use polconv_core::LocalOperator;
use serde::Serialize;

use crate::angle::{parse_angle, parse_targets, AngleGrid};
use crate::error::{CliError, Result};
use crate::report::RunReport;
use crate::sweep::{format_float, parse_quantities, run_sweep, write_csv, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "polconv", version, about = "Simulate a tunable two-photon polarization conversion gate")]
pub struct Cli {
    /// Read plain-number angles as degrees (π expressions stay radians).
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Write the main output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate quantities on a grid of wave-plate angles.
    Sweep(SweepArgs),
    /// Run a named conversion and check the output against its target.
    Convert(ConvertArgs),
    /// Success-probability statistics under random angle errors.
    Montecarlo(MonteCarloArgs),
    /// Discord of a named two-qubit state or of a gate output.
    Discord(DiscordArgs),
    /// Replay a network rewiring scenario.
    Graph(GraphArgs),
    /// List state names accepted by --input, --state and fidelity:<state>.
    ListStates(ListArgs),
    /// List conversion presets with their canonical angles.
    ListPresets(ListArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Input state name.
    #[arg(long, default_value = "PlusPlus")]
    pub input: String,
    /// Qubits fed into the gate, e.g. 2,3.
    #[arg(long, default_value = "1,2")]
    pub targets: String,
    /// θ₁ grid as start:stop:steps.
    #[arg(long, default_value = "0:pi/2:201")]
    pub theta1: String,
    /// θ₂ grid as start:stop:steps.
    #[arg(long, default_value = "0:pi/2:201")]
    pub theta2: String,
    /// Comma-separated list of p_s, concurrence, discord_AB, discord_BA, fidelity:<state>.
    #[arg(long, default_value = "p_s")]
    pub quantities: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Preset name (see list-presets).
    pub preset: String,
    /// Input state; defaults to the preset's own input.
    #[arg(long)]
    pub input: Option<String>,
    /// Gate qubits; defaults to the preset's own targets.
    #[arg(long)]
    pub targets: Option<String>,
    /// Index into the preset's angle settings (0 is canonical).
    #[arg(long, default_value_t = 0)]
    pub setting: usize,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    /// Preset name (see list-presets).
    pub preset: String,
    #[arg(long, default_value_t = polconv_core::robustness::DEFAULT_RUNS)]
    pub runs: usize,
    /// Fractional half-width of the uniform angle error.
    #[arg(long, default_value_t = polconv_core::robustness::DEFAULT_SPREAD)]
    pub spread: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Also write every run's angles and p_s to this CSV file.
    #[arg(long)]
    pub samples: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    /// Named two-qubit state to evaluate directly.
    #[arg(long, conflicts_with_all = ["theta1", "theta2", "input"])]
    pub state: Option<String>,
    /// θ₁ of a gate applied to --input.
    #[arg(long, requires = "theta2", allow_hyphen_values = true)]
    pub theta1: Option<String>,
    /// θ₂ of a gate applied to --input.
    #[arg(long, requires = "theta1", allow_hyphen_values = true)]
    pub theta2: Option<String>,
    /// Gate input when angles are given.
    #[arg(long)]
    pub input: Option<String>,
    /// Which qubit is measured.
    #[arg(long, value_enum, default_value_t = Measured::Both)]
    pub measured: Measured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Measured {
    A,
    B,
    Both,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// One of star, keep, two_graphs, hybrid.
    pub scenario: String,
    /// Central qubit of the star scenario.
    #[arg(long)]
    pub center: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

/// Whether the command met its verification target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

/// Runs `cli`, writing to `--output` or to `stdout`. `argv` is echoed in reports.
pub fn run(cli: &Cli, argv: &[String], stdout: &mut dyn Write) -> Result<Status> {
    let started = Instant::now();
    let degrees = cli.degrees;
    match &cli.command {
        Command::Sweep(a) => {
            let cfg = SweepConfig {
                input: a.input.clone(),
                targets: parse_targets(&a.targets)?,
                theta1: AngleGrid::parse(&a.theta1, degrees)?,
                theta2: AngleGrid::parse(&a.theta2, degrees)?,
                quantities: parse_quantities(&a.quantities)?,
            };
            let table = run_sweep(&cfg)?;
            with_output(cli.output.as_deref(), stdout, |w| match a.format {
                Format::Csv => write_csv(&table, w),
                Format::Json => RunReport::new(argv, &cfg, &table, started, None)?.write(w),
            })?;
            Ok(Status::Passed)
        }
        Command::Convert(a) => {
            let (results, status) = convert(a)?;
            emit(cli, stdout, RunReport::new(argv, &ConvertConfig::from(a), &results, started, None)?)?;
            Ok(status)
        }
        Command::Montecarlo(a) => {
            let cfg =
                McConfig { preset: Preset::from_name(&a.preset)?, n_runs: a.runs, spread: a.spread, seed: a.seed };
            cfg.validate()?;
            let samples = sample_success_probabilities(&cfg)?;
            if let Some(path) = &a.samples {
                write_samples(path, &samples)?;
            }
            let report: McReport = summarize(&cfg, &samples);
            emit(cli, stdout, RunReport::new(argv, &cfg, &report, started, Some(cfg.seed))?)?;
            Ok(Status::Passed)
        }
        Command::Discord(a) => {
            let results = discord_command(a, degrees)?;
            emit(cli, stdout, RunReport::new(argv, &results.source, &results, started, None)?)?;
            Ok(Status::Passed)
        }
        Command::Graph(a) => {
            let scenario = match (Scenario::from_name(&a.scenario)?, a.center) {
                (Scenario::Star { .. }, c) => Scenario::Star { center: c.unwrap_or(DEFAULT_STAR_CENTER) },
                (_, Some(_)) => return Err(CliError::config("--center only applies to the star scenario")),
                (s, None) => s,
            };
            let report = run_scenario(scenario)?;
            let status = if report.passed() { Status::Passed } else { Status::Failed };
            emit(cli, stdout, RunReport::new(argv, &scenario, &report, started, None)?)?;
            Ok(status)
        }
        Command::ListStates(a) => {
            let states: Vec<StateEntry> = NamedState::ALL
                .iter()
                .map(|s| StateEntry { name: s.name(), qubits: s.qubits(), mixed: false })
                .chain(MIXED_STATE_NAMES.iter().map(|&name| StateEntry { name, qubits: 2, mixed: true }))
                .collect();
            with_output(cli.output.as_deref(), stdout, |w| {
                if a.json {
                    return write_json(w, &states);
                }
                for s in &states {
                    let kind = if s.mixed { "mixed" } else { "pure" };
                    writeln!(w, "{:<18} {} qubits  {kind}", s.name, s.qubits).map_err(CliError::Stdout)?;
                }
                Ok(())
            })?;
            Ok(Status::Passed)
        }
        Command::ListPresets(a) => {
            let presets: Vec<PresetEntry> = Preset::ALL.iter().map(PresetEntry::from).collect();
            with_output(cli.output.as_deref(), stdout, |w| {
                if a.json {
                    return write_json(w, &presets);
                }
                for p in &presets {
                    writeln!(
                        w,
                        "{:<15} theta1={:<20} theta2={:<20} p_s={:<7} {} -> {} on {},{}",
                        p.name,
                        format_float(p.theta1),
                        format_float(p.theta2),
                        format_float(p.success_probability),
                        p.input,
                        p.target,
                        p.targets.0,
                        p.targets.1
                    )
                    .map_err(CliError::Stdout)?;
                }
                Ok(())
            })?;
            Ok(Status::Passed)
        }
    }
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io { path: p.into(), source })?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|source| CliError::Io { path: p.into(), source })
        }
        None => f(stdout),
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, report: RunReport) -> Result<()> {
    with_output(cli.output.as_deref(), stdout, |w| report.write(w))
}

fn write_json(w: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w).map_err(CliError::Stdout)
}

fn write_samples(path: &Path, samples: &[polconv_core::robustness::McSample]) -> Result<()> {
    let file = File::create(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
    w.write_record(["run", "theta1", "theta2", "p_s"])?;
    for (k, s) in samples.iter().enumerate() {
        w.write_record([
            k.to_string(),
            format_float(s.params.theta1),
            format_float(s.params.theta2),
            format_float(s.success_probability),
        ])?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.into(), source })
}

#[derive(Debug, Serialize)]
struct StateEntry {
    name: &'static str,
    qubits: usize,
    mixed: bool,
}

#[derive(Debug, Serialize)]
struct PresetEntry {
    name: &'static str,
    theta1: f64,
    theta2: f64,
    success_probability: f64,
    input: &'static str,
    target: &'static str,
    targets: (usize, usize),
    alternates: usize,
}

impl From<&Preset> for PresetEntry {
    fn from(p: &Preset) -> Self {
        let params = p.params();
        Self {
            name: p.name(),
            theta1: params.theta1,
            theta2: params.theta2,
            success_probability: p.nominal_success_probability(),
            input: p.input_name(),
            target: p.target_name(),
            targets: p.targets(),
            alternates: p.settings().len() - 1,
        }
    }
}

#[derive(Debug, Serialize)]
struct ConvertConfig {
    preset: String,
    input: Option<String>,
    targets: Option<String>,
    setting: usize,
}

impl From<&ConvertArgs> for ConvertConfig {
    fn from(a: &ConvertArgs) -> Self {
        Self { preset: a.preset.clone(), input: a.input.clone(), targets: a.targets.clone(), setting: a.setting }
    }
}

#[derive(Debug, Serialize)]
pub struct ConvertResults {
    pub preset: Preset,
    pub input: String,
    pub targets: (usize, usize),
    pub params: GateParams,
    pub coefficients: KrausCoefficients,
    /// Local operators applied after the gate, one per qubit; empty when none.
    pub correction: Vec<String>,
    pub success_probability: f64,
    pub nominal_success_probability: f64,
    pub target: String,
    pub fidelity: f64,
    pub pass: bool,
}

fn convert(a: &ConvertArgs) -> Result<(ConvertResults, Status)> {
    let preset = Preset::from_name(&a.preset)?;
    let mut settings = preset.settings();
    if a.setting >= settings.len() {
        return Err(CliError::config(format!(
            "preset {} has {} settings; --setting {} is out of range",
            preset.name(),
            settings.len(),
            a.setting
        )));
    }
    let setting = settings.swap_remove(a.setting);
    let input_name = a.input.clone().unwrap_or_else(|| preset.input_name().into());
    let input = State::from_name(&input_name)?;
    let targets = match &a.targets {
        Some(t) => parse_targets(t)?,
        None => preset.targets(),
    };
    let target = preset.target();
    if input.qubits() != target.qubits() {
        return Err(CliError::config(format!(
            "input {input_name} has {} qubits but the {} target has {}",
            input.qubits(),
            preset.name(),
            target.qubits()
        )));
    }
    let out = input.apply_gate(&setting.params, targets)?;
    let mut state = out.state;
    for (k, op) in setting.correction.iter().enumerate() {
        state = state.apply_local(op, k + 1)?;
    }
    let fidelity = state.fidelity(&target)?;
    let pass = fidelity >= IDENTITY_THRESHOLD;
    let correction = setting.correction.iter().map(operator_label).collect();
    let results = ConvertResults {
        preset,
        input: input_name,
        targets,
        params: setting.params,
        coefficients: setting.params.coefficients(),
        correction,
        success_probability: out.success_probability,
        nominal_success_probability: preset.nominal_success_probability(),
        target: preset.target_name().into(),
        fidelity,
        pass,
    };
    Ok((results, if pass { Status::Passed } else { Status::Failed }))
}

/// Short name of a local operator, matched up to global phase. Products act
/// right to left (`XZ` applies `Z` first), so `XZ` and `Y` coincide.
fn operator_label(op: &LocalOperator) -> String {
    let (i, x, y, z, h) = (
        LocalOperator::identity(),
        LocalOperator::pauli_x(),
        LocalOperator::pauli_y(),
        LocalOperator::pauli_z(),
        LocalOperator::hadamard(),
    );
    let known = [
        ("I", i),
        ("X", x),
        ("Z", z),
        ("H", h),
        ("XZ", LocalOperator::product(&[x, z])),
        ("HX", LocalOperator::product(&[h, x])),
        ("Y", y),
    ];
    known
        .iter()
        .find(|(_, k)| {
            let overlap = (k.adjoint().matrix() * op.matrix()).trace();
            (overlap.norm() - 2.0).abs() < 1e-12
        })
        .map_or_else(|| format!("{:?}", op.matrix().as_slice()), |(name, _)| (*name).to_string())
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscordSource {
    State { name: String },
    Gate { input: String, params: GateParams },
}

#[derive(Debug, Serialize)]
pub struct DiscordResults {
    pub source: DiscordSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    pub concurrence: f64,
    pub discord: Vec<DiscordResult>,
}

fn discord_command(a: &DiscordArgs, degrees: bool) -> Result<DiscordResults> {
    let (source, state, p) = match (&a.state, &a.theta1, &a.theta2) {
        (Some(name), _, _) => (DiscordSource::State { name: name.clone() }, State::from_name(name)?, None),
        (None, Some(t1), Some(t2)) => {
            let params = GateParams::new(parse_angle(t1, degrees)?, parse_angle(t2, degrees)?);
            let input = a.input.clone().unwrap_or_else(|| MIXED_STATE_NAMES[0].into());
            let out = State::from_name(&input)?.apply_gate(&params, (1, 2))?;
            (DiscordSource::Gate { input, params }, out.state, Some(out.success_probability))
        }
        _ => return Err(CliError::config("give either --state or both --theta1 and --theta2")),
    };
    if state.qubits() != 2 {
        return Err(CliError::config("discord needs a two-qubit state"));
    }
    let rho = state.to_density();
    let sides: &[Side] = match a.measured {
        Measured::A => &[Side::A],
        Measured::B => &[Side::B],
        Measured::Both => &[Side::B, Side::A],
    };
    let discord = sides.iter().map(|&s| discord(&rho, s)).collect::<polconv_core::Result<Vec<_>>>()?;
    Ok(DiscordResults { source, success_probability: p, concurrence: concurrence(&rho)?, discord })
}
