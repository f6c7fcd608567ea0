//! Command-line front end used by the `gmec` binary.
//!
//! Data goes to stdout or `--out`; diagnostics go to stderr. Every file
//! written through `--out` gets a `<out>.manifest.json` beside it, and every
//! JSON report embeds the same manifest minus the wall-clock time.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::write_fixtures;
use crate::hardy::{
    format_sig, gmnl_gms_flags, maximize_hardy, maximize_hardy_free, monotonicity_warnings,
    sweep_hardy, write_sweep_csv, MeasurementAngles, PartyAngles, XStateParams,
};
use crate::io::{read_state, state_to_json, PureJson, StateFile};
use crate::manifest::RunManifest;
use crate::measures::{
    coherence_pure, e_min_gme_pure, g_geo_gme_pure, l1_coherence, xstate_gme_concurrence,
    ConcaveFunction, MeasureKind,
};
use crate::random::{random_density_matrix_with, random_pure_state_with, substream};
use crate::roof::{convex_roof, RestartStat, RoofConfig, RoofMeasure, RoofResult};
use crate::state::{DensityMatrix, VALIDATION_TOL};
use crate::uio::{check_theorem3, convert, convert_pure, off_support_max, Estimate, Method, Theorem3Report};

#[derive(Debug, Parser, Serialize)]
#[command(name = "gmec", version, about = "Coherence, GME and Hardy-test calculations")]
pub struct Cli {
    /// Seed for every random choice (roof restarts, trial states, Hardy starts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the full JSON report instead of a short text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RoofArgs {
    /// Ensemble size; defaults to min(rank², 16).
    #[arg(long = "roof-m")]
    pub roof_m: Option<usize>,
    #[arg(long = "roof-restarts", default_value_t = 16)]
    pub roof_restarts: usize,
    #[arg(long = "roof-iters", default_value_t = 2000)]
    pub roof_iters: usize,
    #[arg(long = "roof-tol", default_value_t = 1e-6)]
    pub roof_tol: f64,
}

impl RoofArgs {
    pub fn config(&self, seed: u64) -> RoofConfig {
        RoofConfig {
            ensemble_size: self.roof_m,
            restarts: self.roof_restarts,
            max_iterations: self.roof_iters,
            tolerance: self.roof_tol,
            seed,
            warm_start: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GmeKind {
    Min,
    Geo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialStates {
    Mixed,
    Pure,
    Incoherent,
}

fn parse_measure(s: &str) -> std::result::Result<MeasureKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Coherence of a state in the computational basis.
    Coh {
        #[arg(long)]
        state: PathBuf,
        /// concurrence, gbc, entropy or l1
        #[arg(long, default_value = "concurrence", value_parser = parse_measure)]
        measure: MeasureKind,
        #[command(flatten)]
        roof: RoofArgs,
    },
    /// Min- or geometric-mean GME measure of a multipartite state.
    Gme {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "concurrence", value_parser = parse_measure)]
        measure: MeasureKind,
        #[arg(long, value_enum, default_value_t = GmeKind::Min)]
        kind: GmeKind,
        #[command(flatten)]
        roof: RoofArgs,
    },
    /// Convert a single-system state into an N-party state.
    Uio {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 3)]
        parties: usize,
    },
    /// Compare coherence with both GME measures of the converted state.
    CheckTheorem3 {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        parties: usize,
        #[arg(long, default_value = "concurrence", value_parser = parse_measure)]
        measure: MeasureKind,
        #[arg(long, default_value_t = 2e-3)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = TrialStates::Mixed)]
        states: TrialStates,
        /// Rank of the random mixed states.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[command(flatten)]
        roof: RoofArgs,
    },
    /// Hardy-type test on three-qubit X-states.
    Hardy {
        #[command(subcommand)]
        command: HardyCommand,
    },
    /// Regenerate the named example states.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HardyCommand {
    /// Maximize H over the measurement angles at one (p, r).
    Max {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Six independent angles instead of shared angles for parties 2 and 3.
        #[arg(long)]
        free_angles: bool,
    },
    /// Maximize H on a (p, r) grid and emit CSV.
    Sweep {
        #[arg(long, default_value_t = 21)]
        p_steps: usize,
        #[arg(long, default_value_t = 21)]
        r_steps: usize,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Coh { .. } => "coh",
            Command::Gme { .. } => "gme",
            Command::Uio { .. } => "uio",
            Command::CheckTheorem3 { .. } => "check-theorem3",
            Command::Hardy { command: HardyCommand::Max { .. } } => "hardy max",
            Command::Hardy { command: HardyCommand::Sweep { .. } } => "hardy sweep",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

#[derive(Debug, Serialize)]
struct DecompositionRecord {
    weights: Vec<f64>,
    states: Vec<PureJson>,
}

#[derive(Debug, Serialize)]
struct RoofRecord {
    ensemble_size: usize,
    best_restart: usize,
    restarts: Vec<RestartStat>,
    decomposition: DecompositionRecord,
}

impl From<&RoofResult> for RoofRecord {
    fn from(res: &RoofResult) -> Self {
        Self {
            ensemble_size: res.ensemble_size,
            best_restart: res.best_restart,
            restarts: res.restarts.clone(),
            decomposition: DecompositionRecord {
                weights: res.decomposition.weights.clone(),
                states: res.decomposition.states.iter().map(PureJson::from).collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct MeasureReport {
    command: &'static str,
    measure: MeasureKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<GmeKind>,
    dims: Vec<usize>,
    value: f64,
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roof: Option<RoofRecord>,
    manifest: RunManifest,
}

impl MeasureReport {
    fn text(&self) -> String {
        let mut s = format!("{} ({})", format_sig(self.value, 12), method_name(self.method));
        if self.converged == Some(false) {
            s.push_str(" [not converged]");
        }
        s
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed_form",
        Method::Roof => "roof",
    }
}

fn function_of(kind: MeasureKind) -> Result<ConcaveFunction> {
    kind.function()
        .ok_or_else(|| Error::InvalidConfig("l1 is not a GME measure".into()))
}

struct Computed {
    value: f64,
    method: Method,
    roof: Option<RoofResult>,
}

impl Computed {
    fn exact(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            roof: None,
        }
    }

    fn from_roof(res: RoofResult) -> Self {
        Self {
            value: res.value,
            method: Method::Roof,
            roof: Some(res),
        }
    }
}

/// Coherence with respect to the product basis of the whole state.
pub fn compute_coherence(state: &StateFile, kind: MeasureKind, cfg: &RoofConfig) -> Result<Estimate> {
    let c = coherence_computed(state, kind, cfg)?;
    Ok(estimate(&c))
}

fn estimate(c: &Computed) -> Estimate {
    Estimate {
        value: c.value,
        method: c.method,
        converged: c.roof.as_ref().map(|r| r.converged),
    }
}

fn coherence_computed(state: &StateFile, kind: MeasureKind, cfg: &RoofConfig) -> Result<Computed> {
    let rho = state.to_density();
    let l1 = l1_coherence(&rho);
    let Some(f) = kind.function() else {
        return Ok(Computed::exact(l1));
    };
    if l1 <= VALIDATION_TOL {
        return Ok(Computed::exact(0.0));
    }
    if let Some(psi) = state.as_pure() {
        return Ok(Computed::exact(coherence_pure(f, &psi)));
    }
    Ok(Computed::from_roof(convex_roof(&RoofMeasure::Coherence(f), &rho, cfg)?))
}

/// GME measure of a multipartite state. Pure states use the pure-state
/// formulas; qubit states on the `|00..0>, |11..1>` block use the X-state
/// formula for the min measure with the concurrence; the rest use the roof.
pub fn compute_gme(state: &StateFile, kind: MeasureKind, gme: GmeKind, cfg: &RoofConfig) -> Result<Estimate> {
    Ok(estimate(&gme_computed(state, kind, gme, cfg)?))
}

fn gme_computed(state: &StateFile, kind: MeasureKind, gme: GmeKind, cfg: &RoofConfig) -> Result<Computed> {
    let f = function_of(kind)?;
    if state.dims().len() < 2 {
        return Err(Error::TooFewParties(state.dims().len()));
    }
    if let Some(psi) = state.as_pure() {
        let v = match gme {
            GmeKind::Min => e_min_gme_pure(f, &psi)?,
            GmeKind::Geo => g_geo_gme_pure(f, &psi)?,
        };
        return Ok(Computed::exact(v));
    }
    let rho = state.to_density();
    let qubits = rho.dims().iter().all(|&d| d == 2);
    if gme == GmeKind::Min && qubits && kind == MeasureKind::Concurrence {
        if let Ok(v) = xstate_gme_concurrence(&rho) {
            return Ok(Computed::exact(v));
        }
    }
    let measure = match gme {
        GmeKind::Min => RoofMeasure::MinGme(f),
        GmeKind::Geo => RoofMeasure::GeoGme(f),
    };
    Ok(Computed::from_roof(convex_roof(&measure, &rho, cfg)?))
}

#[derive(Debug, Serialize)]
struct UioReport {
    command: &'static str,
    parties: usize,
    input_dims: Vec<usize>,
    output_dims: Vec<usize>,
    off_support_max: f64,
    l1_in: f64,
    l1_out: f64,
    manifest: RunManifest,
}

#[derive(Debug, Serialize)]
struct TrialRecord {
    trial: usize,
    rank: usize,
    #[serde(flatten)]
    report: Theorem3Report,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct Theorem3Summary {
    command: &'static str,
    measure: MeasureKind,
    states: TrialStates,
    dim: usize,
    parties: usize,
    tol: f64,
    trials: Vec<TrialRecord>,
    passed: usize,
    all_pass: bool,
    manifest: RunManifest,
}

#[derive(Debug, Serialize)]
struct HardyMaxReport {
    command: &'static str,
    params: XStateParams,
    h_max: f64,
    method: &'static str,
    angles: MeasurementAngles,
    #[serde(skip_serializing_if = "Option::is_none")]
    free_angles: Option<PartyAngles>,
    #[serde(skip_serializing_if = "Option::is_none")]
    free_h_max: Option<f64>,
    best_restart: usize,
    converged: bool,
    flags: crate::hardy::CorrelationFlags,
    gme_concurrence_method: Method,
    manifest: RunManifest,
}

#[derive(Debug, Serialize)]
struct SweepSummary {
    command: &'static str,
    rows: usize,
    max_h: f64,
    positive_cells: usize,
    warnings: Vec<String>,
    manifest: RunManifest,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    run(&cli)
}

pub fn run(cli: &Cli) -> Result<()> {
    let started = Instant::now();
    let mut manifest = RunManifest::new(cli.command.name(), cli.seed);
    manifest.flags = serde_json::to_value(cli)?;
    let mut stdout = std::io::stdout().lock();

    match &cli.command {
        Command::Coh { state, measure, roof } => {
            manifest.add_input(state)?;
            let input = read_state(state)?;
            let c = coherence_computed(&input, *measure, &roof.config(cli.seed))?;
            let report = measure_report("coh", *measure, None, &input, c, &manifest);
            emit_report(cli, &mut stdout, &report, &report.text(), &manifest, started)?;
        }
        Command::Gme { state, measure, kind, roof } => {
            manifest.add_input(state)?;
            let input = read_state(state)?;
            let c = gme_computed(&input, *measure, *kind, &roof.config(cli.seed))?;
            let report = measure_report("gme", *measure, Some(*kind), &input, c, &manifest);
            emit_report(cli, &mut stdout, &report, &report.text(), &manifest, started)?;
        }
        Command::Uio { state, parties } => {
            manifest.add_input(state)?;
            let input = read_state(state)?;
            let output = match &input {
                StateFile::Pure(psi) => StateFile::Pure(convert_pure(psi, *parties)?),
                StateFile::Mixed(rho) => StateFile::Mixed(convert(rho, *parties)?),
            };
            let rho_out = output.to_density();
            let text = state_to_json(&output) + "\n";
            match &cli.out {
                Some(path) => write_with_manifest(path, &text, &manifest, started)?,
                None if !cli.json => stdout.write_all(text.as_bytes())?,
                None => {}
            }
            if cli.json {
                let report = UioReport {
                    command: "uio",
                    parties: *parties,
                    input_dims: input.dims().to_vec(),
                    output_dims: output.dims().to_vec(),
                    off_support_max: off_support_max(&rho_out),
                    l1_in: l1_coherence(&input.to_density()),
                    l1_out: l1_coherence(&rho_out),
                    manifest: manifest.without_duration(),
                };
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            }
        }
        Command::CheckTheorem3 {
            trials,
            dim,
            parties,
            measure,
            tol,
            states,
            rank,
            roof,
        } => {
            let f = function_of(*measure)?;
            let mut records = Vec::with_capacity(*trials);
            for t in 0..*trials {
                let rho = trial_state(*states, *dim, *rank, cli.seed, t)?;
                let report = check_theorem3(&rho, f, *parties, &roof.config(cli.seed.wrapping_add(t as u64)))?;
                let pass = report.max_discrepancy <= *tol;
                if !pass {
                    eprintln!(
                        "trial {t}: discrepancy {:.3e} exceeds tolerance {tol:.3e}",
                        report.max_discrepancy
                    );
                }
                records.push(TrialRecord {
                    trial: t,
                    rank: rho.rank(),
                    report,
                    pass,
                });
            }
            let passed = records.iter().filter(|r| r.pass).count();
            let summary = Theorem3Summary {
                command: "check-theorem3",
                measure: *measure,
                states: *states,
                dim: *dim,
                parties: *parties,
                tol: *tol,
                all_pass: passed == records.len(),
                passed,
                trials: records,
                manifest: manifest.without_duration(),
            };
            let mut text = String::new();
            for r in &summary.trials {
                text.push_str(&format!(
                    "trial {:>3}  C={:.6} ({})  E={:.6} ({})  G={:.6} ({})  {}\n",
                    r.trial,
                    r.report.coherence.value,
                    method_name(r.report.coherence.method),
                    r.report.e_min_gme.value,
                    method_name(r.report.e_min_gme.method),
                    r.report.g_geo_gme.value,
                    method_name(r.report.g_geo_gme.method),
                    if r.pass { "pass" } else { "FAIL" }
                ));
            }
            text.push_str(&format!("{}/{} trials within {:e}", passed, summary.trials.len(), tol));
            emit_report(cli, &mut stdout, &summary, &text, &manifest, started)?;
        }
        Command::Hardy { command: HardyCommand::Max { p, r, restarts, free_angles } } => {
            let params = XStateParams::new(*p, *r)?;
            let res = maximize_hardy(params, *restarts, cli.seed)?;
            let free = if *free_angles {
                Some(maximize_hardy_free(params, *restarts, cli.seed)?)
            } else {
                None
            };
            let flags = gmnl_gms_flags(params, *restarts, cli.seed)?;
            let report = HardyMaxReport {
                command: "hardy max",
                params,
                h_max: res.h_max,
                method: "multistart_maximum",
                angles: res.angles,
                free_h_max: free.as_ref().map(|f| f.h_max),
                free_angles: free.as_ref().map(|f| f.angles),
                best_restart: res.best_restart,
                converged: res.converged,
                flags,
                gme_concurrence_method: Method::ClosedForm,
                manifest: manifest.without_duration(),
            };
            let mut text = format_sig(res.h_max, 12);
            if let Some(v) = report.free_h_max {
                text.push_str(&format!("\nfree angles: {}", format_sig(v, 12)));
            }
            emit_report(cli, &mut stdout, &report, &text, &manifest, started)?;
        }
        Command::Hardy { command: HardyCommand::Sweep { p_steps, r_steps, restarts } } => {
            let rows = sweep_hardy(*p_steps, *r_steps, *restarts, cli.seed)?;
            let warnings = monotonicity_warnings(&rows);
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let mut csv = Vec::new();
            write_sweep_csv(&rows, &mut csv)?;
            match &cli.out {
                Some(path) => write_bytes_with_manifest(path, &csv, &manifest, started)?,
                None if !cli.json => stdout.write_all(&csv)?,
                None => {}
            }
            if cli.json {
                let summary = SweepSummary {
                    command: "hardy sweep",
                    rows: rows.len(),
                    max_h: rows.iter().map(|r| r.h_max).fold(f64::NEG_INFINITY, f64::max),
                    positive_cells: rows.iter().filter(|r| r.h_max > crate::hardy::VIOLATION_THRESHOLD).count(),
                    warnings,
                    manifest: manifest.without_duration(),
                };
                writeln!(stdout, "{}", serde_json::to_string_pretty(&summary)?)?;
            }
        }
        Command::Fixtures { dir } => {
            for name in write_fixtures(dir)? {
                eprintln!("wrote {}", dir.join(name).display());
            }
        }
    }
    Ok(())
}

fn measure_report(
    command: &'static str,
    measure: MeasureKind,
    kind: Option<GmeKind>,
    input: &StateFile,
    c: Computed,
    manifest: &RunManifest,
) -> MeasureReport {
    MeasureReport {
        command,
        measure,
        kind,
        dims: input.dims().to_vec(),
        value: c.value,
        method: c.method,
        converged: c.roof.as_ref().map(|r| r.converged),
        roof: c.roof.as_ref().map(RoofRecord::from),
        manifest: manifest.without_duration(),
    }
}

/// Random test state for trial `t`, drawn from its own substream of `seed`.
pub fn trial_state(kind: TrialStates, dim: usize, rank: usize, seed: u64, t: usize) -> Result<DensityMatrix> {
    let mut rng = substream(seed, t as u64);
    match kind {
        TrialStates::Mixed => random_density_matrix_with(&mut rng, &[dim], rank),
        TrialStates::Pure => Ok(random_pure_state_with(&mut rng, &[dim])?.to_density()),
        TrialStates::Incoherent => {
            let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            DensityMatrix::diagonal(vec![dim], &p)
        }
    }
}

fn emit_report<T: Serialize>(
    cli: &Cli,
    stdout: &mut impl Write,
    report: &T,
    text: &str,
    manifest: &RunManifest,
    started: Instant,
) -> Result<()> {
    let json = serde_json::to_string_pretty(report)? + "\n";
    if let Some(path) = &cli.out {
        write_with_manifest(path, &json, manifest, started)?;
    }
    if cli.json {
        stdout.write_all(json.as_bytes())?;
    } else if cli.out.is_none() {
        writeln!(stdout, "{text}")?;
    }
    Ok(())
}

fn write_with_manifest(path: &Path, text: &str, manifest: &RunManifest, started: Instant) -> Result<()> {
    write_bytes_with_manifest(path, text.as_bytes(), manifest, started)
}

fn write_bytes_with_manifest(path: &Path, bytes: &[u8], manifest: &RunManifest, started: Instant) -> Result<()> {
    fs::write(path, bytes)?;
    let mut m = manifest.clone();
    m.duration_seconds = Some(started.elapsed().as_secs_f64());
    m.write_beside(path)?;
    Ok(())
}
