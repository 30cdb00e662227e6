//! Run configuration: merges the flat config file with command-line flags
//! (flags win) and validates the result into a [`RunConfig`].

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use spinchain_core::calibrate::{CaseName, CALIBRATION_EPSILON_PEV};

use crate::{Failure, RunArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Circuit,
}

/// How the initial state is specified; exactly one style per run.
#[derive(Clone, Debug)]
pub enum StateSpec {
    /// A calibrated preset.
    Case(CaseName),
    /// Direct chain state: local temperatures plus adjacent correlations.
    Explicit { temps: Vec<f64>, alphas: Vec<f64> },
    /// Pulse preparation: base temperatures and the two pulse durations.
    Prepared {
        base_temps: [f64; 3],
        taus: [f64; 2],
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub state: StateSpec,
    pub backend: Backend,
    pub coupling: f64,
    pub epsilon: f64,
    pub tau_start: f64,
    pub tau_stop: f64,
    pub tau_points: usize,
    pub out: Option<PathBuf>,
}

/// Option set shared by the config file and the flags, pre-validation.
#[derive(Clone, Debug, Default)]
struct RawOptions {
    case: Option<String>,
    backend: Option<String>,
    coupling: Option<f64>,
    epsilon: Option<f64>,
    tau_start: Option<f64>,
    tau_stop: Option<f64>,
    tau_points: Option<usize>,
    out: Option<PathBuf>,
    temps: Option<Vec<f64>>,
    alphas: Option<Vec<f64>>,
    base_temps: Option<Vec<f64>>,
    taus: Option<Vec<f64>>,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| Failure::usage(format!("config key '{key}': cannot parse '{value}'")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, Failure> {
    value.split(',').map(|v| parse_num(key, v.trim())).collect()
}

/// Flat `key = value` file; blank lines and `#` comments are allowed.
fn parse_file(path: &PathBuf) -> Result<RawOptions, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut raw = RawOptions::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Failure::usage(format!(
                "config line {}: expected 'key = value', got '{line}'",
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "case" => raw.case = Some(value.to_string()),
            "backend" => raw.backend = Some(value.to_string()),
            "coupling" => raw.coupling = Some(parse_num(key, value)?),
            "epsilon" => raw.epsilon = Some(parse_num(key, value)?),
            "tau_start" => raw.tau_start = Some(parse_num(key, value)?),
            "tau_stop" => raw.tau_stop = Some(parse_num(key, value)?),
            "tau_points" => raw.tau_points = Some(parse_num(key, value)?),
            "out" => raw.out = Some(PathBuf::from(value)),
            "temps" => raw.temps = Some(parse_list(key, value)?),
            "alphas" => raw.alphas = Some(parse_list(key, value)?),
            "base_temps" => raw.base_temps = Some(parse_list(key, value)?),
            "taus" => raw.taus = Some(parse_list(key, value)?),
            other => {
                return Err(Failure::usage(format!("unknown config key '{other}'")));
            }
        }
    }
    Ok(raw)
}

fn merge(file: RawOptions, args: &RunArgs) -> RawOptions {
    RawOptions {
        case: args.case.clone().or(file.case),
        backend: args.backend.clone().or(file.backend),
        coupling: args.coupling.or(file.coupling),
        epsilon: args.epsilon.or(file.epsilon),
        tau_start: args.tau_start.or(file.tau_start),
        tau_stop: args.tau_stop.or(file.tau_stop),
        tau_points: args.tau_points.or(file.tau_points),
        out: args.out.clone().or(file.out),
        temps: args.temps.clone().or(file.temps),
        alphas: args.alphas.clone().or(file.alphas),
        base_temps: args.base_temps.clone().or(file.base_temps),
        taus: args.taus.clone().or(file.taus),
    }
}

fn all_finite(key: &str, values: &[f64]) -> Result<(), Failure> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Failure::usage(format!("{key} entries must be finite")));
    }
    Ok(())
}

pub fn resolve(args: &RunArgs) -> Result<RunConfig, Failure> {
    let file = match &args.config {
        Some(path) => parse_file(path)?,
        None => RawOptions::default(),
    };
    let raw = merge(file, args);

    let case_style = raw.case.is_some();
    let explicit_style = raw.temps.is_some() || raw.alphas.is_some();
    let prepared_style = raw.base_temps.is_some() || raw.taus.is_some();
    let styles = case_style as usize + explicit_style as usize + prepared_style as usize;
    if styles != 1 {
        return Err(Failure::usage(
            "specify exactly one of: --case NAME | --temps [--alphas] | --base-temps [--taus]",
        ));
    }

    let state = if let Some(name) = &raw.case {
        let case = CaseName::from_str(name).map_err(|e| Failure::usage(e.to_string()))?;
        StateSpec::Case(case)
    } else if explicit_style {
        let temps = raw
            .temps
            .clone()
            .ok_or_else(|| Failure::usage("--alphas requires --temps"))?;
        if temps.len() < 2 {
            return Err(Failure::usage("--temps needs at least two qubits"));
        }
        all_finite("--temps", &temps)?;
        let alphas = raw
            .alphas
            .clone()
            .unwrap_or_else(|| vec![0.0; temps.len() - 1]);
        if alphas.len() != temps.len() - 1 {
            return Err(Failure::usage(format!(
                "--alphas needs one entry per adjacent pair ({} for {} qubits), got {}",
                temps.len() - 1,
                temps.len(),
                alphas.len()
            )));
        }
        all_finite("--alphas", &alphas)?;
        StateSpec::Explicit { temps, alphas }
    } else {
        let base = raw
            .base_temps
            .clone()
            .ok_or_else(|| Failure::usage("--taus requires --base-temps"))?;
        if base.len() != 3 {
            return Err(Failure::usage("--base-temps takes exactly three values"));
        }
        all_finite("--base-temps", &base)?;
        let taus = raw.taus.clone().unwrap_or_else(|| vec![0.0; 2]);
        if taus.len() != 2 {
            return Err(Failure::usage("--taus takes exactly tau_01,tau_12"));
        }
        all_finite("--taus", &taus)?;
        StateSpec::Prepared {
            base_temps: [base[0], base[1], base[2]],
            taus: [taus[0], taus[1]],
        }
    };

    let backend = match raw.backend.as_deref() {
        None | Some("exact") => Backend::Exact,
        Some("circuit") => Backend::Circuit,
        Some(other) => {
            return Err(Failure::usage(format!(
                "unknown backend '{other}' (expected exact or circuit)"
            )));
        }
    };
    if backend == Backend::Circuit && !matches!(state, StateSpec::Case(_)) {
        return Err(Failure::usage(
            "the circuit backend prepares states from calibrated presets; use --case",
        ));
    }

    let epsilon = raw.epsilon.unwrap_or(if case_style {
        CALIBRATION_EPSILON_PEV
    } else {
        1.0
    });
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Failure::usage("epsilon must be a positive finite number"));
    }
    let coupling = raw.coupling.unwrap_or(1.0);
    if !coupling.is_finite() {
        return Err(Failure::usage("coupling must be finite"));
    }

    let tau_start = raw.tau_start.unwrap_or(0.0);
    let tau_stop = raw.tau_stop.unwrap_or(PI);
    if !(tau_start.is_finite() && tau_stop.is_finite()) {
        return Err(Failure::usage("tau bounds must be finite"));
    }
    let tau_points = raw.tau_points.unwrap_or(101);
    if tau_points < 2 {
        return Err(Failure::usage("tau grid needs at least 2 points"));
    }

    Ok(RunConfig {
        state,
        backend,
        coupling,
        epsilon,
        tau_start,
        tau_stop,
        tau_points,
        out: raw.out,
    })
}

impl RunConfig {
    pub fn tau_grid(&self) -> Vec<f64> {
        let n = self.tau_points;
        let step = (self.tau_stop - self.tau_start) / (n - 1) as f64;
        (0..n).map(|k| self.tau_start + step * k as f64).collect()
    }
}
