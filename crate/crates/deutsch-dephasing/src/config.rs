//! Declarative run configuration: a TOML file with the same knobs as the
//! CLI flags; flags override file values.

use serde::Deserialize;

use crate::deutsch::FunctionId;
use crate::error::{Error, Result};
use crate::sweep::{GridSpec, SweepEngine};

/// File-level configuration; every field is optional so flags can fill in
/// or override.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub functions: Option<Vec<String>>,
    pub engines: Option<Vec<String>>,
    pub grid_start: Option<f64>,
    pub grid_stop: Option<f64>,
    pub grid_count: Option<usize>,
    /// Bath table for both qubits.
    pub bath: Option<String>,
    /// Per-qubit bath tables; override `bath` when set.
    pub bath_a: Option<String>,
    pub bath_b: Option<String>,
    pub magnetic_field_t: Option<f64>,
    pub polarization: Option<f64>,
    /// Convert the cyclic gyromagnetic ratio with a 2 pi factor (default true).
    pub angular_zeeman: Option<bool>,
    pub output: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::validation(format!("config file: {e}")))
    }
}

/// Fully resolved sweep configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub functions: Vec<FunctionId>,
    pub engines: Vec<SweepEngine>,
    pub grid: GridSpec,
    pub bath_a: Option<String>,
    pub bath_b: Option<String>,
    pub magnetic_field_t: f64,
    pub polarization: f64,
    pub angular_zeeman: bool,
    pub output: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
}

pub fn parse_function(name: &str) -> Result<FunctionId> {
    let trimmed = name.trim().to_ascii_lowercase();
    let digit = trimmed.strip_prefix('f').unwrap_or(&trimmed);
    let n: u8 = digit
        .parse()
        .map_err(|_| Error::validation(format!("functions: '{name}' is not one of f0..f3")))?;
    FunctionId::from_index(n)
}

pub fn parse_functions(names: &[String]) -> Result<Vec<FunctionId>> {
    if names.is_empty() {
        return Ok(FunctionId::ALL.to_vec());
    }
    names.iter().map(|n| parse_function(n)).collect()
}

pub fn parse_engine(name: &str) -> Result<SweepEngine> {
    match name.trim().to_ascii_lowercase().as_str() {
        "classical" => Ok(SweepEngine::Classical),
        "quantum-exponential" | "quantum" => Ok(SweepEngine::QuantumExponential),
        other => Err(Error::validation(format!(
            "engines: '{other}' is not 'classical' or 'quantum-exponential'"
        ))),
    }
}

pub fn parse_engines(names: &[String]) -> Result<Vec<SweepEngine>> {
    if names.is_empty() {
        return Ok(vec![
            SweepEngine::Classical,
            SweepEngine::QuantumExponential,
        ]);
    }
    names.iter().map(|n| parse_engine(n)).collect()
}

/// Merges file values and flag overrides into a resolved config. `flags`
/// wins wherever both are set.
pub fn resolve(
    file: &FileConfig,
    flags: &FileConfig,
    default_grid: (f64, f64, usize),
) -> Result<RunConfig> {
    let pick = |a: &Option<f64>, b: &Option<f64>| a.or(*b);
    let functions = parse_functions(
        flags
            .functions
            .as_ref()
            .or(file.functions.as_ref())
            .map(|v| v.as_slice())
            .unwrap_or(&[]),
    )?;
    let engines = parse_engines(
        flags
            .engines
            .as_ref()
            .or(file.engines.as_ref())
            .map(|v| v.as_slice())
            .unwrap_or(&[]),
    )?;
    let grid = GridSpec::new(
        pick(&flags.grid_start, &file.grid_start).unwrap_or(default_grid.0),
        pick(&flags.grid_stop, &file.grid_stop).unwrap_or(default_grid.1),
        flags
            .grid_count
            .or(file.grid_count)
            .unwrap_or(default_grid.2),
    )?;
    let shots = flags.shots.or(file.shots);
    let seed = flags.seed.or(file.seed);
    if let Some(s) = shots {
        if s == 0 {
            return Err(Error::validation("shots: must be > 0 when present"));
        }
        if seed.is_none() {
            return Err(Error::validation("seed: required when shots is set"));
        }
    }
    let shared = flags.bath.clone().or_else(|| file.bath.clone());
    let bath_a = flags
        .bath_a
        .clone()
        .or_else(|| file.bath_a.clone())
        .or_else(|| shared.clone());
    let bath_b = flags
        .bath_b
        .clone()
        .or_else(|| file.bath_b.clone())
        .or(shared);
    Ok(RunConfig {
        functions,
        engines,
        grid,
        bath_a,
        bath_b,
        magnetic_field_t: pick(&flags.magnetic_field_t, &file.magnetic_field_t).unwrap_or(0.1),
        polarization: pick(&flags.polarization, &file.polarization).unwrap_or(0.1),
        angular_zeeman: flags.angular_zeeman.or(file.angular_zeeman).unwrap_or(true),
        output: flags.output.clone().or_else(|| file.output.clone()),
        shots,
        seed,
    })
}
