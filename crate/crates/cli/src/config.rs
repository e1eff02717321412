//! Flat `key = value` configuration parsing and validation.

use std::collections::BTreeMap;

use fewbody_interference::units::{codata, UnitMode, UnitSystem};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Physics(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Physics(msg) => write!(f, "physics error: {msg}"),
            CliError::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl From<fewbody_interference::Error> for CliError {
    fn from(err: fewbody_interference::Error) -> Self {
        CliError::Physics(err.to_string())
    }
}

/// Key-value map with take-based consumption: whatever is left over after a
/// command has claimed its keys is an unknown-key error.
#[derive(Debug, Clone)]
pub struct RawConfig {
    map: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = match line.find('#') {
                Some(idx) => &line[..idx],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(CliError::Config(format!(
                    "line {}: empty key or value",
                    lineno + 1
                )));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(CliError::Config(format!("duplicate key `{key}`")));
            }
        }
        Ok(Self { map })
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    pub fn require(&mut self, key: &str) -> Result<String, CliError> {
        self.take(key)
            .ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
    }

    pub fn take_f64(&mut self, key: &str, units: &UnitSystem) -> Result<Option<f64>, CliError> {
        match self.take(key) {
            Some(raw) => parse_value(&raw, units)
                .map(Some)
                .map_err(|msg| CliError::Config(format!("key `{key}`: {msg}"))),
            None => Ok(None),
        }
    }

    pub fn require_f64(&mut self, key: &str, units: &UnitSystem) -> Result<f64, CliError> {
        let raw = self.require(key)?;
        parse_value(&raw, units).map_err(|msg| CliError::Config(format!("key `{key}`: {msg}")))
    }

    pub fn take_usize(&mut self, key: &str) -> Result<Option<usize>, CliError> {
        match self.take(key) {
            Some(raw) => raw
                .parse::<usize>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("key `{key}`: expected an integer"))),
            None => Ok(None),
        }
    }

    /// Every key must have been consumed by now.
    pub fn finish(&self) -> Result<(), CliError> {
        if let Some(key) = self.map.keys().next() {
            return Err(CliError::Config(format!("unknown key `{key}`")));
        }
        Ok(())
    }
}

/// Numeric literal or a named constant of the active unit system.
pub fn parse_value(raw: &str, units: &UnitSystem) -> Result<f64, String> {
    if let Ok(v) = raw.parse::<f64>() {
        if !v.is_finite() {
            return Err("value must be finite".into());
        }
        return Ok(v);
    }
    Ok(match raw {
        "pi" => std::f64::consts::PI,
        "tau" => std::f64::consts::TAU,
        "hbar" => units.hbar,
        "h" => units.h,
        "c" => units.c,
        "kb" => units.k_b,
        "amu" => codata::ATOMIC_MASS_UNIT,
        "m_e" => codata::ELECTRON_MASS,
        "m_n" => codata::NEUTRON_MASS,
        other => return Err(format!("`{other}` is not a number or a known constant")),
    })
}

pub fn parse_units(name: Option<&str>) -> Result<UnitSystem, CliError> {
    match name {
        None | Some("natural") => Ok(UnitSystem::natural()),
        Some("si") => Ok(UnitSystem::si()),
        Some(other) => Err(CliError::Config(format!(
            "units must be `natural` or `si`, got `{other}`"
        ))),
    }
}

/// One swept parameter: name plus the evaluated grid.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<f64>,
}

/// Extract the optional sweep block (`sweep`, `sweep_start`, `sweep_stop`,
/// `sweep_count`, `sweep_scale`).
pub fn take_sweep(raw: &mut RawConfig, units: &UnitSystem) -> Result<Option<Sweep>, CliError> {
    let Some(key) = raw.take("sweep") else {
        for leftover in ["sweep_start", "sweep_stop", "sweep_count", "sweep_scale"] {
            if raw.take(leftover).is_some() {
                return Err(CliError::Config(format!(
                    "`{leftover}` given without `sweep`"
                )));
            }
        }
        return Ok(None);
    };
    let start = raw.require_f64("sweep_start", units)?;
    let stop = raw.require_f64("sweep_stop", units)?;
    let count = raw
        .take_usize("sweep_count")?
        .ok_or_else(|| CliError::Config("missing required key `sweep_count`".into()))?;
    if count < 2 {
        return Err(CliError::Config("sweep_count must be at least 2".into()));
    }
    let scale = raw.take("sweep_scale").unwrap_or_else(|| "linear".into());
    let values = match scale.as_str() {
        "linear" => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
        "log" => {
            if !(start > 0.0 && stop > 0.0) {
                return Err(CliError::Config(
                    "log sweeps need positive start and stop".into(),
                ));
            }
            let ratio = (stop / start).ln() / (count - 1) as f64;
            (0..count)
                .map(|i| start * (ratio * i as f64).exp())
                .collect()
        }
        other => {
            return Err(CliError::Config(format!(
                "sweep_scale must be `linear` or `log`, got `{other}`"
            )))
        }
    };
    Ok(Some(Sweep { key, values }))
}
