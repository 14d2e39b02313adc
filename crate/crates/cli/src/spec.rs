use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub const EXPERIMENT_NAMES: [&str; 8] = [
    "mcs-distinguish",
    "wigner-panel",
    "write-read",
    "loschmidt",
    "tophat-table",
    "entanglement",
    "dissipation-table",
    "gea-overlap",
];

#[derive(Debug)]
pub enum SpecError {
    Invalid(String),
    Numerical(String),
    Io(std::io::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Invalid(m) => write!(f, "invalid spec: {m}"),
            SpecError::Numerical(m) => write!(f, "numerical precondition: {m}"),
            SpecError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl From<std::io::Error> for SpecError {
    fn from(e: std::io::Error) -> Self {
        SpecError::Io(e)
    }
}

impl From<jcsim_core::Error> for SpecError {
    fn from(e: jcsim_core::Error) -> Self {
        SpecError::Numerical(e.to_string())
    }
}

pub type SpecResult<V> = Result<V, SpecError>;

/// Fully resolved experiment configuration. Every run is determined by the
/// resolved key-value map alone; defaults are materialized into it so the
/// meta sidecar records the complete provenance.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip)]
    pub out_dir: PathBuf,
}

/// Per-experiment known keys with their defaults; unknown keys are rejected.
fn known_keys(name: &str) -> &'static [(&'static str, &'static str)] {
    match name {
        "mcs-distinguish" => &[
            ("alpha", "7"),
            ("gamma_points", "81"),
            ("p_points", "161"),
            ("lambda", "1"),
        ],
        "wigner-panel" => &[
            ("alpha", "7"),
            ("grid_points", "41"),
            ("quad_points", "3201"),
        ],
        "write-read" => &[
            ("alphas", "3,5,7,10"),
            ("grid_points", "400"),
            ("lambda", "1"),
            ("field", "coherent"),
            ("n_max", ""),
        ],
        "loschmidt" => &[
            ("alphas", "3,5,7,10"),
            ("grid_points", "400"),
            ("t_max_over_tau", "8"),
            ("lambda", "1"),
            ("n_max", ""),
        ],
        "tophat-table" => &[
            ("n_bar", "49"),
            ("deltas", "5,10,20"),
            ("lambda", "1"),
        ],
        "entanglement" => &[
            ("alphas", "3,5,7,10"),
            ("grid_points", "400"),
            ("t_max_over_tau", "2"),
            ("lambda", "1"),
            ("n_max", ""),
        ],
        "dissipation-table" => &[("n_bar", "25")],
        "gea-overlap" => &[("alphas", "3,5,7,10,12")],
        _ => &[],
    }
}

impl ExperimentSpec {
    /// Resolve defaults, then the config file, then command-line overrides.
    pub fn build(
        name: &str,
        cli_params: &[String],
        config: Option<&Path>,
        out_dir: PathBuf,
    ) -> SpecResult<Self> {
        if !EXPERIMENT_NAMES.contains(&name) {
            return Err(SpecError::Invalid(format!("unknown experiment '{name}'")));
        }
        let keys = known_keys(name);
        let mut params: BTreeMap<String, String> = keys
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let mut apply = |key: &str, value: &str| -> SpecResult<()> {
            if !keys.iter().any(|(k, _)| *k == key) {
                return Err(SpecError::Invalid(format!(
                    "unknown key '{key}' for experiment '{name}'"
                )));
            }
            params.insert(key.to_string(), value.to_string());
            Ok(())
        };
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    SpecError::Invalid(format!("config line {}: expected key=value", lineno + 1))
                })?;
                apply(key.trim(), value.trim())?;
            }
        }
        for raw in cli_params {
            let (key, value) = raw.split_once('=').ok_or_else(|| {
                SpecError::Invalid(format!("--param '{raw}': expected key=value"))
            })?;
            apply(key.trim(), value.trim())?;
        }
        Ok(Self { name: name.to_string(), params, out_dir })
    }

    pub fn f64(&self, key: &str) -> SpecResult<f64> {
        let raw = &self.params[key];
        raw.parse()
            .map_err(|_| SpecError::Invalid(format!("key '{key}': '{raw}' is not a number")))
    }

    pub fn usize(&self, key: &str) -> SpecResult<usize> {
        let raw = &self.params[key];
        raw.parse()
            .map_err(|_| SpecError::Invalid(format!("key '{key}': '{raw}' is not an integer")))
    }

    pub fn f64_list(&self, key: &str) -> SpecResult<Vec<f64>> {
        let raw = &self.params[key];
        raw.split(',')
            .map(|s| {
                s.trim().parse().map_err(|_| {
                    SpecError::Invalid(format!("key '{key}': '{s}' is not a number"))
                })
            })
            .collect()
    }

    pub fn usize_list(&self, key: &str) -> SpecResult<Vec<usize>> {
        let raw = &self.params[key];
        raw.split(',')
            .map(|s| {
                s.trim().parse().map_err(|_| {
                    SpecError::Invalid(format!("key '{key}': '{s}' is not an integer"))
                })
            })
            .collect()
    }

    /// Optional `n_max` override; empty string means auto-size.
    pub fn n_max_override(&self) -> SpecResult<Option<usize>> {
        match self.params.get("n_max").map(String::as_str) {
            None | Some("") => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                SpecError::Invalid(format!("key 'n_max': '{raw}' is not an integer"))
            }),
        }
    }
}
