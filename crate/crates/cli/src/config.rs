//! Run configuration: flags over an optional TOML file over defaults.

use crate::CliError;
use polyspiral::geometry::Family;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

/// Largest accepted `n_max`.
pub const N_MAX_LIMIT: usize = 1_000_000;

/// Echoed in JSON output so that results can be matched to the geometry.
pub const SEED_PLACEMENT: &str =
    "triangle (0,-1/2) (0,1/2) (-sqrt(3)/2,0); shared edge of the first step has its midpoint at the origin";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    All,
    Odd,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => Family::AllPolygons,
            FamilyArg::Odd => Family::OddPolygons,
        }
    }
}

/// Options that may come from the command line or a config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub family: Option<FamilyArg>,
    pub n_max: Option<usize>,
    pub window: Option<String>,
    pub format: Option<Format>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// `self` takes precedence; tolerance maps are merged key by key.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        let mut tolerances = base.tolerances;
        tolerances.extend(self.tolerances);
        PartialConfig {
            family: self.family.or(base.family),
            n_max: self.n_max.or(base.n_max),
            window: self.window.or(base.window),
            format: self.format.or(base.format),
            tolerances,
        }
    }
}

/// Per-command defaults.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub n_max: usize,
    /// Window used when none is given and `n_max` is large enough.
    pub window: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: Family,
    pub n_max: usize,
    pub window: (usize, usize),
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub seed_placement: &'static str,
}

impl RunConfig {
    pub fn resolve(partial: PartialConfig, defaults: Defaults) -> Result<Self, CliError> {
        let family: Family = partial.family.unwrap_or(FamilyArg::All).into();
        let n_max = partial.n_max.unwrap_or(defaults.n_max);
        let window = match partial.window {
            Some(w) => parse_window(&w).map_err(CliError::Usage)?,
            None => match defaults.window {
                Some(w) if w.1 <= n_max => w,
                _ => (n_max.div_ceil(2).max(family.first_index()), n_max),
            },
        };
        let cfg = RunConfig {
            family,
            n_max,
            window,
            tolerances: partial.tolerances,
            format: partial.format.unwrap_or(Format::Csv),
            seed_placement: SEED_PLACEMENT,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let first = self.family.first_index();
        if self.n_max < first {
            return Err(CliError::Usage(format!(
                "--n-max must be at least {first} for this family, got {}",
                self.n_max
            )));
        }
        if self.n_max > N_MAX_LIMIT {
            return Err(CliError::Usage(format!(
                "--n-max {} exceeds the limit {N_MAX_LIMIT}",
                self.n_max
            )));
        }
        let (a, b) = self.window;
        if a > b || a < first || b > self.n_max {
            return Err(CliError::Usage(format!(
                "window {a}:{b} must satisfy {first} <= start <= end <= n_max = {}",
                self.n_max
            )));
        }
        if let Some((name, v)) = self.tolerances.iter().find(|(_, v)| !v.is_finite()) {
            return Err(CliError::Usage(format!("tolerance {name} = {v} is not finite")));
        }
        Ok(())
    }
}

pub fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("window '{s}' is not of the form START:END"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("window bound '{t}': {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("tolerance '{s}' is not of the form NAME=VALUE"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("tolerance '{s}' has an empty name"));
    }
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("tolerance value '{value}': {e}"))?;
    Ok((name.to_string(), value))
}
