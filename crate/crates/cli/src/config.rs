//! Option records shared by the subcommands, and the config-file overlay.
//!
//! Every subcommand's options live in one struct of `Option` fields that is
//! both a clap argument group and a serde record. A config file is parsed
//! into the same struct (with kebab-case keys matching the flag names) and
//! then filled in wherever a flag was not given.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use mirrorfield::rates::Preset;
use mirrorfield::{MirrorSpec, Side};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Fill every `None` field of `$flags` from `$file`.
macro_rules! overlay {
    ($flags:expr, $file:expr, [$($field:ident),* $(,)?]) => {{
        let mut merged = $flags;
        let file = $file;
        $(
            if merged.$field.is_none() {
                merged.$field = file.$field;
            }
        )*
        merged
    }};
}
pub(crate) use overlay;

pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> CliResult<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::io_at("read config", path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetArg {
    Perfect,
    Symmetric,
    Lossless,
    Absorbing,
    /// Four independent rates, `--r-a --t-a --r-b --t-b`.
    General,
}

/// Mirror parameters as they arrive from flags or a config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct MirrorArgs {
    pub preset: Option<PresetArg>,
    pub r: Option<f64>,
    pub t: Option<f64>,
    pub r_a: Option<f64>,
    pub t_a: Option<f64>,
    pub r_b: Option<f64>,
    pub t_b: Option<f64>,
}

/// The resolved mirror, with the closed-form preset when there is one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedMirror {
    pub preset: Option<Preset>,
    pub spec: MirrorSpec,
}

fn need(value: Option<f64>, flag: &str, preset: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Validation(format!("--preset {preset} requires --{flag}")))
}

impl MirrorArgs {
    pub fn resolve(&self) -> CliResult<ResolvedMirror> {
        let preset = match self.preset.unwrap_or(PresetArg::Perfect) {
            PresetArg::Perfect => Preset::Perfect,
            PresetArg::Absorbing => Preset::Absorbing,
            PresetArg::Symmetric => Preset::Symmetric {
                r: need(self.r, "r", "symmetric")?,
                t: need(self.t, "t", "symmetric")?,
            },
            PresetArg::Lossless => Preset::Lossless {
                r: need(self.r, "r", "lossless")?,
            },
            PresetArg::General => {
                let spec = MirrorSpec {
                    r_a: need(self.r_a, "r-a", "general")?,
                    t_a: need(self.t_a, "t-a", "general")?,
                    r_b: need(self.r_b, "r-b", "general")?,
                    t_b: need(self.t_b, "t-b", "general")?,
                    ..MirrorSpec::perfect()
                }
                .validate()?;
                return Ok(ResolvedMirror { preset: None, spec });
            }
        };
        let spec = preset.mirror().validate()?;
        Ok(ResolvedMirror {
            preset: Some(preset),
            spec,
        })
    }
}

/// `n` evenly spaced points from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let span = hi - lo;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + span * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

pub fn check_grid(lo: f64, hi: f64, points: usize, what: &str) -> CliResult<()> {
    if points < 2 {
        return Err(CliError::Validation(format!(
            "{what}: need at least 2 points"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(CliError::Validation(format!(
            "{what}: range [{lo}, {hi}] is empty"
        )));
    }
    Ok(())
}
