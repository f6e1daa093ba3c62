use std::path::PathBuf;

use clap::Args;
use mirrorfield::rates::{preset_rates, rates, RateResult, SERIES_THRESHOLD};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, check_grid, linspace, overlay, MirrorArgs, PresetArg, SideArg};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Format, Meta, Table};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RatesScanOptions {
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
    /// Reflection rate for the symmetric and lossless presets.
    #[arg(long)]
    pub r: Option<f64>,
    /// Transmission rate for the symmetric preset.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub r_a: Option<f64>,
    #[arg(long)]
    pub t_a: Option<f64>,
    #[arg(long)]
    pub r_b: Option<f64>,
    #[arg(long)]
    pub t_b: Option<f64>,
    /// Dipole orientation |D̂·x̂|², 0 parallel to the mirror, 1 normal to it.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Side of the mirror the atom sits on (general mirrors only).
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[arg(long)]
    pub k0x_min: Option<f64>,
    #[arg(long)]
    pub k0x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct RatesScanCmd {
    /// JSON file supplying defaults for any option above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub opts: RatesScanOptions,
}

pub fn run(cmd: RatesScanCmd) -> CliResult<()> {
    let file: RatesScanOptions = config::load(cmd.config.as_deref())?;
    let o = overlay!(
        cmd.opts,
        file,
        [preset, r, t, r_a, t_a, r_b, t_b, mu, side, k0x_min, k0x_max, points, output, format]
    );
    let mirror = MirrorArgs {
        preset: o.preset,
        r: o.r,
        t: o.t,
        r_a: o.r_a,
        t_a: o.t_a,
        r_b: o.r_b,
        t_b: o.t_b,
    }
    .resolve()?;
    let mu = o.mu.unwrap_or(0.0);
    let side = o.side.unwrap_or(SideArg::A);
    let (lo, hi) = (o.k0x_min.unwrap_or(0.05), o.k0x_max.unwrap_or(10.0));
    let points = o.points.unwrap_or(200);
    check_grid(lo, hi, points, "k0x range")?;
    if lo <= 0.0 {
        return Err(CliError::Validation(format!(
            "k0x-min = {lo}: the level shift needs a positive distance"
        )));
    }

    let results: Vec<mirrorfield::Result<RateResult>> = linspace(lo, hi, points)
        .into_par_iter()
        .map(|k0x| match mirror.preset {
            Some(p) => preset_rates(p, mu, 2.0 * k0x),
            None => rates(&mirror.spec, mu, 2.0 * k0x, side.into()),
        })
        .collect();
    let results = results
        .into_iter()
        .collect::<mirrorfield::Result<Vec<_>>>()?;

    let table = Table {
        columns: vec!["k0x", "gamma_ratio", "delta_ratio"],
        rows: results
            .iter()
            .map(|r| vec![0.5 * r.z, r.gamma_ratio, r.delta_ratio])
            .collect(),
    };
    let meta = Meta {
        command: "rates-scan",
        parameters: json!({
            "mirror": mirror,
            "mu": mu,
            "side": side,
            "k0x-min": lo,
            "k0x-max": hi,
            "points": points,
        }),
        tolerances: json!({ "series_threshold_z": SERIES_THRESHOLD }),
        checks: json!({}),
    };
    emit(
        o.output.as_deref(),
        o.format.unwrap_or_default(),
        &table,
        &meta,
    )
}
