//! Frames of an arbitrary one-dimensional scene read from a JSON file.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use mirrorfield::classical::{frame_series, ScatterScene};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, check_grid, linspace, overlay};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Format, Meta, Table};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScatterOptions {
    /// Scene file: `{"mirror": {...}, "packets_a": [...], "packets_b": [...]}`.
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Frame times, comma separated [default: 0].
    #[arg(long = "t", value_delimiter = ',')]
    #[serde(rename = "t")]
    pub times: Option<Vec<f64>>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ScatterCmd {
    /// JSON file supplying defaults for any option above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub opts: ScatterOptions,
}

pub fn run(cmd: ScatterCmd) -> CliResult<()> {
    let file: ScatterOptions = config::load(cmd.config.as_deref())?;
    let o = overlay!(
        cmd.opts,
        file,
        [scene, times, x_min, x_max, points, output, format]
    );
    let path = o
        .scene
        .ok_or_else(|| CliError::Validation("--scene is required".into()))?;
    let text = fs::read_to_string(&path).map_err(|e| CliError::io_at("read scene", &path, e))?;
    let scene: ScatterScene = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("scene {}: {e}", path.display())))?;
    let scene = scene.validated()?;
    let times = o.times.unwrap_or_else(|| vec![0.0]);
    let (lo, hi) = (o.x_min.unwrap_or(-10.0), o.x_max.unwrap_or(10.0));
    let points = o.points.unwrap_or(2001);
    check_grid(lo, hi, points, "x grid")?;
    let rows = frame_series(&scene, &times, &linspace(lo, hi, points))?;
    let table = Table {
        columns: vec!["t", "x", "E_total", "E_side_a", "E_side_b"],
        rows: rows
            .iter()
            .map(|f| vec![f.t, f.x, f.e_total, f.e_side_a, f.e_side_b])
            .collect(),
    };
    let meta = Meta {
        command: "scatter",
        parameters: json!({
            "scene": scene,
            "t": times,
            "x-min": lo,
            "x-max": hi,
            "points": points,
        }),
        tolerances: json!({}),
        checks: json!({}),
    };
    emit(
        o.output.as_deref(),
        o.format.unwrap_or_default(),
        &table,
        &meta,
    )
}
