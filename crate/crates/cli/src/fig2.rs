//! Frames of a Gaussian packet hitting a mirror. The defaults show a packet
//! one unit from the surface on its way in, at contact and on its way out.

use std::f64::consts::SQRT_2;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mirrorfield::classical::{frame_series, mirror_field_1d, ScatterScene};
use mirrorfield::{Direction, GaussianPacket, Medium, MirrorSpec, Side};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, check_grid, linspace, overlay};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Format, Meta, Table};

/// Largest |E(0, t)| accepted at a perfect mirror, relative to E₀.
pub const NODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fig2Mirror {
    Perfect,
    Free,
    Absorbing,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Fig2Options {
    /// Initial packet centre.
    #[arg(long)]
    pub x0: Option<f64>,
    /// Packet amplitude E₀ (the field peak is 2E₀).
    #[arg(long)]
    pub e0: Option<f64>,
    /// Carrier wavenumber times x0; negative for a left-moving packet.
    #[arg(long)]
    pub k0x0: Option<f64>,
    /// Envelope width [default: x0/√2].
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Frame times in units of x0/c, comma separated [default: 0,0.89,1.83].
    #[arg(long = "t", value_delimiter = ',')]
    #[serde(rename = "t")]
    pub times: Option<Vec<f64>>,
    /// Keep only the first N frame times.
    #[arg(long)]
    pub frames: Option<usize>,
    #[arg(long, value_enum)]
    pub mirror: Option<Fig2Mirror>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Grid points from x-min to x-max inclusive.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct Fig2Cmd {
    /// JSON file supplying defaults for any option above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub opts: Fig2Options,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
struct Resolved {
    x0: f64,
    e0: f64,
    k0x0: f64,
    sigma: f64,
    t: Vec<f64>,
    mirror: Fig2Mirror,
    x_min: f64,
    x_max: f64,
    points: usize,
}

pub fn run(cmd: Fig2Cmd) -> CliResult<()> {
    let file: Fig2Options = config::load(cmd.config.as_deref())?;
    let o = overlay!(
        cmd.opts,
        file,
        [x0, e0, k0x0, sigma, times, frames, mirror, x_min, x_max, points, output, format]
    );
    let x0 = o.x0.unwrap_or(1.0);
    if x0 == 0.0 {
        return Err(CliError::Validation("x0 must be non-zero".into()));
    }
    let mut t = o.times.unwrap_or_else(|| vec![0.0, 0.89, 1.83]);
    if let Some(n) = o.frames {
        if n == 0 || n > t.len() {
            return Err(CliError::Validation(format!(
                "--frames {n} outside 1..={}",
                t.len()
            )));
        }
        t.truncate(n);
    }
    let r = Resolved {
        x0,
        e0: o.e0.unwrap_or(1.0),
        k0x0: o.k0x0.unwrap_or(-6.0),
        sigma: o.sigma.unwrap_or(x0.abs() / SQRT_2),
        t,
        mirror: o.mirror.unwrap_or(Fig2Mirror::Perfect),
        x_min: o.x_min.unwrap_or(-4.0),
        x_max: o.x_max.unwrap_or(4.0),
        points: o.points.unwrap_or(2001),
    };
    check_grid(r.x_min, r.x_max, r.points, "x grid")?;

    let medium = Medium::normalized();
    let k0 = r.k0x0 / r.x0;
    let packet = GaussianPacket {
        e0: r.e0,
        x0: r.x0,
        sigma: r.sigma,
        k0_carrier: k0.abs(),
        side: Side::of_position(r.x0),
        direction: if k0 < 0.0 {
            Direction::Left
        } else {
            Direction::Right
        },
        xi_init: 0.0,
    };
    let mirror = match r.mirror {
        Fig2Mirror::Perfect => MirrorSpec::perfect(),
        Fig2Mirror::Free => MirrorSpec::free_space(),
        Fig2Mirror::Absorbing => MirrorSpec::absorbing(),
    };
    let (packets_a, packets_b) = match packet.side {
        Side::A => (vec![packet], vec![]),
        Side::B => (vec![], vec![packet]),
    };
    let scene = ScatterScene {
        mirror,
        packets_a,
        packets_b,
        medium,
    }
    .validated()?;

    let unit = r.x0.abs() / medium.light_speed();
    let times: Vec<f64> = r.t.iter().map(|t| t * unit).collect();
    let xs = linspace(r.x_min, r.x_max, r.points);
    let rows = frame_series(&scene, &times, &xs)?;

    let mut checks = json!({});
    if r.mirror == Fig2Mirror::Perfect {
        let mut worst = 0.0f64;
        for &t in &times {
            worst = worst.max(mirror_field_1d(&scene, 0.0, t)?.e.abs());
        }
        let limit = NODE_TOL * r.e0.abs();
        checks = json!({ "node_max_abs_e": worst, "node_pass": worst < limit });
        if !(worst < limit) {
            return Err(CliError::Numerical(format!(
                "|E(0, t)| = {worst:e} exceeds {limit:e} at the perfect mirror"
            )));
        }
    }

    let table = Table {
        columns: vec!["t", "x", "E_total", "E_side_a", "E_side_b"],
        rows: rows
            .iter()
            .map(|f| vec![f.t, f.x, f.e_total, f.e_side_a, f.e_side_b])
            .collect(),
    };
    let meta = Meta {
        command: "fig2",
        parameters: json!(r),
        tolerances: json!({ "node_relative": NODE_TOL }),
        checks,
    };
    emit(
        o.output.as_deref(),
        o.format.unwrap_or_default(),
        &table,
        &meta,
    )
}
