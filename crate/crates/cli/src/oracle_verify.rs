//! Runs every oracle comparison and reports one record per check.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::PathBuf;

use clap::Args;
use mirrorfield::modespace::{ModeGrid, ModeSpace};
use mirrorfield::oracle::{
    angular_gamma_for_mirror, compare_on_grid, hfield_mode_sum_check, levelshift_contour_eval,
    reset_rate_quadrature, QuadratureSpec, SpatialGrid,
};
use mirrorfield::rates::{delta_mirr, eta_factors, gamma_mirr};
use mirrorfield::{Direction, GaussianPacket, Medium, MirrorSpec, Side};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, overlay};
use crate::error::{CliError, CliResult};
use crate::output::emit_report;

pub const GAMMA_TOL: f64 = 1e-8;
pub const DELTA_TOL: f64 = 1e-12;
pub const ROUTE_TOL: f64 = 1e-10;
pub const ENERGY_TOL: f64 = 1e-9;
pub const SPLIT_TOL: f64 = 1e-3;
/// Order used by `--grid-coarse`; too low to resolve `cos(zs)` at z = 50.
pub const COARSE_ORDER: usize = 16;

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OracleOptions {
    /// Use this tolerance for every check instead of the per-check defaults.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Gauss-Legendre order for the angular integrals [default: 64].
    #[arg(long)]
    pub order: Option<usize>,
    /// Run the angular integrals at a deliberately coarse order.
    #[arg(long, num_args = 0, default_missing_value = "true")]
    pub grid_coarse: Option<bool>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleVerifyCmd {
    /// JSON file supplying defaults for any option above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub opts: OracleOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckError {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub grid: String,
    pub max_rel_dev: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<CheckError>,
}

impl CheckRecord {
    fn from_outcome(
        name: impl Into<String>,
        grid: impl Into<String>,
        tolerance: f64,
        outcome: mirrorfield::Result<f64>,
    ) -> Self {
        let (max_rel_dev, error) = match outcome {
            Ok(d) => (Some(d), None),
            Err(e) => {
                let kind = format!("{e:?}");
                let kind = kind
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string();
                (
                    None,
                    Some(CheckError {
                        kind,
                        message: e.to_string(),
                    }),
                )
            }
        };
        CheckRecord {
            name: name.into(),
            grid: grid.into(),
            pass: max_rel_dev.is_some_and(|d| d < tolerance),
            max_rel_dev,
            tolerance,
            error,
        }
    }
}

pub struct SuiteSettings {
    pub quadrature: QuadratureSpec,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
}

fn mirrors() -> Vec<(&'static str, MirrorSpec)> {
    vec![
        ("perfect", MirrorSpec::perfect()),
        (
            "symmetric-50-50",
            MirrorSpec::symmetric(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        ),
        ("symmetric-r0.3-t0.5", MirrorSpec::symmetric(0.3, 0.5)),
        (
            "two-sided-r0.3-t0.5-r0.6-t0.7",
            MirrorSpec {
                r_a: 0.3,
                t_a: 0.5,
                r_b: 0.6,
                t_b: 0.7,
                ..MirrorSpec::perfect()
            },
        ),
    ]
}

const MUS: [f64; 3] = [0.0, 0.5, 1.0];
const GRID_LABEL: &str = "z = 0.1..50 step 0.1, mu in {0, 0.5, 1}";

fn z_grid() -> Vec<f64> {
    (1..=500).map(|i| 0.1 * i as f64).collect()
}

fn oriented(m: &MirrorSpec, side: Side) -> MirrorSpec {
    match side {
        Side::A => *m,
        Side::B => m.swapped(),
    }
}

/// The narrowband one-sided packet used by the energy checks.
fn energy_packet() -> GaussianPacket {
    GaussianPacket {
        e0: 1.0,
        x0: 12.0,
        sigma: 1.5,
        k0_carrier: 5.0,
        side: Side::A,
        direction: Direction::Left,
        xi_init: 0.0,
    }
}

pub fn run_suite(settings: &SuiteSettings) -> Vec<CheckRecord> {
    let q = settings.quadrature;
    let tol = |default: f64| settings.tolerance.unwrap_or(default);
    let zs = z_grid();
    let mut checks = Vec::new();

    for (name, m) in mirrors() {
        for side in [Side::A, Side::B] {
            let label = side.label();
            let outcome = compare_on_grid(
                name,
                &zs,
                &MUS,
                |z, mu| angular_gamma_for_mirror(&m, mu, z, side, &q),
                |z, mu| gamma_mirr(&m, mu, z, side),
            )
            .map(|r| r.max_rel_dev);
            checks.push(CheckRecord::from_outcome(
                format!("gamma-angular-vs-closed/{name}/side-{label}"),
                GRID_LABEL,
                tol(GAMMA_TOL),
                outcome,
            ));
        }
    }

    for (name, m) in mirrors() {
        for side in [Side::A, Side::B] {
            let label = side.label();
            let o = oriented(&m, side);
            let outcome = eta_factors(&o).and_then(|eta| {
                compare_on_grid(
                    name,
                    &zs,
                    &MUS,
                    |z, mu| levelshift_contour_eval(z, mu, o.r_a, eta.eta_a_sq()),
                    |z, mu| delta_mirr(&m, mu, z, side),
                )
                .map(|r| r.max_rel_dev)
            });
            checks.push(CheckRecord::from_outcome(
                format!("delta-contour-vs-closed/{name}/side-{label}"),
                GRID_LABEL,
                tol(DELTA_TOL),
                outcome,
            ));
        }
    }

    for (name, m) in mirrors() {
        for side in [Side::A, Side::B] {
            let label = side.label();
            let o = oriented(&m, side);
            let outcome = compare_on_grid(
                name,
                &zs,
                &MUS,
                |z, mu| reset_rate_quadrature(z, &o, mu, &q),
                |z, mu| angular_gamma_for_mirror(&m, mu, z, side, &q),
            )
            .map(|r| r.max_rel_dev);
            checks.push(CheckRecord::from_outcome(
                format!("gamma-reset-vs-conditional/{name}/side-{label}"),
                GRID_LABEL,
                tol(ROUTE_TOL),
                outcome,
            ));
        }
    }

    let packet = energy_packet();
    let space = ModeGrid::default_for(&packet, 1.0)
        .and_then(|g| ModeSpace::new(g, Medium::normalized(), 1.0));
    let amps = space
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|s| s.packet_to_amplitudes(&packet));
    let grid_label = "default mode grid, one-sided packet x0=12 sigma=1.5 k0=5";

    let energy = match (&space, &amps) {
        (Ok(s), Ok(a)) => {
            hfield_mode_sum_check(s, a, &SpatialGrid::default_for(s)).map(|r| r.relative_gap)
        }
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    checks.push(CheckRecord::from_outcome(
        "hfield-spatial-vs-mode-sum",
        grid_label,
        tol(ENERGY_TOL),
        energy,
    ));

    let split = match (&space, &amps) {
        (Ok(s), Ok(a)) => Ok((s.expect_h_field_one_sided(a) / s.expect_h_sys(a) - 0.5).abs()),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    checks.push(CheckRecord::from_outcome(
        "hfield-half-of-hsys",
        grid_label,
        tol(SPLIT_TOL),
        split,
    ));
    checks
}

pub fn run(cmd: OracleVerifyCmd) -> CliResult<()> {
    let file: OracleOptions = config::load(cmd.config.as_deref())?;
    let o = overlay!(cmd.opts, file, [tolerance, order, grid_coarse, output]);
    let coarse = o.grid_coarse.unwrap_or(false);
    let order = if coarse {
        COARSE_ORDER
    } else {
        o.order.unwrap_or(QuadratureSpec::default().order)
    };
    if let Some(t) = o.tolerance {
        if !(t > 0.0) {
            return Err(CliError::Validation(format!(
                "--tolerance {t} must be positive"
            )));
        }
    }
    let quadrature = QuadratureSpec {
        order,
        ..QuadratureSpec::default()
    }
    .validated()?;
    let settings = SuiteSettings {
        quadrature,
        tolerance: o.tolerance,
    };
    let checks = run_suite(&settings);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    let report = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": "oracle-verify",
        "parameters": {
            "order": quadrature.order,
            "escalation-tolerance": quadrature.tolerance,
            "tolerance-override": o.tolerance,
            "grid-coarse": coarse,
        },
        "checks": checks,
        "all_pass": failed.is_empty(),
    });
    emit_report(o.output.as_deref(), &report)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            checks.len(),
            failed.join(", ")
        )))
    }
}
