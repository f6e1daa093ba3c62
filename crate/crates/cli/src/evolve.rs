use std::path::PathBuf;

use clap::Args;
use mirrorfield::mastereq::{
    evolve, jump_unravel, AtomChannel, DensityMatrix, INVARIANT_TOL, MAX_STEP_FRACTION,
};
use mirrorfield::rates::rates;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, overlay, MirrorArgs, PresetArg, SideArg};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Format, Meta, Table};

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EvolveOptions {
    /// Decay rate; with --from-mirror, the free-space rate [default: 1].
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Level shift (not combinable with --from-mirror) [default: 0].
    #[arg(long)]
    pub delta: Option<f64>,
    /// Initial excited-state population [default: 1].
    #[arg(long)]
    pub rho22: Option<f64>,
    #[arg(long)]
    pub rho12_re: Option<f64>,
    #[arg(long)]
    pub rho12_im: Option<f64>,
    #[arg(long)]
    pub t_final: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Write every N-th time step.
    #[arg(long)]
    pub every: Option<usize>,
    /// Take Γ and Δ from an atom in front of this mirror.
    #[arg(long, value_enum)]
    pub from_mirror: Option<PresetArg>,
    #[arg(long)]
    pub r: Option<f64>,
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
    /// Atom-mirror distance times k₀.
    #[arg(long)]
    pub k0x: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Average this many quantum-jump trajectories instead of integrating.
    #[arg(long)]
    pub unravel: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EvolveCmd {
    /// JSON file supplying defaults for any option above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub opts: EvolveOptions,
}

fn channel_for(o: &EvolveOptions) -> CliResult<(AtomChannel, serde_json::Value)> {
    let gamma = o.gamma.unwrap_or(1.0);
    let Some(preset) = o.from_mirror else {
        let ch = AtomChannel::new(gamma, o.delta.unwrap_or(0.0))?;
        return Ok((ch, json!(null)));
    };
    if o.delta.is_some() {
        return Err(CliError::Validation(
            "--delta cannot be combined with --from-mirror".into(),
        ));
    }
    let mirror = MirrorArgs {
        preset: Some(preset),
        r: o.r,
        t: o.t,
        r_a: o.r_a,
        t_a: o.t_a,
        r_b: o.r_b,
        t_b: o.t_b,
    }
    .resolve()?;
    let k0x = o
        .k0x
        .ok_or_else(|| CliError::Validation("--from-mirror requires --k0x".into()))?;
    let mu = o.mu.unwrap_or(0.0);
    let side = o.side.unwrap_or(SideArg::A);
    let ratios = rates(&mirror.spec, mu, 2.0 * k0x, side.into())?;
    let ch = AtomChannel::new(ratios.gamma_ratio * gamma, ratios.delta_ratio * gamma)?;
    let provenance = json!({
        "mirror": mirror,
        "k0x": k0x,
        "mu": mu,
        "side": side,
        "gamma_free": gamma,
        "gamma_ratio": ratios.gamma_ratio,
        "delta_ratio": ratios.delta_ratio,
    });
    Ok((ch, provenance))
}

pub fn run(cmd: EvolveCmd) -> CliResult<()> {
    let file: EvolveOptions = config::load(cmd.config.as_deref())?;
    let o = overlay!(
        cmd.opts,
        file,
        [
            gamma,
            delta,
            rho22,
            rho12_re,
            rho12_im,
            t_final,
            dt,
            every,
            from_mirror,
            r,
            t,
            r_a,
            t_a,
            r_b,
            t_b,
            k0x,
            mu,
            side,
            unravel,
            seed,
            output,
            format
        ]
    );
    let (channel, composition) = channel_for(&o)?;
    let rho22 = o.rho22.unwrap_or(1.0);
    let rho12 = Complex64::new(o.rho12_re.unwrap_or(0.0), o.rho12_im.unwrap_or(0.0));
    let rho0 = DensityMatrix::new(rho22, rho12);
    rho0.check(0)
        .map_err(|e| CliError::Validation(format!("initial state: {e}")))?;
    let t_final = o.t_final.unwrap_or(10.0);
    let dt = o.dt.unwrap_or(1e-3);
    let every = o.every.unwrap_or(1);
    if every == 0 {
        return Err(CliError::Validation("--every must be at least 1".into()));
    }

    let mut checks = json!({});
    let table = match o.unravel {
        None => {
            let traj = evolve(&rho0, &channel, t_final, dt).map_err(|e| match e {
                mirrorfield::Error::StepTooLarge { .. } => CliError::Validation(e.to_string()),
                other => other.into(),
            })?;
            Table {
                columns: vec!["t", "rho11", "rho22", "re_rho12", "im_rho12"],
                rows: traj
                    .times
                    .iter()
                    .zip(&traj.states)
                    .step_by(every)
                    .map(|(t, s)| vec![*t, s.rho11.re, s.rho22.re, s.rho12.re, s.rho12.im])
                    .collect(),
            }
        }
        Some(n) => {
            let out = jump_unravel(&rho0, &channel, t_final, dt, n, o.seed.unwrap_or(0))?;
            checks = json!({ "jumps": out.jumps });
            Table {
                columns: vec![
                    "t",
                    "rho11",
                    "rho22",
                    "re_rho12",
                    "im_rho12",
                    "stderr_rho22",
                ],
                rows: out
                    .times
                    .iter()
                    .zip(&out.mean)
                    .zip(&out.stderr_rho22)
                    .step_by(every)
                    .map(|((t, s), e)| vec![*t, s.rho11.re, s.rho22.re, s.rho12.re, s.rho12.im, *e])
                    .collect(),
            }
        }
    };
    let meta = Meta {
        command: "evolve",
        parameters: json!({
            "channel": channel,
            "composition": composition,
            "rho22": rho22,
            "rho12": [rho12.re, rho12.im],
            "t-final": t_final,
            "dt": dt,
            "every": every,
            "unravel": o.unravel,
            "seed": o.unravel.map(|_| o.seed.unwrap_or(0)),
        }),
        tolerances: json!({
            "invariants": INVARIANT_TOL,
            "max_step_fraction": MAX_STEP_FRACTION,
        }),
        checks,
    };
    emit(
        o.output.as_deref(),
        o.format.unwrap_or_default(),
        &table,
        &meta,
    )
}
