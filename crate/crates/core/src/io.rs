//! CSV writers for the datasets the library produces. Floats are written
//! in Rust's shortest round-trip form, so a file reproduces its values
//! exactly and reruns are byte-identical.

use std::io::{self, Write};

use crate::classical::FrameRow;
use crate::mastereq::{Trajectory, UnravelResult};
use crate::modespace::{ModeAmplitudes, ModeGrid};
use crate::rates::RateResult;

pub const FRAME_HEADER: &str = "t,x,E_total,E_side_a,E_side_b";
pub const AMPLITUDE_HEADER: &str = "k,re_alpha_a,im_alpha_a,re_alpha_b,im_alpha_b";
pub const SWEEP_HEADER: &str = "k0x,gamma_ratio,delta_ratio";
pub const TRAJECTORY_HEADER: &str = "t,rho11,rho22,re_rho12,im_rho12";
pub const UNRAVEL_HEADER: &str = "t,rho11,rho22,re_rho12,im_rho12,stderr_rho22";

fn row<W: Write + ?Sized>(out: &mut W, values: &[f64]) -> io::Result<()> {
    let mut first = true;
    for v in values {
        if !first {
            out.write_all(b",")?;
        }
        first = false;
        write!(out, "{v:?}")?;
    }
    out.write_all(b"\n")
}

/// A header line followed by one line per row.
pub fn write_csv<W: Write + ?Sized>(
    out: &mut W,
    columns: &[&str],
    rows: &[Vec<f64>],
) -> io::Result<()> {
    writeln!(out, "{}", columns.join(","))?;
    for r in rows {
        row(out, r)?;
    }
    Ok(())
}

pub fn write_frames<W: Write + ?Sized>(out: &mut W, rows: &[FrameRow]) -> io::Result<()> {
    writeln!(out, "{FRAME_HEADER}")?;
    for r in rows {
        row(out, &[r.t, r.x, r.e_total, r.e_side_a, r.e_side_b])?;
    }
    Ok(())
}

pub fn write_amplitudes<W: Write + ?Sized>(
    out: &mut W,
    grid: &ModeGrid,
    amps: &ModeAmplitudes,
) -> io::Result<()> {
    writeln!(out, "{AMPLITUDE_HEADER}")?;
    for (i, k) in grid.ks().enumerate() {
        let (a, b) = (amps.alpha_a[i], amps.alpha_b[i]);
        row(out, &[k, a.re, a.im, b.re, b.im])?;
    }
    Ok(())
}

/// One row per rate result; the first column is `k₀x = z/2`.
pub fn write_sweep<W: Write + ?Sized>(out: &mut W, results: &[RateResult]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in results {
        row(out, &[0.5 * r.z, r.gamma_ratio, r.delta_ratio])?;
    }
    Ok(())
}

pub fn write_trajectory<W: Write + ?Sized>(out: &mut W, traj: &Trajectory) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        row(out, &[*t, s.rho11.re, s.rho22.re, s.rho12.re, s.rho12.im])?;
    }
    Ok(())
}

pub fn write_unravel<W: Write + ?Sized>(out: &mut W, result: &UnravelResult) -> io::Result<()> {
    writeln!(out, "{UNRAVEL_HEADER}")?;
    for ((t, s), e) in result
        .times
        .iter()
        .zip(&result.mean)
        .zip(&result.stderr_rho22)
    {
        row(
            out,
            &[*t, s.rho11.re, s.rho22.re, s.rho12.re, s.rho12.im, *e],
        )?;
    }
    Ok(())
}
