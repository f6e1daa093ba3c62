//! Independent numerical re-derivations of the closed-form rates.
//!
//! * The decay rate from the angular `s = cos ϑ` integral of the
//!   conditional Hamiltonian, with the frequency integral collapsed onto
//!   `ω = ω₀` by its delta-function part.
//! * The decay rate again from the reset operator, this time integrating
//!   the full solid angle with explicit dipole and polarisation vectors.
//! * The level shift from its complex exponential form.
//! * The one-sided field energy from a spatial integral of the energy
//!   density, against the standing-wave mode sum.
//!
//! None of these call into [`crate::rates`] for the quantity they check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modespace::{xi_transform, ModeAmplitudes, ModeSpace};
use crate::params::{MirrorSpec, Side};
use crate::quadrature::{compensated_sum, simpson_with_coarse, GaussLegendre};
use crate::rates;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre order on [−1, 1].
    pub order: usize,
    /// Largest relative change allowed when the order is doubled.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order: 64,
            tolerance: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn validated(self) -> Result<Self> {
        if self.order < 16 {
            return Err(Error::InvalidParameter {
                field: "order",
                value: self.order as f64,
                reason: "Gauss-Legendre order must be at least 16",
            });
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter {
                field: "tolerance",
                value: self.tolerance,
                reason: "must be positive",
            });
        }
        Ok(self)
    }
}

/// Evaluate `rule` at the requested order and at twice that order; keep
/// the requested-order value if the two agree.
fn escalate<F>(quad: &QuadratureSpec, rule: F) -> Result<f64>
where
    F: Fn(&GaussLegendre) -> f64,
{
    let quad = quad.validated()?;
    let base = rule(&GaussLegendre::new(quad.order));
    let doubled = rule(&GaussLegendre::new(2 * quad.order));
    let change = (doubled - base).abs() / doubled.abs().max(1.0);
    if change > quad.tolerance || !change.is_finite() {
        return Err(Error::QuadratureNotConverged {
            order: quad.order,
            change,
            tolerance: quad.tolerance,
        });
    }
    Ok(base)
}

/// Γ/Γ_free from the `s`-integrand of the conditional Hamiltonian at
/// `ω = ω₀`:
///
/// ```text
/// (3/4) ∫₋₁¹ ds { (1/η²)(1 + r² + 2r cos zs)(1 − s²) μ
///               + (1/2η²)(1 + r² − 2r cos zs)(1 + s²)(1 − μ)
///               + T (1 − s²) μ + (T/2)(1 + s²)(1 − μ) }
/// ```
///
/// with `T = t_b²/η_b²`. The 3/4 turns `∫(1 − s²) ds = 4/3` into unit
/// free-space decay.
pub fn angular_bracket_quadrature(
    z: f64,
    r_a: f64,
    eta_a_sq: f64,
    transmitted: f64,
    mu: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "z",
            value: z,
            reason: "must be non-negative",
        });
    }
    let integrand = |s: f64| {
        let c = (z * s).cos();
        let perp = 1.0 - s * s;
        let para = 1.0 + s * s;
        (1.0 + r_a * r_a + 2.0 * r_a * c) * perp * mu / eta_a_sq
            + (1.0 + r_a * r_a - 2.0 * r_a * c) * para * (1.0 - mu) / (2.0 * eta_a_sq)
            + transmitted * perp * mu
            + 0.5 * transmitted * para * (1.0 - mu)
    };
    escalate(quad, |gl| 0.75 * gl.integrate(integrand))
}

/// [`angular_bracket_quadrature`] with the mirror's normalisation factors
/// for an atom on `side`.
pub fn angular_gamma_for_mirror(
    mirror: &MirrorSpec,
    mu: f64,
    z: f64,
    side: Side,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let m = match side {
        Side::A => *mirror,
        Side::B => mirror.swapped(),
    };
    let eta = rates::eta_factors(&m)?;
    angular_bracket_quadrature(
        z,
        m.r_a,
        eta.eta_a_sq(),
        m.t_b * m.t_b / eta.eta_b_sq(),
        mu,
        quad,
    )
}

/// Level shift from the complex form
/// `(3r/2η²) Im[ i e^{iz}/z (1 − μ) − e^{iz}(1/z² + i/z³)(1 + μ) ]`.
pub fn levelshift_contour_eval(z: f64, mu: f64, r_a: f64, eta_a_sq: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::ZeroDistance(z));
    }
    let i = Complex64::i();
    let phase = Complex64::from_polar(1.0, z);
    let far = i * phase / z * (1.0 - mu);
    let near = phase * (1.0 / (z * z) + i / (z * z * z)) * (1.0 + mu);
    Ok(1.5 * r_a / eta_a_sq * (far - near).im)
}

/// Points of the periodic trapezoid rule in the azimuth. The azimuthal
/// integrand is a trigonometric polynomial of degree two.
const AZIMUTH_POINTS: usize = 16;

/// Γ/Γ_free from the reset operator, integrating over the full solid angle.
///
/// The atom sits at `(x, 0, 0)` with dipole `(√μ, 0, √(1 − μ))`, its image
/// at `(−x, 0, 0)` with the x-component of the dipole reversed. For each
/// direction `k̂` the polarisation sum is `|v|² − |v·k̂|²` with
/// `v = (d e^{ik·r} − r_a d̃ e^{ik·r̃})/η_a` for the a-modes and
/// `v = (t_b/η_b) d e^{ik·r}` for the b-modes; `3/8π` normalises to free
/// space. Uses the mirror's side `a`; pass [`MirrorSpec::swapped`] for
/// an atom on side `b`.
pub fn reset_rate_quadrature(
    z: f64,
    mirror: &MirrorSpec,
    mu: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "z",
            value: z,
            reason: "must be non-negative",
        });
    }
    let eta = rates::eta_factors(mirror)?;
    let (inv_eta_a, inv_eta_b) = (1.0 / eta.eta_a(), 1.0 / eta.eta_b());
    let d = [mu.sqrt(), 0.0, (1.0 - mu).sqrt()];
    let d_image = [-d[0], d[1], d[2]];
    let r_a = mirror.r_a;
    let t_b = mirror.t_b;
    // k·r = (z/2) s for |k| = k₀ and r = (x, 0, 0)
    let half_z = 0.5 * z;

    let polarisation_sum = |v: [Complex64; 3], khat: [f64; 3]| {
        let along: Complex64 = v[0] * khat[0] + v[1] * khat[1] + v[2] * khat[2];
        v.iter().map(|c| c.norm_sqr()).sum::<f64>() - along.norm_sqr()
    };

    let integrand = |s: f64| {
        let sin_theta = (1.0 - s * s).max(0.0).sqrt();
        let direct = Complex64::from_polar(1.0, half_z * s);
        let image = Complex64::from_polar(1.0, -half_z * s);
        let mut acc = 0.0;
        for j in 0..AZIMUTH_POINTS {
            let phi = 2.0 * PI * j as f64 / AZIMUTH_POINTS as f64;
            let khat = [s, phi.cos() * sin_theta, phi.sin() * sin_theta];
            let mut va = [Complex64::new(0.0, 0.0); 3];
            let mut vb = [Complex64::new(0.0, 0.0); 3];
            for c in 0..3 {
                va[c] = (d[c] * direct - r_a * d_image[c] * image) * inv_eta_a;
                vb[c] = t_b * d[c] * direct * inv_eta_b;
            }
            acc += polarisation_sum(va, khat) + polarisation_sum(vb, khat);
        }
        acc * 2.0 * PI / AZIMUTH_POINTS as f64
    };
    escalate(quad, |gl| 3.0 / (8.0 * PI) * gl.integrate(integrand))
}

/// Where the mode-sum check integrates in space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    /// Simpson panels on `[0, L/2]`, `L` the grid period. Must be a
    /// multiple of four.
    pub panels: usize,
}

impl SpatialGrid {
    /// Four panels per mode: enough for Simpson at both `h` and `2h` to
    /// resolve every product of two grid modes.
    pub fn default_for(space: &ModeSpace) -> Self {
        SpatialGrid {
            panels: 4 * space.grid.modes_per_side(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HfieldReport {
    /// `(A/2) ∫₀^∞ [ε E² + B²/μ_p] dx` of the mirror-side field.
    pub spatial_energy: f64,
    /// `Σ_{k>0} ħω |ξ_k|² Δk`.
    pub mode_energy: f64,
    pub relative_gap: f64,
}

/// Field energy in front of a one-sided perfect mirror, two ways.
///
/// The mirror field is odd and `L`-periodic on the grid, so its energy
/// density is even and the half-line integral equals half the integral
/// over a full period, where the grid modes are orthogonal.
pub fn hfield_mode_sum_check(
    space: &ModeSpace,
    amps: &ModeAmplitudes,
    x_grid: &SpatialGrid,
) -> Result<HfieldReport> {
    if x_grid.panels < 4 || !x_grid.panels.is_multiple_of(4) {
        return Err(Error::InvalidParameter {
            field: "panels",
            value: x_grid.panels as f64,
            reason: "must be a positive multiple of four",
        });
    }
    let xi = xi_transform(&amps.alpha_a, &space.grid);
    let dk = space.grid.dk();
    let mode_energy = compensated_sum(
        xi.iter()
            .enumerate()
            .map(|(j, v)| space.hbar * space.omega((j + 1) as f64 * dk) * v.norm_sqr()),
    ) * dk;

    let half_period = 0.5 * space.grid.period();
    let h = half_period / x_grid.panels as f64;
    let eps = space.medium.permittivity;
    let mu_p = space.medium.permeability;
    let density: Vec<f64> = (0..=x_grid.panels)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 * h;
            let e = space.expect_e_mirr_xi(&xi, x);
            let b = space.expect_b_mirr_xi(&xi, x);
            eps * e * e + b * b / mu_p
        })
        .collect();
    let (fine, coarse) = simpson_with_coarse(&density, h).expect("panel count is 4m");
    let area = space.grid.area();
    let spatial_energy = 0.5 * area * fine;
    let coarse_energy = 0.5 * area * coarse;
    let scale = spatial_energy.abs().max(f64::MIN_POSITIVE);
    let richardson = (spatial_energy - coarse_energy).abs() / scale;
    if spatial_energy != 0.0 && richardson > 1e-6 {
        return Err(Error::GridTooCoarse {
            deviation: richardson,
            tolerance: 1e-6,
        });
    }
    let relative_gap = if mode_energy == 0.0 && spatial_energy == 0.0 {
        0.0
    } else {
        (spatial_energy - mode_energy).abs() / mode_energy.abs().max(spatial_energy.abs())
    };
    Ok(HfieldReport {
        spatial_energy,
        mode_energy,
        relative_gap,
    })
}

/// Deviation of `value` from `reference`, relative to `max(|reference|, 1)`,
/// i.e. in units of the free-space rate for small rates.
pub fn rate_deviation(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub z: f64,
    pub mu: f64,
    pub oracle: f64,
    pub closed_form: f64,
    pub rel_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub points: Vec<OraclePoint>,
    pub max_rel_dev: f64,
}

impl OracleReport {
    fn from_points(name: impl Into<String>, points: Vec<OraclePoint>) -> Self {
        let max_rel_dev = points.iter().map(|p| p.rel_dev).fold(0.0, f64::max);
        OracleReport {
            name: name.into(),
            points,
            max_rel_dev,
        }
    }

    pub fn z_grid(&self) -> Vec<f64> {
        let mut zs: Vec<f64> = self.points.iter().map(|p| p.z).collect();
        zs.dedup();
        zs
    }
}

/// Compare an oracle against a closed form on a (z, μ) grid, in parallel.
pub fn compare_on_grid<O, C>(
    name: &str,
    zs: &[f64],
    mus: &[f64],
    oracle: O,
    closed_form: C,
) -> Result<OracleReport>
where
    O: Fn(f64, f64) -> Result<f64> + Sync,
    C: Fn(f64, f64) -> Result<f64> + Sync,
{
    let grid: Vec<(f64, f64)> = mus
        .iter()
        .flat_map(|&mu| zs.iter().map(move |&z| (z, mu)))
        .collect();
    // collect everything first so the reported error is the first in
    // grid order, independent of scheduling
    let evaluated: Vec<Result<OraclePoint>> = grid
        .par_iter()
        .map(|&(z, mu)| {
            let o = oracle(z, mu)?;
            let c = closed_form(z, mu)?;
            Ok(OraclePoint {
                z,
                mu,
                oracle: o,
                closed_form: c,
                rel_dev: rate_deviation(o, c),
            })
        })
        .collect();
    let points = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(OracleReport::from_points(name, points))
}
