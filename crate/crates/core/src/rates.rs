//! Spontaneous decay rate and mirror-induced level shift of a two-level
//! atom in front of a two-sided semi-transparent mirror, in units of the
//! free-space rate.
//!
//! With `z = 2k₀|x|` and `(r, η)` the reflection rate and normalisation of
//! the atom's side, `(t̄, η̄)` those of the opposite side:
//!
//! ```text
//! Γ/Γ_free = (1 + r²)/η² + t̄²/η̄² − (3r/η²) [sinc(z)(1 − μ) + C(z)(1 + μ)]
//! Δ/Γ_free = (3r/2η²) [cos z/z (1 − μ) − (sin z/z² + cos z/z³)(1 + μ)]
//! C(z)     = cos z/z² − sin z/z³
//! ```
//!
//! `C(z)` loses all significant digits as `z → 0`, so below
//! [`SERIES_THRESHOLD`] both decay brackets come from their Taylor series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AtomSpec, Medium, MirrorSpec, Side};

/// Below this `z` the decay brackets are evaluated by series.
pub const SERIES_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaFactors {
    pub eta_a_sq: f64,
    pub eta_b_sq: f64,
}

impl EtaFactors {
    pub fn eta_a(&self) -> f64 {
        self.eta_a_sq.sqrt()
    }

    pub fn eta_b(&self) -> f64 {
        self.eta_b_sq.sqrt()
    }

    pub fn eta_a_sq(&self) -> f64 {
        self.eta_a_sq
    }

    pub fn eta_b_sq(&self) -> f64 {
        self.eta_b_sq
    }

    /// (η², η̄²) for an atom on `side`.
    pub fn for_side(&self, side: Side) -> (f64, f64) {
        match side {
            Side::A => (self.eta_a_sq(), self.eta_b_sq()),
            Side::B => (self.eta_b_sq(), self.eta_a_sq()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateResult {
    pub gamma_ratio: f64,
    pub delta_ratio: f64,
    pub z: f64,
    pub side: Side,
}

/// `e² ω₀³ ‖D₁₂‖² / (3π ħ ε c³)`.
pub fn gamma_free(atom: &AtomSpec, medium: &Medium) -> f64 {
    let c = medium.light_speed();
    atom.charge.powi(2) * atom.omega0.powi(3) * atom.dipole_norm.powi(2)
        / (3.0 * std::f64::consts::PI * atom.hbar * medium.permittivity * c.powi(3))
}

/// Normalisation factors fixed by demanding free-space decay far from the
/// mirror on both sides:
///
/// ```text
/// η_a² = [(1 + r_a²)(1 + r_b²) − (t_a t_b)²] / (1 + r_b² − t_b²)
/// η_b² = [(1 + r_a²)(1 + r_b²) − (t_a t_b)²] / (1 + r_a² − t_a²)
/// ```
///
/// A denominator vanishes only for `r = 0, t = 1` on that side. If both
/// vanish (free space) the symmetric solution `η_a² = η_b² = 2` of
/// `1/η_a² + 1/η_b² = 1` is returned; if only one does the factors are
/// undetermined.
pub fn eta_factors(mirror: &MirrorSpec) -> Result<EtaFactors> {
    let m = mirror.validate()?;
    let (ra2, rb2) = (m.r_a * m.r_a, m.r_b * m.r_b);
    let (ta2, tb2) = (m.t_a * m.t_a, m.t_b * m.t_b);
    let numerator = (1.0 + ra2) * (1.0 + rb2) - ta2 * tb2;
    let den_a = 1.0 + rb2 - tb2;
    let den_b = 1.0 + ra2 - ta2;
    const TINY: f64 = 1e-14;
    match (den_a <= TINY, den_b <= TINY) {
        (true, true) => Ok(EtaFactors {
            eta_a_sq: 2.0,
            eta_b_sq: 2.0,
        }),
        (true, false) => Err(Error::DegenerateNormalisation(
            "side b is fully transparent and lossless (r_b = 0, t_b = 1) but side a is not",
        )),
        (false, true) => Err(Error::DegenerateNormalisation(
            "side a is fully transparent and lossless (r_a = 0, t_a = 1) but side b is not",
        )),
        (false, false) => Ok(EtaFactors {
            eta_a_sq: numerator / den_a,
            eta_b_sq: numerator / den_b,
        }),
    }
}

/// `sin z / z`.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < SERIES_THRESHOLD {
        let z2 = z * z;
        1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0))
    } else {
        z.sin() / z
    }
}

/// `cos z/z² − sin z/z³`, tending to −1/3 at the origin.
pub fn near_field_bracket(z: f64) -> f64 {
    if z.abs() < SERIES_THRESHOLD {
        near_field_series(z)
    } else {
        near_field_direct(z)
    }
}

/// Taylor series of `cos z/z² − sin z/z³` through `z⁶`.
pub fn near_field_series(z: f64) -> f64 {
    let z2 = z * z;
    -1.0 / 3.0 + z2 * (1.0 / 30.0 + z2 * (-1.0 / 840.0 + z2 / 45360.0))
}

pub fn near_field_direct(z: f64) -> f64 {
    z.cos() / (z * z) - z.sin() / (z * z * z)
}

/// `sinc(z)(1 − μ) + C(z)(1 + μ)`.
pub fn decay_bracket(z: f64, mu: f64) -> f64 {
    sinc(z) * (1.0 - mu) + near_field_bracket(z) * (1.0 + mu)
}

/// `cos z/z (1 − μ) − (sin z/z² + cos z/z³)(1 + μ)`; diverges at `z = 0`.
pub fn shift_bracket(z: f64, mu: f64) -> f64 {
    let (s, c) = z.sin_cos();
    c / z * (1.0 - mu) - (s / (z * z) + c / (z * z * z)) * (1.0 + mu)
}

fn check_mu(mu: f64) -> Result<()> {
    if (0.0..=1.0).contains(&mu) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "mu_orient",
            value: mu,
            reason: "must lie in [0, 1]",
        })
    }
}

/// Rates of the atom's side: (r, η², t̄²/η̄²).
fn side_parameters(mirror: &MirrorSpec, eta: &EtaFactors, side: Side) -> (f64, f64, f64) {
    let (eta2, eta_bar2) = eta.for_side(side);
    let (r, t_bar) = match side {
        Side::A => (mirror.r_a, mirror.t_b),
        Side::B => (mirror.r_b, mirror.t_a),
    };
    (r, eta2, t_bar * t_bar / eta_bar2)
}

/// Distance-independent part `(1 + r²)/η² + t̄²/η̄²`; equals 1 whenever η
/// comes from [`eta_factors`].
pub fn far_field_gamma(mirror: &MirrorSpec, side: Side) -> Result<f64> {
    let eta = eta_factors(mirror)?;
    let (r, eta2, transmitted) = side_parameters(mirror, &eta, side);
    Ok((1.0 + r * r) / eta2 + transmitted)
}

/// Γ_mirr/Γ_free for an atom at `z = 2k₀|x|` on `side`.
pub fn gamma_mirr(mirror: &MirrorSpec, mu: f64, z: f64, side: Side) -> Result<f64> {
    check_mu(mu)?;
    if !(z >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "z",
            value: z,
            reason: "must be non-negative",
        });
    }
    let eta = eta_factors(mirror)?;
    let (r, eta2, transmitted) = side_parameters(mirror, &eta, side);
    let far = (1.0 + r * r) / eta2 + transmitted;
    if r == 0.0 {
        return Ok(far);
    }
    Ok(far - 3.0 * r / eta2 * decay_bracket(z, mu))
}

/// Δ_mirr/Γ_free for an atom at `z = 2k₀|x| > 0` on `side`.
pub fn delta_mirr(mirror: &MirrorSpec, mu: f64, z: f64, side: Side) -> Result<f64> {
    check_mu(mu)?;
    if !(z > 0.0) {
        return Err(Error::ZeroDistance(z));
    }
    let eta = eta_factors(mirror)?;
    let (r, eta2, _) = side_parameters(mirror, &eta, side);
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(1.5 * r / eta2 * shift_bracket(z, mu))
}

/// Both rates through the general formula.
pub fn rates(mirror: &MirrorSpec, mu: f64, z: f64, side: Side) -> Result<RateResult> {
    Ok(RateResult {
        gamma_ratio: gamma_mirr(mirror, mu, z, side)?,
        delta_ratio: delta_mirr(mirror, mu, z, side)?,
        z,
        side,
    })
}

/// Named mirror families with their own closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preset {
    Perfect,
    /// Equal rates on both sides.
    Symmetric {
        r: f64,
        t: f64,
    },
    /// Symmetric and lossless, `t² = 1 − r²`.
    Lossless {
        r: f64,
    },
    Absorbing,
}

impl Preset {
    pub fn mirror(&self) -> MirrorSpec {
        match *self {
            Preset::Perfect => MirrorSpec::perfect(),
            Preset::Symmetric { r, t } => MirrorSpec::symmetric(r, t),
            Preset::Lossless { r } => MirrorSpec::lossless(r),
            Preset::Absorbing => MirrorSpec::absorbing(),
        }
    }

    /// Prefactor `p` of the distance-dependent terms, `Γ = 1 − p·bracket`.
    /// For the symmetric family this is `3r(1 + r² − t²)/((1 + r²)² − t⁴)`.
    pub fn prefactor(&self) -> f64 {
        match *self {
            Preset::Perfect => 1.5,
            Preset::Absorbing => 0.0,
            Preset::Symmetric { r, t } => symmetric_prefactor(r, t),
            Preset::Lossless { r } => {
                let t = (1.0 - r * r).max(0.0).sqrt();
                symmetric_prefactor(r, t)
            }
        }
    }
}

fn symmetric_prefactor(r: f64, t: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let r2 = 1.0 + r * r;
    3.0 * r * (r2 - t * t) / (r2 * r2 - t.powi(4))
}

/// Specialised closed forms. The level shift carries half the decay
/// prefactor, as in the general expression.
pub fn preset_rates(preset: Preset, mu: f64, z: f64) -> Result<RateResult> {
    check_mu(mu)?;
    if let Preset::Symmetric { .. } | Preset::Lossless { .. } = preset {
        preset.mirror().validate()?;
    }
    if !(z > 0.0) {
        return Err(Error::ZeroDistance(z));
    }
    let p = preset.prefactor();
    let (gamma_ratio, delta_ratio) = if p == 0.0 {
        (1.0, 0.0)
    } else {
        (
            1.0 - p * decay_bracket(z, mu),
            0.5 * p * shift_bracket(z, mu),
        )
    };
    Ok(RateResult {
        gamma_ratio,
        delta_ratio,
        z,
        side: Side::A,
    })
}

/// Γ/Γ_free from the preset closed form, allowed at `z = 0`.
pub fn preset_gamma(preset: Preset, mu: f64, z: f64) -> Result<f64> {
    check_mu(mu)?;
    let p = preset.prefactor();
    Ok(if p == 0.0 {
        1.0
    } else {
        1.0 - p * decay_bracket(z, mu)
    })
}
