//! Parameter records shared by every other module: the medium, the mirror,
//! the atom and the classical wave packets.
//!
//! All records are plain immutable values. Physical constants are supplied
//! by the caller; the library never assumes SI.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Homogeneous medium on both sides of the mirror.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Medium {
    pub permittivity: f64,
    pub permeability: f64,
}

impl Medium {
    pub fn new(permittivity: f64, permeability: f64) -> Result<Self> {
        Medium {
            permittivity,
            permeability,
        }
        .validated()
    }

    /// ε = μ_p = 1, so c = 1.
    pub fn normalized() -> Self {
        Medium {
            permittivity: 1.0,
            permeability: 1.0,
        }
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.permittivity > 0.0 && self.permittivity.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "permittivity",
                value: self.permittivity,
                reason: "must be positive",
            });
        }
        if !(self.permeability > 0.0 && self.permeability.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "permeability",
                value: self.permeability,
                reason: "must be positive",
            });
        }
        Ok(self)
    }

    /// c = 1/√(εμ_p), derived on every call.
    pub fn light_speed(&self) -> f64 {
        1.0 / (self.permittivity * self.permeability).sqrt()
    }
}

impl Default for Medium {
    fn default() -> Self {
        Medium::normalized()
    }
}

/// Which half-space a wave packet or atom starts in. Side `a` is `x >= 0`,
/// side `b` is `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn of_position(x: f64) -> Side {
        if x >= 0.0 {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn label(self) -> char {
        match self {
            Side::A => 'a',
            Side::B => 'b',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    /// +1 for right movers, −1 for left movers.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        }
    }
}

/// Two-sided mirror: real transmission and reflection rates for light
/// arriving from the right (`a`) and from the left (`b`), plus the four
/// surface phases. `phi1`/`phi2` act on the right-hand side, `phi3`/`phi4`
/// on the left-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirrorSpec {
    pub t_a: f64,
    pub t_b: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub phi4: f64,
}

impl MirrorSpec {
    /// r = 1, t = 0 on both sides, φ₁ = φ₃ = π.
    pub fn perfect() -> Self {
        MirrorSpec {
            t_a: 0.0,
            t_b: 0.0,
            r_a: 1.0,
            r_b: 1.0,
            phi1: PI,
            phi2: 0.0,
            phi3: PI,
            phi4: 0.0,
        }
    }

    /// r = 0, t = 1 on both sides, all phases zero.
    pub fn free_space() -> Self {
        MirrorSpec {
            t_a: 1.0,
            t_b: 1.0,
            r_a: 0.0,
            r_b: 0.0,
            phi1: 0.0,
            phi2: 0.0,
            phi3: 0.0,
            phi4: 0.0,
        }
    }

    /// r = t = 0: everything arriving at the surface is absorbed.
    pub fn absorbing() -> Self {
        MirrorSpec {
            t_a: 0.0,
            t_b: 0.0,
            r_a: 0.0,
            r_b: 0.0,
            phi1: PI,
            phi2: 0.0,
            phi3: PI,
            phi4: 0.0,
        }
    }

    /// Equal rates on both sides with phases (π, 0, 0, 0), which satisfies
    /// the interference constraint.
    pub fn symmetric(r: f64, t: f64) -> Self {
        MirrorSpec {
            t_a: t,
            t_b: t,
            r_a: r,
            r_b: r,
            phi1: PI,
            phi2: 0.0,
            phi3: 0.0,
            phi4: 0.0,
        }
    }

    /// Symmetric mirror without absorption, t² = 1 − r².
    pub fn lossless(r: f64) -> Self {
        MirrorSpec::symmetric(r, (1.0 - r * r).max(0.0).sqrt())
    }

    /// Same mirror seen from the other side (a ↔ b). The phases move with
    /// their side: (φ₁, φ₂) ↔ (φ₃, φ₄).
    pub fn swapped(&self) -> Self {
        MirrorSpec {
            t_a: self.t_b,
            t_b: self.t_a,
            r_a: self.r_b,
            r_b: self.r_a,
            phi1: self.phi3,
            phi2: self.phi4,
            phi3: self.phi1,
            phi4: self.phi2,
        }
    }

    /// (reflection, transmission) for light arriving from `side`.
    pub fn rates(&self, side: Side) -> (f64, f64) {
        match side {
            Side::A => (self.r_a, self.t_a),
            Side::B => (self.r_b, self.t_b),
        }
    }

    pub fn validate(self) -> Result<Self> {
        validate_mirror(self)
    }
}

pub fn validate_mirror(spec: MirrorSpec) -> Result<MirrorSpec> {
    let rates = [
        ("t_a", spec.t_a),
        ("t_b", spec.t_b),
        ("r_a", spec.r_a),
        ("r_b", spec.r_b),
    ];
    for (field, value) in rates {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::RateOutOfRange { field, value });
        }
    }
    let phases = [
        ("phi1", spec.phi1),
        ("phi2", spec.phi2),
        ("phi3", spec.phi3),
        ("phi4", spec.phi4),
    ];
    for (field, value) in phases {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                field,
                value,
                reason: "phase must be finite",
            });
        }
    }
    for side in [Side::A, Side::B] {
        let (r, t) = spec.rates(side);
        let sum = t * t + r * r;
        // one ulp of slack so that lossless presets built from √(1 − r²) pass
        if sum > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::AbsorptionViolation {
                side: side.label(),
                sum,
            });
        }
    }
    Ok(spec)
}

/// Outcome of the interference-phase check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PhaseCheck {
    /// φ₁ − φ₂ + φ₃ − φ₄ = ±(2n + 1)π within tolerance.
    Satisfied {
        n: i64,
        residual: f64,
    },
    Violated {
        residual: f64,
    },
    /// One of the interfering amplitudes is absent (t_a·t_b = 0 or
    /// r_a·r_b = 0), so the constraint carries no information.
    NotApplicable,
}

impl PhaseCheck {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, PhaseCheck::Satisfied { .. })
    }
}

/// Distance of φ₁ − φ₂ + φ₃ − φ₄ from the nearest odd multiple of π.
pub fn phase_residual(spec: &MirrorSpec) -> f64 {
    let sum = spec.phi1 - spec.phi2 + spec.phi3 - spec.phi4;
    // wrap (sum − π) into (−π, π]
    let mut d = (sum - PI).rem_euclid(TAU);
    if d > PI {
        d -= TAU;
    }
    d.abs()
}

pub fn phase_constraint_check(spec: &MirrorSpec, tol: f64) -> PhaseCheck {
    if spec.t_a * spec.t_b == 0.0 || spec.r_a * spec.r_b == 0.0 {
        return PhaseCheck::NotApplicable;
    }
    let residual = phase_residual(spec);
    if residual <= tol {
        let sum = spec.phi1 - spec.phi2 + spec.phi3 - spec.phi4;
        let n = ((sum.abs() / PI - 1.0) / 2.0).round() as i64;
        PhaseCheck::Satisfied { n, residual }
    } else {
        PhaseCheck::Violated { residual }
    }
}

/// Two-level atom: transition frequency, dipole, orientation and position,
/// together with the caller's values of the electron charge and ħ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub omega0: f64,
    pub dipole_norm: f64,
    /// |D̂₁₂·x̂|²: 0 for a dipole parallel to the mirror, 1 for perpendicular.
    pub mu_orient: f64,
    /// Signed distance from the mirror plane.
    pub x: f64,
    pub charge: f64,
    pub hbar: f64,
}

impl AtomSpec {
    pub fn validated(self) -> Result<Self> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "omega0",
                value: self.omega0,
                reason: "must be positive",
            });
        }
        if !(0.0..=1.0).contains(&self.mu_orient) {
            return Err(Error::InvalidParameter {
                field: "mu_orient",
                value: self.mu_orient,
                reason: "must lie in [0, 1]",
            });
        }
        for (field, value) in [
            ("dipole_norm", self.dipole_norm),
            ("charge", self.charge),
            ("hbar", self.hbar),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "must be positive",
                });
            }
        }
        if !self.x.is_finite() {
            return Err(Error::InvalidParameter {
                field: "x",
                value: self.x,
                reason: "must be finite",
            });
        }
        Ok(self)
    }

    /// k₀ = ω₀/c.
    pub fn k0(&self, medium: &Medium) -> f64 {
        self.omega0 / medium.light_speed()
    }

    pub fn side(&self) -> Side {
        Side::of_position(self.x)
    }

    /// z = 2k₀|x|.
    pub fn z(&self, medium: &Medium) -> f64 {
        2.0 * self.k0(medium) * self.x.abs()
    }
}

/// One-dimensional Gaussian wave packet,
/// `E(x, 0) = 2 E₀ exp(−(x − x₀)²/2σ²) cos(k x + ξ)`, with `k = ±k0_carrier`
/// signed by the direction of travel. `sigma` is the width of the field
/// amplitude, not of the intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianPacket {
    pub e0: f64,
    pub x0: f64,
    pub sigma: f64,
    /// Carrier wavenumber magnitude; the sign comes from `direction`.
    pub k0_carrier: f64,
    pub side: Side,
    pub direction: Direction,
    #[serde(default)]
    pub xi_init: f64,
}

impl GaussianPacket {
    pub fn validated(self) -> Result<Self> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "sigma",
                value: self.sigma,
                reason: "must be positive",
            });
        }
        for (field, value) in [
            ("e0", self.e0),
            ("x0", self.x0),
            ("k0_carrier", self.k0_carrier),
            ("xi_init", self.xi_init),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if Side::of_position(self.x0) != self.side {
            return Err(Error::SideMismatch {
                side: self.side.label(),
                x0: self.x0,
            });
        }
        Ok(self)
    }

    /// Signed carrier wavenumber.
    pub fn wavenumber(&self) -> f64 {
        self.direction.sign() * self.k0_carrier.abs()
    }

    /// Soft support check: the centre sits at least 3σ inside its half-space.
    pub fn is_well_localised(&self) -> bool {
        let inside = match self.side {
            Side::A => self.x0,
            Side::B => -self.x0,
        };
        inside >= 3.0 * self.sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        assert!(validate_mirror(MirrorSpec::perfect()).is_ok());
        assert!(validate_mirror(MirrorSpec::free_space()).is_ok());
        assert!(validate_mirror(MirrorSpec::absorbing()).is_ok());
        for r in [0.0, 0.3, 0.5, 1.0 / 2f64.sqrt(), 0.9, 1.0] {
            assert!(validate_mirror(MirrorSpec::lossless(r)).is_ok(), "r = {r}");
        }
    }

    #[test]
    fn absorption_violation() {
        let m = MirrorSpec::symmetric(0.9, 0.9);
        assert!(matches!(
            validate_mirror(m),
            Err(Error::AbsorptionViolation { side: 'a', .. })
        ));
    }

    #[test]
    fn rate_out_of_range() {
        let m = MirrorSpec {
            r_b: -0.1,
            ..MirrorSpec::perfect()
        };
        assert_eq!(
            validate_mirror(m),
            Err(Error::RateOutOfRange {
                field: "r_b",
                value: -0.1
            })
        );
        let m = MirrorSpec {
            t_a: 1.5,
            ..MirrorSpec::free_space()
        };
        assert!(matches!(
            validate_mirror(m),
            Err(Error::RateOutOfRange { field: "t_a", .. })
        ));
    }

    fn with_phases(p: [f64; 4]) -> MirrorSpec {
        MirrorSpec {
            phi1: p[0],
            phi2: p[1],
            phi3: p[2],
            phi4: p[3],
            ..MirrorSpec::lossless(0.5)
        }
    }

    #[test]
    fn phase_constraint_examples() {
        let ok = phase_constraint_check(&with_phases([PI, 0.0, 0.0, 0.0]), 1e-12);
        assert!(matches!(ok, PhaseCheck::Satisfied { n: 0, .. }));

        match phase_constraint_check(&with_phases([0.0; 4]), 1e-12) {
            PhaseCheck::Violated { residual } => assert!((residual - PI).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        match phase_constraint_check(&with_phases([PI, 0.0, PI, 0.0]), 1e-12) {
            PhaseCheck::Violated { residual } => assert!((residual - PI).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let three_pi = phase_constraint_check(&with_phases([3.0 * PI, 0.0, 0.0, 0.0]), 1e-12);
        assert!(matches!(three_pi, PhaseCheck::Satisfied { n: 1, .. }));
        let minus_pi = phase_constraint_check(&with_phases([0.0, PI, 0.0, 0.0]), 1e-12);
        assert!(minus_pi.is_satisfied());
    }

    #[test]
    fn phase_check_not_applicable_without_interference() {
        assert_eq!(
            phase_constraint_check(&MirrorSpec::perfect(), 1e-9),
            PhaseCheck::NotApplicable
        );
        assert_eq!(
            phase_constraint_check(&MirrorSpec::free_space(), 1e-9),
            PhaseCheck::NotApplicable
        );
    }

    #[test]
    fn swapped_is_involution() {
        let m = MirrorSpec {
            t_a: 0.1,
            t_b: 0.2,
            r_a: 0.3,
            r_b: 0.4,
            phi1: 1.0,
            phi2: 2.0,
            phi3: 3.0,
            phi4: 4.0,
        };
        assert_eq!(m.swapped().swapped(), m);
        assert_eq!(m.swapped().rates(Side::A), m.rates(Side::B));
    }

    #[test]
    fn packet_side_must_match_centre() {
        let p = GaussianPacket {
            e0: 1.0,
            x0: -2.0,
            sigma: 0.5,
            k0_carrier: 4.0,
            side: Side::A,
            direction: Direction::Left,
            xi_init: 0.0,
        };
        assert!(matches!(p.validated(), Err(Error::SideMismatch { .. })));
        let p = GaussianPacket { x0: 2.0, ..p };
        assert!(p.validated().is_ok());
        assert!(p.is_well_localised());
        assert_eq!(p.wavenumber(), -4.0);
    }

    #[test]
    fn medium_light_speed() {
        let m = Medium::new(4.0, 0.25).unwrap();
        assert_eq!(m.light_speed(), 1.0);
        let m = Medium::new(2.0, 8.0).unwrap();
        assert_eq!(m.light_speed(), 0.25);
        assert!(Medium::new(0.0, 1.0).is_err());
        assert!(Medium::new(1.0, -1.0).is_err());
    }

    #[test]
    fn json_field_names() {
        let json = serde_json::to_value(MirrorSpec::perfect()).unwrap();
        for key in ["t_a", "t_b", "r_a", "r_b", "phi1", "phi2", "phi3", "phi4"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        let bad =
            r#"{"t_a":0,"t_b":0,"r_a":1,"r_b":1,"phi1":0,"phi2":0,"phi3":0,"phi4":0,"extra":1}"#;
        assert!(serde_json::from_str::<MirrorSpec>(bad).is_err());
    }
}
