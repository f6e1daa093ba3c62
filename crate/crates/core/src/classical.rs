//! Classical light scattering by the mirror-image construction.
//!
//! Wave packets always propagate as in free space; the mirror only changes
//! which free-space amplitudes a detector at `x` sees. Reflected
//! contributions are free fields evaluated at the mirrored position with
//! their carrier phase shifted, transmitted ones are free fields at the
//! original position with a shifted phase.
//!
//! Region convention: `x >= 0` belongs to side `a` (so `Θ(0) = 1`) and
//! `x < 0` to side `b`. The left region uses `1 − Θ(x)`, which keeps the
//! free-space preset an identity at `x = 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{GaussianPacket, Medium, MirrorSpec, Side};
use crate::quadrature::simpson_with_coarse;

/// Relative Richardson tolerance for field-energy quadrature.
pub const ENERGY_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample1D {
    pub x: f64,
    pub t: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample3D {
    pub r: [f64; 3],
    pub t: f64,
    #[serde(rename = "E")]
    pub e: [f64; 3],
}

/// Electric and magnetic amplitude pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Field1D {
    pub e: f64,
    pub b: f64,
}

impl std::ops::Add for Field1D {
    type Output = Field1D;
    fn add(self, rhs: Field1D) -> Field1D {
        Field1D {
            e: self.e + rhs.e,
            b: self.b + rhs.b,
        }
    }
}

impl std::ops::AddAssign for Field1D {
    fn add_assign(&mut self, rhs: Field1D) {
        self.e += rhs.e;
        self.b += rhs.b;
    }
}

impl std::ops::Mul<f64> for Field1D {
    type Output = Field1D;
    fn mul(self, s: f64) -> Field1D {
        Field1D {
            e: self.e * s,
            b: self.b * s,
        }
    }
}

/// Free propagation of a Gaussian packet with its carrier phase shifted by
/// `phi`. The envelope is untouched by the shift.
pub fn free_field_1d_shifted(
    packet: &GaussianPacket,
    medium: &Medium,
    x: f64,
    t: f64,
    phi: f64,
) -> Field1D {
    let c = medium.light_speed();
    let dir = packet.direction.sign();
    // E(x, t) = E(x − v t, 0)
    let u = x - dir * c * t;
    let d = (u - packet.x0) / packet.sigma;
    let envelope = (-0.5 * d * d).exp();
    let e = 2.0 * packet.e0 * envelope * (packet.wavenumber() * u + packet.xi_init + phi).cos();
    Field1D { e, b: dir * e / c }
}

/// Freely propagating packet, E and B at (x, t). Valid for any real t.
pub fn free_field_1d(packet: &GaussianPacket, medium: &Medium, x: f64, t: f64) -> Field1D {
    free_field_1d_shifted(packet, medium, x, t, 0.0)
}

/// Sum of free fields of several packets.
pub fn free_sum_1d(packets: &[GaussianPacket], medium: &Medium, x: f64, t: f64) -> Field1D {
    packets.iter().fold(Field1D::default(), |acc, p| {
        acc + free_field_1d(p, medium, x, t)
    })
}

/// One-sided perfect mirror at `x = 0`:
/// `E = [E(x) − E(−x)] Θ(x)`, `B = [B(x) + B(−x)] Θ(x)`.
pub fn mirror_field_1d_perfect(
    packets: &[GaussianPacket],
    medium: &Medium,
    x: f64,
    t: f64,
) -> Field1D {
    if x < 0.0 {
        return Field1D::default();
    }
    let direct = free_sum_1d(packets, medium, x, t);
    let image = free_sum_1d(packets, medium, -x, t);
    Field1D {
        e: direct.e - image.e,
        b: direct.b + image.b,
    }
}

/// A mirror, the packets starting on either side of it, and the medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterScene {
    pub mirror: MirrorSpec,
    #[serde(default)]
    pub packets_a: Vec<GaussianPacket>,
    #[serde(default)]
    pub packets_b: Vec<GaussianPacket>,
    #[serde(default)]
    pub medium: Medium,
}

impl ScatterScene {
    pub fn validated(self) -> Result<Self> {
        self.mirror.validate()?;
        self.medium.validated()?;
        for (packets, side) in [(&self.packets_a, Side::A), (&self.packets_b, Side::B)] {
            for p in packets {
                p.validated()?;
                if p.side != side {
                    return Err(Error::SideMismatch {
                        side: side.label(),
                        x0: p.x0,
                    });
                }
            }
        }
        Ok(self)
    }
}

/// Contributions to the field in one region, split by the side the packets
/// originated from.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SplitField {
    pub from_a: Field1D,
    pub from_b: Field1D,
}

impl SplitField {
    pub fn total(&self) -> Field1D {
        self.from_a + self.from_b
    }
}

/// Reflected copy of a free field: the Maxwell-consistent partner of
/// `E(−x)` is `−B(−x)`.
fn reflected(packets: &[GaussianPacket], medium: &Medium, x: f64, t: f64, phi: f64) -> Field1D {
    let mut f = Field1D::default();
    for p in packets {
        let g = free_field_1d_shifted(p, medium, -x, t, phi);
        f.e += g.e;
        f.b -= g.b;
    }
    f
}

fn transmitted(packets: &[GaussianPacket], medium: &Medium, x: f64, t: f64, phi: f64) -> Field1D {
    packets.iter().fold(Field1D::default(), |acc, p| {
        acc + free_field_1d_shifted(p, medium, x, t, phi)
    })
}

/// The side-`region` expression of the six-term superposition, evaluated
/// at `x` regardless of the sign of `x`. Used to take one-sided limits at
/// the mirror.
pub fn region_field_1d(scene: &ScatterScene, region: Side, x: f64, t: f64) -> Result<SplitField> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let m = &scene.mirror;
    let med = &scene.medium;
    let (a, b) = (&scene.packets_a[..], &scene.packets_b[..]);
    Ok(match region {
        Side::A => SplitField {
            from_a: transmitted(a, med, x, t, 0.0) + reflected(a, med, x, t, m.phi1) * m.r_a,
            from_b: transmitted(b, med, x, t, m.phi2) * m.t_b,
        },
        Side::B => SplitField {
            from_a: transmitted(a, med, x, t, m.phi4) * m.t_a,
            from_b: transmitted(b, med, x, t, 0.0) + reflected(b, med, x, t, m.phi3) * m.r_b,
        },
    })
}

/// Six-term field near a two-sided mirror, split by packet origin.
pub fn mirror_field_1d_split(scene: &ScatterScene, x: f64, t: f64) -> Result<SplitField> {
    region_field_1d(scene, Side::of_position(x), x, t)
}

/// Six-term field near a two-sided mirror. Rejects `t < 0`.
pub fn mirror_field_1d(scene: &ScatterScene, x: f64, t: f64) -> Result<FieldSample1D> {
    let f = mirror_field_1d_split(scene, x, t)?.total();
    Ok(FieldSample1D {
        x,
        t,
        e: f.e,
        b: f.b,
    })
}

/// One row of a frame series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRow {
    pub t: f64,
    pub x: f64,
    pub e_total: f64,
    pub e_side_a: f64,
    pub e_side_b: f64,
}

/// Evaluate the scene on every (t, x), row-major by time then position.
/// Points are evaluated in parallel; the output order never depends on it.
pub fn frame_series(scene: &ScatterScene, times: &[f64], xs: &[f64]) -> Result<Vec<FrameRow>> {
    if let Some(&t) = times.iter().find(|&&t| t < 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let points: Vec<(f64, f64)> = times
        .iter()
        .flat_map(|&t| xs.iter().map(move |&x| (t, x)))
        .collect();
    points
        .par_iter()
        .map(|&(t, x)| {
            let s = mirror_field_1d_split(scene, x, t)?;
            Ok(FrameRow {
                t,
                x,
                e_total: s.from_a.e + s.from_b.e,
                e_side_a: s.from_a.e,
                e_side_b: s.from_b.e,
            })
        })
        .collect()
}

/// `(A/2) ∫ [ε E² + B²/μ_p] dx` over uniformly spaced samples by composite
/// Simpson. The samples must be sorted in `x`, equally spaced, and number
/// `4m + 1` so the rule can be compared against itself at twice the step.
pub fn field_energy_1d(samples: &[FieldSample1D], medium: &Medium, area: f64) -> Result<f64> {
    let density: Vec<f64> = samples
        .iter()
        .map(|s| medium.permittivity * s.e * s.e + s.b * s.b / medium.permeability)
        .collect();
    let n = samples.len();
    if n < 5 {
        return Err(Error::GridTooCoarse {
            deviation: f64::INFINITY,
            tolerance: ENERGY_REL_TOL,
        });
    }
    let h = (samples[n - 1].x - samples[0].x) / (n - 1) as f64;
    let (fine, coarse) = simpson_with_coarse(&density, h).ok_or(Error::GridTooCoarse {
        deviation: f64::INFINITY,
        tolerance: ENERGY_REL_TOL,
    })?;
    let deviation = relative_gap(fine, coarse);
    if deviation > ENERGY_REL_TOL {
        return Err(Error::GridTooCoarse {
            deviation,
            tolerance: ENERGY_REL_TOL,
        });
    }
    Ok(0.5 * area * fine)
}

fn relative_gap(fine: f64, coarse: f64) -> f64 {
    let scale = fine.abs().max(f64::MIN_POSITIVE);
    if fine == coarse {
        0.0
    } else {
        (fine - coarse).abs() / scale
    }
}

/// Energy of `field(x)` on `[lo, hi]`, halving the step until Simpson at
/// `h` and `2h` agree to `rel_tol`.
pub fn energy_on_interval<F>(
    field: F,
    medium: &Medium,
    area: f64,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Field1D> + Sync,
{
    const MAX_PANELS: usize = 1 << 20;
    let mut panels = 256usize;
    let mut last_dev = f64::INFINITY;
    while panels <= MAX_PANELS {
        let h = (hi - lo) / panels as f64;
        let density: Vec<f64> = (0..=panels)
            .into_par_iter()
            .map(|i| {
                let x = if i == panels { hi } else { lo + i as f64 * h };
                let f = field(x)?;
                Ok(medium.permittivity * f.e * f.e + f.b * f.b / medium.permeability)
            })
            .collect::<Result<_>>()?;
        let (fine, coarse) = simpson_with_coarse(&density, h).expect("panel count is 4m");
        last_dev = relative_gap(fine, coarse);
        if last_dev <= rel_tol || fine == 0.0 {
            return Ok(0.5 * area * fine);
        }
        panels *= 2;
    }
    Err(Error::GridTooCoarse {
        deviation: last_dev,
        tolerance: rel_tol,
    })
}

/// Field energy of the scene at time `t` on `[−half_width, half_width]`,
/// integrating each region separately so the jump at the mirror never
/// falls inside a Simpson panel.
pub fn scene_energy(scene: &ScatterScene, t: f64, half_width: f64, area: f64) -> Result<f64> {
    let (right, left) = scene_energy_by_region(scene, t, half_width, area)?;
    Ok(right + left)
}

/// (energy on x ≥ 0, energy on x < 0).
pub fn scene_energy_by_region(
    scene: &ScatterScene,
    t: f64,
    half_width: f64,
    area: f64,
) -> Result<(f64, f64)> {
    let med = &scene.medium;
    let right = energy_on_interval(
        |x| Ok(region_field_1d(scene, Side::A, x, t)?.total()),
        med,
        area,
        0.0,
        half_width,
        ENERGY_REL_TOL,
    )?;
    let left = energy_on_interval(
        |x| Ok(region_field_1d(scene, Side::B, x, t)?.total()),
        med,
        area,
        -half_width,
        0.0,
        ENERGY_REL_TOL,
    )?;
    Ok((right, left))
}

/// Outgoing intensities for one frequency component of two packets meeting
/// at the mirror: `I_right = |r_a E₀ᵃ + t_b E₀ᵇ e^{i(ξ₂−ξ₁+φ₂−φ₁)}|²` and
/// `I_left = |t_a E₀ᵃ + r_b E₀ᵇ e^{i(ξ₂−ξ₁+φ₃−φ₄)}|²`.
pub fn interference_intensities(
    spec: &MirrorSpec,
    e0_a: f64,
    e0_b: f64,
    xi1: f64,
    xi2: f64,
) -> (f64, f64) {
    let dxi = xi2 - xi1;
    let right =
        spec.r_a * e0_a + spec.t_b * e0_b * Complex64::from_polar(1.0, dxi + spec.phi2 - spec.phi1);
    let left =
        spec.t_a * e0_a + spec.r_b * e0_b * Complex64::from_polar(1.0, dxi + spec.phi3 - spec.phi4);
    (right.norm_sqr(), left.norm_sqr())
}

/// Plane-wave pulse in three dimensions: a Gaussian envelope along the
/// propagation direction, unbounded transversely. This is an exact
/// free-space solution with `E ⊥ k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanePulse {
    pub e0: f64,
    pub center: [f64; 3],
    pub sigma: f64,
    /// Carrier wave vector; its direction is the direction of travel.
    pub wavevector: [f64; 3],
    /// Polarisation; normalised on use and required to be orthogonal to
    /// the wave vector.
    pub polarisation: [f64; 3],
    pub side: Side,
    #[serde(default)]
    pub xi_init: f64,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

impl PlanePulse {
    pub fn validated(self) -> Result<Self> {
        let k = norm(&self.wavevector);
        let p = norm(&self.polarisation);
        if !(self.sigma > 0.0) {
            return Err(Error::InvalidParameter {
                field: "sigma",
                value: self.sigma,
                reason: "must be positive",
            });
        }
        if !(k > 0.0) {
            return Err(Error::InvalidParameter {
                field: "wavevector",
                value: k,
                reason: "must be non-zero",
            });
        }
        if !(p > 0.0) {
            return Err(Error::InvalidParameter {
                field: "polarisation",
                value: p,
                reason: "must be non-zero",
            });
        }
        let overlap = dot(&self.wavevector, &self.polarisation) / (k * p);
        if overlap.abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                field: "polarisation",
                value: overlap,
                reason: "must be orthogonal to the wave vector",
            });
        }
        if Side::of_position(self.center[0]) != self.side {
            return Err(Error::SideMismatch {
                side: self.side.label(),
                x0: self.center[0],
            });
        }
        Ok(self)
    }

    /// Free field at (r, t) with the carrier phase shifted by `phi`.
    pub fn field(&self, medium: &Medium, r: &[f64; 3], t: f64, phi: f64) -> [f64; 3] {
        let c = medium.light_speed();
        let k = norm(&self.wavevector);
        let khat = [
            self.wavevector[0] / k,
            self.wavevector[1] / k,
            self.wavevector[2] / k,
        ];
        let p = norm(&self.polarisation);
        // u is the coordinate along the direction of travel in the co-moving frame
        let u = dot(&khat, r) - c * t;
        let u0 = dot(&khat, &self.center);
        let d = (u - u0) / self.sigma;
        let amplitude = 2.0 * self.e0 * (-0.5 * d * d).exp() * (k * u + self.xi_init + phi).cos();
        [
            amplitude * self.polarisation[0] / p,
            amplitude * self.polarisation[1] / p,
            amplitude * self.polarisation[2] / p,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterScene3D {
    pub mirror: MirrorSpec,
    #[serde(default)]
    pub pulses_a: Vec<PlanePulse>,
    #[serde(default)]
    pub pulses_b: Vec<PlanePulse>,
    #[serde(default)]
    pub medium: Medium,
}

impl ScatterScene3D {
    pub fn validated(self) -> Result<Self> {
        self.mirror.validate()?;
        self.medium.validated()?;
        for (pulses, side) in [(&self.pulses_a, Side::A), (&self.pulses_b, Side::B)] {
            for p in pulses {
                p.validated()?;
                if p.side != side {
                    return Err(Error::SideMismatch {
                        side: side.label(),
                        x0: p.center[0],
                    });
                }
            }
        }
        Ok(self)
    }
}

fn accumulate(acc: &mut [f64; 3], v: [f64; 3], w: f64) {
    for i in 0..3 {
        acc[i] += w * v[i];
    }
}

/// Six-term field near a two-sided mirror in three dimensions. Reflected
/// contributions are evaluated at r̃ = (−x, y, z) with the sign of their
/// x-component flipped.
pub fn mirror_field_3d(scene: &ScatterScene3D, r: [f64; 3], t: f64) -> Result<FieldSample3D> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let m = &scene.mirror;
    let med = &scene.medium;
    let mirrored = [-r[0], r[1], r[2]];
    let flip_x = |v: [f64; 3]| [-v[0], v[1], v[2]];
    let mut e = [0.0; 3];
    match Side::of_position(r[0]) {
        Side::A => {
            for p in &scene.pulses_a {
                accumulate(&mut e, p.field(med, &r, t, 0.0), 1.0);
                accumulate(&mut e, flip_x(p.field(med, &mirrored, t, m.phi1)), m.r_a);
            }
            for p in &scene.pulses_b {
                accumulate(&mut e, p.field(med, &r, t, m.phi2), m.t_b);
            }
        }
        Side::B => {
            for p in &scene.pulses_b {
                accumulate(&mut e, p.field(med, &r, t, 0.0), 1.0);
                accumulate(&mut e, flip_x(p.field(med, &mirrored, t, m.phi3)), m.r_b);
            }
            for p in &scene.pulses_a {
                accumulate(&mut e, p.field(med, &r, t, m.phi4), m.t_a);
            }
        }
    }
    Ok(FieldSample3D { r, t, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Direction;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn left_mover(x0: f64) -> GaussianPacket {
        GaussianPacket {
            e0: 1.0,
            x0,
            sigma: 1.0,
            k0_carrier: 5.0,
            side: Side::A,
            direction: Direction::Left,
            xi_init: 0.0,
        }
    }

    #[test]
    fn free_field_translates() {
        let med = Medium::normalized();
        let p = GaussianPacket {
            direction: Direction::Right,
            ..left_mover(3.0)
        };
        let t = 2.5;
        let f = free_field_1d(&p, &med, p.x0 + t, t);
        // envelope is 1 at the moving centre
        assert_relative_eq!(f.e, 2.0 * (5.0f64 * 3.0).cos(), epsilon = 1e-14);
        assert_eq!(f.b, f.e);
        let far = free_field_1d(&p, &med, p.x0 + t + 10.0, t);
        assert!(far.e.abs() < (-50.0f64).exp() * 2.0);
    }

    #[test]
    fn left_mover_b_sign() {
        let med = Medium::new(4.0, 1.0).unwrap();
        let p = left_mover(2.0);
        let f = free_field_1d(&p, &med, 1.7, 0.3);
        assert_relative_eq!(f.b, -f.e / med.light_speed(), epsilon = 1e-15);
    }

    #[test]
    fn perfect_mirror_node_and_left_region() {
        let med = Medium::normalized();
        let packets = [left_mover(4.0), left_mover(7.0)];
        for i in 0..50 {
            let t = i as f64 * 0.3;
            assert_eq!(mirror_field_1d_perfect(&packets, &med, 0.0, t).e, 0.0);
            let left = mirror_field_1d_perfect(&packets, &med, -0.5, t);
            assert_eq!(left, Field1D::default());
        }
    }

    #[test]
    fn perfect_mirror_reflection_negates_amplitude() {
        // after the packet bounces it is a right mover with flipped sign
        let med = Medium::normalized();
        let p = left_mover(10.0);
        let t = 20.0;
        for x in [8.0, 9.5, 10.0, 10.3, 12.0] {
            let f = mirror_field_1d_perfect(&[p], &med, x, t);
            let expected = -free_field_1d(&p, &med, -x, t).e;
            assert_relative_eq!(f.e, expected, epsilon = 1e-12);
            // the image is a right mover at the mirrored centre
            let image = GaussianPacket {
                x0: -p.x0,
                direction: Direction::Right,
                xi_init: PI,
                side: Side::B,
                ..p
            };
            assert_relative_eq!(f.e, free_field_1d(&image, &med, x, t).e, epsilon = 1e-12);
        }
    }

    #[test]
    fn negative_time_rejected() {
        let scene = ScatterScene {
            mirror: MirrorSpec::perfect(),
            packets_a: vec![left_mover(5.0)],
            packets_b: vec![],
            medium: Medium::normalized(),
        };
        assert_eq!(
            mirror_field_1d(&scene, 1.0, -0.1),
            Err(Error::NegativeTime(-0.1))
        );
        let s3 = ScatterScene3D {
            mirror: MirrorSpec::perfect(),
            pulses_a: vec![],
            pulses_b: vec![],
            medium: Medium::normalized(),
        };
        assert!(matches!(
            mirror_field_3d(&s3, [1.0, 0.0, 0.0], -1.0),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn interference_single_input_and_perfect() {
        let m = MirrorSpec {
            t_a: 0.6,
            t_b: 0.5,
            r_a: 0.7,
            r_b: 0.4,
            phi1: PI,
            phi2: 0.0,
            phi3: 0.0,
            phi4: 0.0,
        };
        let (ir, il) = interference_intensities(&m, 2.0, 0.0, 0.3, 1.1);
        assert_relative_eq!(ir, 0.49 * 4.0, epsilon = 1e-14);
        assert_relative_eq!(il, 0.36 * 4.0, epsilon = 1e-14);
        let (ir, il) = interference_intensities(&MirrorSpec::perfect(), 1.5, 0.5, 0.2, 2.0);
        assert_relative_eq!(ir, 2.25, epsilon = 1e-14);
        assert_relative_eq!(il, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn energy_rejects_bad_grids() {
        let med = Medium::normalized();
        let few: Vec<FieldSample1D> = (0..4)
            .map(|i| FieldSample1D {
                x: i as f64,
                t: 0.0,
                e: 1.0,
                b: 0.0,
            })
            .collect();
        assert!(matches!(
            field_energy_1d(&few, &med, 1.0),
            Err(Error::GridTooCoarse { .. })
        ));
        // a packet sampled with two points per carrier period
        let p = left_mover(0.0);
        let coarse: Vec<FieldSample1D> = (0..=16)
            .map(|i| {
                let x = -8.0 + i as f64;
                let f = free_field_1d(&p, &med, x, 0.0);
                FieldSample1D {
                    x,
                    t: 0.0,
                    e: f.e,
                    b: f.b,
                }
            })
            .collect();
        assert!(matches!(
            field_energy_1d(&coarse, &med, 1.0),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn plane_pulse_validation() {
        let p = PlanePulse {
            e0: 1.0,
            center: [5.0, 0.0, 0.0],
            sigma: 1.0,
            wavevector: [-3.0, 4.0, 0.0],
            polarisation: [4.0, 3.0, 0.0],
            side: Side::A,
            xi_init: 0.0,
        };
        assert!(p.validated().is_ok());
        let bad = PlanePulse {
            polarisation: [1.0, 0.0, 0.0],
            ..p
        };
        assert!(bad.validated().is_err());
        // E ⊥ k at every point
        let med = Medium::normalized();
        let e = p.field(&med, &[1.0, 2.0, 3.0], 0.5, 0.3);
        assert!(dot(&e, &p.wavevector).abs() < 1e-14);
    }
}
