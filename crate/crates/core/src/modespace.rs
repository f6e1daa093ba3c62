//! Discretised wavenumber modes with coherent amplitudes.
//!
//! Every operator statement about the quantised field is exercised through
//! expectation values in coherent states, which are classical functionals
//! of the complex amplitudes `α_k`. Integrals over `k` become Riemann sums
//! on a symmetric grid that excludes `k = 0`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{GaussianPacket, Medium, Side};
use crate::quadrature::compensated_sum;

/// Modes per sign in the default grid (2¹² modes in total).
pub const DEFAULT_MODES_PER_SIDE: usize = 2048;
/// Default grid half-width in packet bandwidths `1/σ` beyond the carrier.
pub const DEFAULT_BANDWIDTHS: f64 = 8.0;
/// Required coverage of a packet's spectrum, in bandwidths either side of
/// the carrier.
pub const COVERAGE_BANDWIDTHS: f64 = 6.0;

/// Uniform symmetric grid `{−K, …, −Δk, Δk, …, K}` stored in ascending
/// order, with the quantisation area `A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    modes_per_side: usize,
    dk: f64,
    area: f64,
}

impl ModeGrid {
    pub fn symmetric(modes_per_side: usize, k_max: f64, area: f64) -> Result<Self> {
        if modes_per_side == 0 {
            return Err(Error::InvalidParameter {
                field: "modes_per_side",
                value: 0.0,
                reason: "grid needs at least one mode per sign",
            });
        }
        if !(k_max > 0.0 && k_max.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "k_max",
                value: k_max,
                reason: "must be positive",
            });
        }
        if !(area > 0.0 && area.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "area",
                value: area,
                reason: "must be positive",
            });
        }
        Ok(ModeGrid {
            modes_per_side,
            dk: k_max / modes_per_side as f64,
            area,
        })
    }

    /// 2¹² modes reaching `DEFAULT_BANDWIDTHS / σ` past the carrier.
    pub fn default_for(packet: &GaussianPacket, area: f64) -> Result<Self> {
        let k_max = packet.k0_carrier.abs() + DEFAULT_BANDWIDTHS / packet.sigma;
        ModeGrid::symmetric(DEFAULT_MODES_PER_SIDE, k_max, area)
    }

    pub fn len(&self) -> usize {
        2 * self.modes_per_side
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn modes_per_side(&self) -> usize {
        self.modes_per_side
    }

    pub fn dk(&self) -> f64 {
        self.dk
    }

    pub fn k_max(&self) -> f64 {
        self.dk * self.modes_per_side as f64
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Spatial period `2π/Δk` of every field built on this grid.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.dk
    }

    /// Wavenumber at storage index `i`.
    pub fn k(&self, i: usize) -> f64 {
        let n = self.modes_per_side;
        if i < n {
            -((n - i) as f64) * self.dk
        } else {
            (i - n + 1) as f64 * self.dk
        }
    }

    pub fn ks(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.k(i))
    }

    /// Storage index of `−k` for the mode at index `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    /// Storage index of `+jΔk`, `j = 1..=modes_per_side`.
    pub fn positive_index(&self, j: usize) -> usize {
        self.modes_per_side + j - 1
    }

    /// Storage index of `−jΔk`.
    pub fn negative_index(&self, j: usize) -> usize {
        self.modes_per_side - j
    }
}

/// Coherent amplitudes for the two Hilbert-space copies, aligned with the
/// grid's storage order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeAmplitudes {
    pub alpha_a: Vec<Complex64>,
    pub alpha_b: Vec<Complex64>,
}

impl ModeAmplitudes {
    pub fn vacuum(grid: &ModeGrid) -> Self {
        ModeAmplitudes {
            alpha_a: vec![Complex64::new(0.0, 0.0); grid.len()],
            alpha_b: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn is_one_sided(&self) -> bool {
        self.alpha_b.iter().all(|a| a.norm_sqr() == 0.0)
    }

    pub fn scaled(&self, s: f64) -> Self {
        ModeAmplitudes {
            alpha_a: self.alpha_a.iter().map(|a| a * s).collect(),
            alpha_b: self.alpha_b.iter().map(|a| a * s).collect(),
        }
    }

    /// Elementwise sum; both sets must live on the same grid.
    pub fn superposed(&self, other: &ModeAmplitudes) -> Self {
        ModeAmplitudes {
            alpha_a: self
                .alpha_a
                .iter()
                .zip(&other.alpha_a)
                .map(|(x, y)| x + y)
                .collect(),
            alpha_b: self
                .alpha_b
                .iter()
                .zip(&other.alpha_b)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

/// Antisymmetric standing-wave amplitudes `ξ_k = (α_k − α_{−k})/√2` for
/// `k = jΔk`, `j = 1..=modes_per_side`. `ξ_{−k} = −ξ_k` is implied.
pub fn xi_transform(alpha: &[Complex64], grid: &ModeGrid) -> Vec<Complex64> {
    (1..=grid.modes_per_side())
        .map(|j| (alpha[grid.positive_index(j)] - alpha[grid.negative_index(j)]) / SQRT_2)
        .collect()
}

/// Symmetric partner `(α_k + α_{−k})/√2` of the ξ modes.
pub fn symmetric_transform(alpha: &[Complex64], grid: &ModeGrid) -> Vec<Complex64> {
    (1..=grid.modes_per_side())
        .map(|j| (alpha[grid.positive_index(j)] + alpha[grid.negative_index(j)]) / SQRT_2)
        .collect()
}

/// A mode grid together with the medium and ħ that fix the field
/// normalisation `√(ħω/πεA)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpace {
    pub grid: ModeGrid,
    pub medium: Medium,
    pub hbar: f64,
}

impl ModeSpace {
    pub fn new(grid: ModeGrid, medium: Medium, hbar: f64) -> Result<Self> {
        medium.validated()?;
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "hbar",
                value: hbar,
                reason: "must be positive",
            });
        }
        Ok(ModeSpace { grid, medium, hbar })
    }

    pub fn omega(&self, k: f64) -> f64 {
        k.abs() * self.medium.light_speed()
    }

    /// Field amplitude per unit coherent amplitude, `√(ħω/πεA)`.
    pub fn coupling(&self, k: f64) -> f64 {
        (self.hbar * self.omega(k) / (PI * self.medium.permittivity * self.grid.area())).sqrt()
    }

    /// Coherent amplitudes whose field expectation reproduces the packet at
    /// `t = 0`. Only modes travelling in the packet's direction are
    /// populated; the opposite-sign spectral tail is below `e^{−18}` under
    /// the coverage precondition.
    pub fn packet_to_amplitudes(&self, packet: &GaussianPacket) -> Result<ModeAmplitudes> {
        let packet = packet.validated()?;
        let k0 = packet.wavenumber();
        let half_band = COVERAGE_BANDWIDTHS / packet.sigma;
        let (k_lo, k_hi) = (k0.abs() - half_band, k0.abs() + half_band);
        if k_lo < self.grid.dk() || k_hi > self.grid.k_max() {
            return Err(Error::BandwidthNotCovered {
                k_lo,
                k_hi,
                dk: self.grid.dk(),
                k_max: self.grid.k_max(),
            });
        }
        let sigma = packet.sigma;
        // Σ c_k α_k e^{ikx} Δk = −2i E₀ e^{iξ} env(x) e^{ik₀x}
        let prefactor = Complex64::new(0.0, -2.0 * packet.e0)
            * Complex64::from_polar(1.0, packet.xi_init)
            * (sigma * (2.0 * PI).sqrt() / (2.0 * PI));
        let mut amps = ModeAmplitudes::vacuum(&self.grid);
        let target = match packet.side {
            Side::A => &mut amps.alpha_a,
            Side::B => &mut amps.alpha_b,
        };
        for (i, slot) in target.iter_mut().enumerate() {
            let k = self.grid.k(i);
            if k.signum() != k0.signum() {
                continue;
            }
            let dk = k - k0;
            let spectrum = (-0.5 * sigma * sigma * dk * dk).exp();
            let shift = Complex64::from_polar(1.0, -dk * packet.x0);
            *slot = prefactor * spectrum * shift / self.coupling(k);
        }
        Ok(amps)
    }

    /// `Σ_k c_k α_k e^{ikx} Δk` and the same sum weighted by `sign(k)`.
    fn mode_sums(&self, alpha: &[Complex64], x: f64) -> (Complex64, Complex64) {
        let mut plain = Complex64::new(0.0, 0.0);
        let mut signed = Complex64::new(0.0, 0.0);
        for (i, a) in alpha.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let k = self.grid.k(i);
            let term = a * Complex64::from_polar(self.coupling(k), k * x);
            plain += term;
            if k > 0.0 {
                signed += term;
            } else {
                signed -= term;
            }
        }
        (plain * self.grid.dk(), signed * self.grid.dk())
    }

    /// `⟨E_free(x)⟩ = (i/2) Σ √(ħω/πεA) e^{ikx} α_k Δk + c.c.` for one
    /// amplitude sequence.
    pub fn expect_e_free(&self, alpha: &[Complex64], x: f64) -> f64 {
        -self.mode_sums(alpha, x).0.im
    }

    /// `⟨B_free(x)⟩`, with the sign fixed by `∂ₓE = −∂ₜB`: a right mover has
    /// `B = E/c`.
    pub fn expect_b_free(&self, alpha: &[Complex64], x: f64) -> f64 {
        -self.mode_sums(alpha, x).1.im / self.medium.light_speed()
    }

    /// Σ ħω (|α_a,k|² + |α_b,k|²) Δk. The zero-point constant is dropped.
    pub fn expect_h_sys(&self, amps: &ModeAmplitudes) -> f64 {
        let terms = self.grid.ks().enumerate().map(|(i, k)| {
            self.hbar * self.omega(k) * (amps.alpha_a[i].norm_sqr() + amps.alpha_b[i].norm_sqr())
        });
        compensated_sum(terms) * self.grid.dk()
    }

    /// Σ_{k>0} ħω |ξ_k|² Δk for a one-sided scene; the b-copy is ignored.
    pub fn expect_h_field_one_sided(&self, amps: &ModeAmplitudes) -> f64 {
        let xi = xi_transform(&amps.alpha_a, &self.grid);
        let dk = self.grid.dk();
        let terms = xi
            .iter()
            .enumerate()
            .map(|(j, x)| self.hbar * self.omega((j + 1) as f64 * dk) * x.norm_sqr());
        compensated_sum(terms) * dk
    }

    /// Mirror-surface energy, the remainder `⟨H_sys⟩ − ⟨H_field⟩`.
    pub fn expect_h_mirr_one_sided(&self, amps: &ModeAmplitudes) -> f64 {
        self.expect_h_sys(amps) - self.expect_h_field_one_sided(amps)
    }

    /// One-sided perfect-mirror field with η = √2, as the difference of
    /// free-space expectations: `[E(x) − E(−x)]/√2`.
    pub fn expect_e_mirr_one_sided(&self, amps: &ModeAmplitudes, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let alpha = &amps.alpha_a;
        (self.expect_e_free(alpha, x) - self.expect_e_free(alpha, -x)) / SQRT_2
    }

    /// The same observable as a standing-wave sum over ξ modes:
    /// `−2 Σ_{k>0} c_k sin(kx) Re ξ_k Δk`.
    pub fn expect_e_mirr_xi(&self, xi: &[Complex64], x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let dk = self.grid.dk();
        let s: f64 = xi
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let k = (j + 1) as f64 * dk;
                self.coupling(k) * (k * x).sin() * v.re
            })
            .sum();
        -2.0 * s * dk
    }

    /// Magnetic partner of [`Self::expect_e_mirr_xi`],
    /// `−(2/c) Σ_{k>0} c_k cos(kx) Im ξ_k Δk`.
    pub fn expect_b_mirr_xi(&self, xi: &[Complex64], x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let dk = self.grid.dk();
        let s: f64 = xi
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let k = (j + 1) as f64 * dk;
                self.coupling(k) * (k * x).cos() * v.im
            })
            .sum();
        -2.0 * s * dk / self.medium.light_speed()
    }

    /// Free evolution `α_k → α_k e^{−iωt}` on both copies.
    pub fn evolve(&self, amps: &ModeAmplitudes, t: f64) -> ModeAmplitudes {
        let phase = |i: usize| Complex64::from_polar(1.0, -self.omega(self.grid.k(i)) * t);
        ModeAmplitudes {
            alpha_a: amps
                .alpha_a
                .iter()
                .enumerate()
                .map(|(i, a)| a * phase(i))
                .collect(),
            alpha_b: amps
                .alpha_b
                .iter()
                .enumerate()
                .map(|(i, a)| a * phase(i))
                .collect(),
        }
    }
}
