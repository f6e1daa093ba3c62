//! Two-level atom dynamics under a decay channel `(Γ, Δ)`.
//!
//! Level 1 is the ground state, level 2 the excited state. The master
//! equation is
//!
//! ```text
//! ρ̇ = −i(H ρ − ρ H†) + Γ ρ₂₂ |1⟩⟨1|,    H = (Δ − iΓ/2)|2⟩⟨2|
//! ```
//!
//! so the coherence obeys `ρ̇₁₂ = (iΔ − Γ/2) ρ₁₂` and picks up the phase
//! `e^{+iΔt}`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AtomSpec, Medium, MirrorSpec};
use crate::rates;

/// Tolerance on trace, Hermiticity and positivity.
pub const INVARIANT_TOL: f64 = 1e-10;

/// Stability bound: `dt · max(Γ, |Δ|)` may not exceed this.
pub const MAX_STEP_FRACTION: f64 = 1e-2;

const C0: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    pub rho11: Complex64,
    pub rho12: Complex64,
    pub rho21: Complex64,
    pub rho22: Complex64,
}

impl DensityMatrix {
    pub fn ground() -> Self {
        Self::from_populations(1.0, 0.0)
    }

    pub fn excited() -> Self {
        Self::from_populations(0.0, 1.0)
    }

    pub fn from_populations(p1: f64, p2: f64) -> Self {
        DensityMatrix {
            rho11: Complex64::new(p1, 0.0),
            rho12: C0,
            rho21: C0,
            rho22: Complex64::new(p2, 0.0),
        }
    }

    /// Excited population `p2` with coherence `ρ₁₂`; `ρ₂₁` is its conjugate.
    pub fn new(rho22: f64, rho12: Complex64) -> Self {
        DensityMatrix {
            rho11: Complex64::new(1.0 - rho22, 0.0),
            rho12,
            rho21: rho12.conj(),
            rho22: Complex64::new(rho22, 0.0),
        }
    }

    /// `|ψ⟩⟨ψ|` for `ψ = c₁|1⟩ + c₂|2⟩`, normalised.
    pub fn from_pure(c1: Complex64, c2: Complex64) -> Self {
        let n = c1.norm_sqr() + c2.norm_sqr();
        DensityMatrix {
            rho11: Complex64::new(c1.norm_sqr() / n, 0.0),
            rho12: c1 * c2.conj() / n,
            rho21: c2 * c1.conj() / n,
            rho22: Complex64::new(c2.norm_sqr() / n, 0.0),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho11 + self.rho22
    }

    pub fn purity(&self) -> f64 {
        (self.rho11 * self.rho11
            + self.rho12 * self.rho21
            + self.rho21 * self.rho12
            + self.rho22 * self.rho22)
            .re
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.rho11.re;
        let d = self.rho22.re;
        let off = 0.5 * (self.rho12 + self.rho21.conj());
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d).powi(2) + off.norm_sqr()).sqrt();
        [mid - rad, mid + rad]
    }

    /// First violated invariant among trace, Hermiticity and positivity.
    fn worst_violation(&self) -> Option<(&'static str, f64)> {
        let trace_err = (self.trace() - 1.0).norm();
        let herm_err = (self.rho21 - self.rho12.conj())
            .norm()
            .max(self.rho11.im.abs())
            .max(self.rho22.im.abs());
        let min_eig = self.eigenvalues()[0];
        if trace_err > INVARIANT_TOL {
            Some(("trace error", trace_err))
        } else if herm_err > INVARIANT_TOL {
            Some(("hermiticity error", herm_err))
        } else if min_eig < -INVARIANT_TOL {
            Some(("minimum eigenvalue", min_eig))
        } else {
            None
        }
    }

    pub fn check(&self, step: usize) -> Result<()> {
        match self.worst_violation() {
            Some((what, value)) => Err(Error::InvariantViolated { step, what, value }),
            None => Ok(()),
        }
    }

    fn axpy(&self, h: f64, k: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            rho11: self.rho11 + h * k.rho11,
            rho12: self.rho12 + h * k.rho12,
            rho21: self.rho21 + h * k.rho21,
            rho22: self.rho22 + h * k.rho22,
        }
    }

    /// A pure-state vector for this matrix, if it is pure.
    fn state_vector(&self) -> Result<(Complex64, Complex64)> {
        let purity = self.purity();
        if (purity - 1.0).abs() > 1e-8 {
            return Err(Error::NotPure(purity));
        }
        let (p1, p2) = (self.rho11.re, self.rho22.re);
        Ok(if p1 >= p2 {
            let c1 = p1.sqrt();
            (Complex64::new(c1, 0.0), self.rho21 / c1)
        } else {
            let c2 = p2.sqrt();
            (self.rho12 / c2, Complex64::new(c2, 0.0))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomChannel {
    pub gamma: f64,
    pub delta: f64,
}

impl AtomChannel {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "gamma",
                value: gamma,
                reason: "decay rate must be non-negative",
            });
        }
        if !delta.is_finite() {
            return Err(Error::InvalidParameter {
                field: "delta",
                value: delta,
                reason: "must be finite",
            });
        }
        Ok(AtomChannel { gamma, delta })
    }

    /// Largest step accepted by [`evolve`].
    pub fn max_step(&self) -> f64 {
        MAX_STEP_FRACTION / self.gamma.max(self.delta.abs()).max(f64::MIN_POSITIVE)
    }

    fn rhs(&self, rho: &DensityMatrix) -> DensityMatrix {
        // H = h |2⟩⟨2|; −i(Hρ − ρH†) touches row 2 through h and column 2
        // through conj(h).
        let h = Complex64::new(self.delta, -0.5 * self.gamma);
        let mi = Complex64::new(0.0, -1.0);
        let reset = self.gamma * rho.rho22;
        DensityMatrix {
            rho11: reset,
            rho12: mi * (-(rho.rho12 * h.conj())),
            rho21: mi * (h * rho.rho21),
            rho22: mi * (h * rho.rho22 - rho.rho22 * h.conj()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

fn validate_horizon(t_final: f64, dt: f64) -> Result<usize> {
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::NegativeTime(t_final));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "dt",
            value: dt,
            reason: "must be positive",
        });
    }
    // a hair of slack so t_final = n·dt does not round up to n + 1 steps
    Ok(((t_final / dt) * (1.0 - 1e-12)).ceil() as usize)
}

/// Fixed-step fourth-order Runge–Kutta from `0` to `t_final`. The step is
/// shrunk to `t_final / ⌈t_final/dt⌉` so the last sample lands on
/// `t_final`. Every state is checked against the invariants.
pub fn evolve(
    rho0: &DensityMatrix,
    channel: &AtomChannel,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory> {
    let channel = AtomChannel::new(channel.gamma, channel.delta)?;
    let limit = channel.max_step();
    if dt > limit {
        return Err(Error::StepTooLarge { dt, limit });
    }
    let steps = validate_horizon(t_final, dt)?;
    rho0.check(0)?;
    let h = if steps == 0 {
        0.0
    } else {
        t_final / steps as f64
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut rho = *rho0;
    times.push(0.0);
    states.push(rho);
    for n in 1..=steps {
        let k1 = channel.rhs(&rho);
        let k2 = channel.rhs(&rho.axpy(0.5 * h, &k1));
        let k3 = channel.rhs(&rho.axpy(0.5 * h, &k2));
        let k4 = channel.rhs(&rho.axpy(h, &k3));
        rho = DensityMatrix {
            rho11: rho.rho11 + h / 6.0 * (k1.rho11 + 2.0 * k2.rho11 + 2.0 * k3.rho11 + k4.rho11),
            rho12: rho.rho12 + h / 6.0 * (k1.rho12 + 2.0 * k2.rho12 + 2.0 * k3.rho12 + k4.rho12),
            rho21: rho.rho21 + h / 6.0 * (k1.rho21 + 2.0 * k2.rho21 + 2.0 * k3.rho21 + k4.rho21),
            rho22: rho.rho22 + h / 6.0 * (k1.rho22 + 2.0 * k2.rho22 + 2.0 * k3.rho22 + k4.rho22),
        };
        rho.check(n)?;
        times.push(if n == steps { t_final } else { n as f64 * h });
        states.push(rho);
    }
    Ok(Trajectory { times, states })
}

/// Exact solution of the master equation.
pub fn analytic_solution(rho0: &DensityMatrix, channel: &AtomChannel, t: f64) -> DensityMatrix {
    let decay = (-channel.gamma * t).exp();
    let lost = rho0.rho22 * (1.0 - decay);
    let coherence = Complex64::from_polar((-0.5 * channel.gamma * t).exp(), channel.delta * t);
    DensityMatrix {
        rho11: rho0.rho11 + lost,
        rho12: rho0.rho12 * coherence,
        rho21: rho0.rho21 * coherence.conj(),
        rho22: rho0.rho22 * decay,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnravelResult {
    pub times: Vec<f64>,
    /// Trajectory-averaged density matrix at each time.
    pub mean: Vec<DensityMatrix>,
    /// Standard error of the mean excited population.
    pub stderr_rho22: Vec<f64>,
    pub n_traj: usize,
    pub jumps: usize,
}

/// Quantum-jump unravelling of the master equation.
///
/// Between jumps the state follows `H`, under which `ψ₂` decays as
/// `e^{−(iΔ + Γ/2)t}` and the norm is `|c₁|² + |c₂|² e^{−Γt}`. A trajectory
/// therefore jumps when the norm falls to a uniform draw `u`, which is
/// solvable in closed form, and afterwards stays in `|1⟩`. Trajectory
/// `i` draws from a ChaCha8 stream `i` under the given seed, so results
/// do not depend on the thread count.
pub fn jump_unravel(
    rho0: &DensityMatrix,
    channel: &AtomChannel,
    t_final: f64,
    dt: f64,
    n_traj: usize,
    seed: u64,
) -> Result<UnravelResult> {
    let channel = AtomChannel::new(channel.gamma, channel.delta)?;
    let steps = validate_horizon(t_final, dt)?;
    if n_traj == 0 {
        return Err(Error::InvalidParameter {
            field: "n_traj",
            value: 0.0,
            reason: "need at least one trajectory",
        });
    }
    rho0.check(0)?;
    let (c1, c2) = rho0.state_vector()?;
    let (p1, p2) = (c1.norm_sqr(), c2.norm_sqr());

    let mut jump_times: Vec<f64> = (0..n_traj)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let u: f64 = rng.gen();
            if channel.gamma == 0.0 || u <= p1 || p2 == 0.0 {
                return f64::INFINITY;
            }
            -((u - p1) / p2).ln() / channel.gamma
        })
        .collect();
    jump_times.sort_by(f64::total_cmp);

    let h = if steps == 0 {
        0.0
    } else {
        t_final / steps as f64
    };
    let times: Vec<f64> = (0..=steps)
        .map(|n| if n == steps { t_final } else { n as f64 * h })
        .collect();
    let ground = DensityMatrix::ground();
    let n = n_traj as f64;
    let mut mean = Vec::with_capacity(times.len());
    let mut stderr_rho22 = Vec::with_capacity(times.len());
    for &t in &times {
        let amp2 = c2 * Complex64::from_polar((-0.5 * channel.gamma * t).exp(), -channel.delta * t);
        let unjumped = DensityMatrix::from_pure(c1, amp2);
        let survivors = (n_traj - jump_times.partition_point(|&tj| tj <= t)) as f64;
        let jumped = n - survivors;
        let avg = |a: Complex64, b: Complex64| (survivors * a + jumped * b) / n;
        let state = DensityMatrix {
            rho11: avg(unjumped.rho11, ground.rho11),
            rho12: avg(unjumped.rho12, ground.rho12),
            rho21: avg(unjumped.rho21, ground.rho21),
            rho22: avg(unjumped.rho22, ground.rho22),
        };
        // sample variance of ρ₂₂ over trajectories: survivors carry
        // `unjumped.rho22`, the rest carry 0
        let m = state.rho22.re;
        let v = unjumped.rho22.re;
        let var = if n_traj > 1 {
            (survivors * (v - m).powi(2) + jumped * m * m) / (n - 1.0)
        } else {
            0.0
        };
        mean.push(state);
        stderr_rho22.push((var / n).sqrt());
    }
    let jumps = jump_times.partition_point(|&tj| tj <= t_final);
    Ok(UnravelResult {
        times,
        mean,
        stderr_rho22,
        n_traj,
        jumps,
    })
}

/// Channel for an atom in front of `mirror`: both rates in units of the
/// free-space decay rate, scaled by it.
pub fn channel_from_mirror(
    mirror: &MirrorSpec,
    atom: &AtomSpec,
    medium: &Medium,
) -> Result<AtomChannel> {
    let atom = atom.validated()?;
    let z = atom.z(medium);
    if !(z > 0.0) {
        return Err(Error::ZeroDistance(z));
    }
    let ratios = rates::rates(mirror, atom.mu_orient, z, atom.side())?;
    let gamma_free = rates::gamma_free(&atom, medium);
    AtomChannel::new(
        ratios.gamma_ratio * gamma_free,
        ratios.delta_ratio * gamma_free,
    )
}
