use mirrorfield::mastereq::{
    analytic_solution, channel_from_mirror, evolve, jump_unravel, AtomChannel, DensityMatrix,
};
use mirrorfield::rates::gamma_free;
use mirrorfield::{AtomSpec, Error, Medium, MirrorSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn atom(x: f64, mu: f64) -> AtomSpec {
    AtomSpec {
        omega0: 2.0,
        dipole_norm: 0.3,
        mu_orient: mu,
        x,
        charge: 1.0,
        hbar: 1.0,
    }
}

#[test]
fn excited_population_decays_exponentially() {
    let ch = AtomChannel::new(1.0, 0.0).unwrap();
    let traj = evolve(&DensityMatrix::excited(), &ch, 10.0, 1e-3).unwrap();
    let worst = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, s)| (s.rho22.re - (-t).exp()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
    for (n, s) in traj.states.iter().enumerate() {
        s.check(n).unwrap();
    }
}

#[test]
fn integrator_tracks_the_exact_solution() {
    let ch = AtomChannel::new(0.8, -1.3).unwrap();
    let rho0 = DensityMatrix::from_pure(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
    let t_final = 5.0;
    let traj = evolve(&rho0, &ch, t_final, 1e-3).unwrap();
    let stride = (traj.times.len() - 1) / 100;
    for i in (0..traj.times.len()).step_by(stride) {
        let exact = analytic_solution(&rho0, &ch, traj.times[i]);
        let got = traj.states[i];
        for (a, b) in [
            (got.rho11, exact.rho11),
            (got.rho12, exact.rho12),
            (got.rho21, exact.rho21),
            (got.rho22, exact.rho22),
        ] {
            assert!((a - b).norm() < 1e-10);
        }
    }
}

#[test]
fn unravelling_stays_within_monte_carlo_error() {
    let ch = AtomChannel::new(1.0, 0.4).unwrap();
    let out = jump_unravel(&DensityMatrix::excited(), &ch, 5.0, 0.1, 10_000, 42).unwrap();
    assert_eq!(out.times.len(), 51);
    for ((t, s), e) in out.times.iter().zip(&out.mean).zip(&out.stderr_rho22) {
        let exact = (-t).exp();
        assert!((s.rho22.re - exact).abs() <= 3.0 * e + 1e-15, "t={t}");
        assert!((s.trace() - 1.0).norm() < 1e-12);
    }
}

#[test]
fn mirror_channels() {
    let medium = Medium::normalized();
    // k₀ = 2, so z = 4x
    let free = gamma_free(&atom(1.0, 0.0), &medium);
    let absorbing =
        channel_from_mirror(&MirrorSpec::absorbing(), &atom(0.3, 0.5), &medium).unwrap();
    assert_eq!(absorbing, AtomChannel::new(free, 0.0).unwrap());

    let x = std::f64::consts::PI / 4.0;
    let perfect = channel_from_mirror(&MirrorSpec::perfect(), &atom(x, 0.0), &medium).unwrap();
    assert!((perfect.gamma / free - 1.151982).abs() < 1e-6);
    assert!((perfect.delta / free + 0.214544).abs() < 1e-6);

    let far =
        channel_from_mirror(&MirrorSpec::lossless(0.6), &atom(-2500.0, 1.0), &medium).unwrap();
    assert!((far.gamma / free - 1.0).abs() < 1e-6);
    assert!(far.delta.abs() / free < 1e-3);

    assert_eq!(
        channel_from_mirror(&MirrorSpec::perfect(), &atom(0.0, 0.0), &medium),
        Err(Error::ZeroDistance(0.0))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rescaling_rates_rescales_time(
        gamma in 0.1..3.0f64,
        delta in -3.0..3.0f64,
        lambda in 0.25..4.0f64,
        p2 in 0.0..1.0f64,
    ) {
        let coherence = Complex64::new(0.5 * (p2 * (1.0 - p2)).sqrt(), 0.1 * (p2 * (1.0 - p2)).sqrt());
        let rho0 = DensityMatrix::new(p2, coherence);
        let base = AtomChannel::new(gamma, delta).unwrap();
        let scaled = AtomChannel::new(lambda * gamma, lambda * delta).unwrap();
        let t = 2.0;
        let dt = 1e-3 / gamma.max(delta.abs());
        let a = evolve(&rho0, &base, t, dt).unwrap();
        let b = evolve(&rho0, &scaled, t / lambda, dt / lambda).unwrap();
        let (sa, sb) = (a.states.last().unwrap(), b.states.last().unwrap());
        prop_assert!((sa.rho22 - sb.rho22).norm() < 1e-10);
        prop_assert!((sa.rho12 - sb.rho12).norm() < 1e-10);
    }
}
