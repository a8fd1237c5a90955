//! Acceptance suite: one test per numbered criterion, each printing a single
//! pass/fail line with the measured values behind it.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use tribody_core::central_config::{
    critical_path_contour, euler_collinear, ShapeChart,
};
use tribody_core::contour::{CriticalPath, Window};
use tribody_core::fujiwara::{
    candidate_momenta, dr_dtau_candidate, dr_dtau_general, frame_from_augmented,
    frame_from_positions, rho_of, shape_kinetic,
};
use tribody_core::integrate::{integrate, IntegrationControls, Termination};
use tribody_core::numeric::fit2;
use tribody_core::phi::PhiProfile;
use tribody_core::presets;
use tribody_core::saari::{
    self, audit, equilateral_limit, equilateral_limit_horizontal, equilateral_limit_vertical,
    series_fit_critical_path, series_limits_on_path, Verdict,
};
use tribody_core::system::{scalar_diagnostics, MassSystem};

/// Collects sub-checks of one criterion and prints a single verdict line.
struct Gate {
    label: &'static str,
    failures: Vec<String>,
}

impl Gate {
    fn new(label: &'static str) -> Self {
        Self {
            label,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("acceptance {}: PASS", self.label);
        } else {
            println!("acceptance {}: FAIL", self.label);
            for f in &self.failures {
                println!("    {f}");
            }
            panic!("{} failed: {:?}", self.label, self.failures);
        }
    }
}

fn equal_sys() -> MassSystem {
    MassSystem::equal_unit(1.0)
}

/// The near-origin contour at the series-fit resolution, shared between the
/// two series criteria.
fn fine_contour() -> &'static CriticalPath {
    static CONTOUR: OnceLock<CriticalPath> = OnceLock::new();
    CONTOUR.get_or_init(|| {
        let chart = ShapeChart::new(equal_sys()).unwrap();
        let level = 5.0 / 2f64.sqrt();
        critical_path_contour(
            &chart,
            level,
            Window::new(-0.05, 0.05, -0.15, 0.15),
            4096,
        )
        .unwrap()
    })
}

#[test]
fn criterion_01_rectilinear_measure() {
    let mut gate = Gate::new("01 rectilinear critical measure");
    let sys = equal_sys();
    let expected = 5.0 / 2f64.sqrt();

    let mut best = Duration::MAX;
    let mut mu_c = 0.0;
    for _ in 0..3 {
        let t0 = Instant::now();
        mu_c = euler_collinear(&sys, 2).unwrap().mu_c;
        best = best.min(t0.elapsed());
    }
    gate.check(
        (mu_c - expected).abs() <= 1e-12,
        format!("mu_c = {mu_c:.15}, expected {expected:.15}"),
    );
    gate.check(
        best < Duration::from_millis(1),
        format!("solver took {best:?} (budget 1 ms)"),
    );
    let chart_value = ShapeChart::new(sys).unwrap().mu(0.0, 0.0).unwrap();
    gate.check(
        (chart_value - expected).abs() <= 1e-12,
        format!("chart value {chart_value:.15}"),
    );
    gate.finish();
}

#[test]
fn criterion_02_critical_path_series() {
    let mut gate = Gate::new("02 critical-path series coefficients");
    let t0 = Instant::now();
    let contour = fine_contour();
    let fit = series_fit_critical_path(contour, 0.05).unwrap();
    let elapsed = t0.elapsed();
    let c2_expected = 29.0 / 7.0;
    let c4_expected = -7491.0 / 343.0;
    let c2_err = (fit.c2 - c2_expected).abs() / c2_expected;
    let c4_err = (fit.c4 - c4_expected).abs() / c4_expected.abs();
    gate.check(
        c2_err <= 0.01,
        format!("c2 = {:.6} vs {:.6} ({:.2}%)", fit.c2, c2_expected, 100.0 * c2_err),
    );
    gate.check(
        c4_err <= 0.05,
        format!("c4 = {:.4} vs {:.4} ({:.2}%)", fit.c4, c4_expected, 100.0 * c4_err),
    );
    gate.check(
        elapsed < Duration::from_secs(30),
        format!("contour + fit took {elapsed:?} (budget 30 s)"),
    );
    gate.finish();
}

#[test]
fn criterion_03_rho_squared_series() {
    let mut gate = Gate::new("03 rho^2 leading coefficient");
    let sys = equal_sys();
    let points: Vec<(f64, f64)> = fine_contour()
        .points()
        .filter(|&(x, _)| x != 0.0 && x.abs() <= 0.05)
        .map(|(x, y)| {
            let chart = [
                tribody_core::geom::planar(-1.0, 0.0),
                tribody_core::geom::planar(1.0, 0.0),
                tribody_core::geom::planar(x, y),
            ];
            let frame = frame_from_positions(&chart, &sys).unwrap();
            let rho = frame.shape().rho;
            (x, rho * rho)
        })
        .collect();
    let (d2, _d4, _) = fit2(&points, |x| x * x, |x| x.powi(4));
    let err = (d2 - 58.0).abs() / 58.0;
    gate.check(
        err <= 0.01,
        format!("leading coefficient {d2:.4} vs 58 ({:.2}%)", 100.0 * err),
    );
    gate.finish();
}

#[test]
fn criterion_04_condition_limit_on_path() {
    let mut gate = Gate::new("04 finite condition limit on the path");
    let chart = ShapeChart::new(equal_sys()).unwrap();
    let samples = series_limits_on_path(&chart, &[1e-3]).unwrap();
    let expected = -7491.0 / (1624.0 * 2f64.sqrt());
    let measured = samples[0].f1_over_rho4_plus_f2_over_rho2;
    let err = (measured - expected).abs() / expected.abs();
    gate.check(
        err <= 0.005,
        format!("f1/rho^4 + f2/rho^2 = {measured:.6} vs {expected:.6} ({:.3}%)", 100.0 * err),
    );
    gate.finish();
}

#[test]
fn criterion_05_near_equilateral_limits() {
    let mut gate = Gate::new("05 near-equilateral limits");
    let radii = saari::default_radius_ladder();

    let sys = equal_sys();
    for i in 0..8 {
        let angle = i as f64 * std::f64::consts::PI / 4.0 + 0.1;
        let limit = equilateral_limit(&sys, angle, &radii).unwrap();
        let err = (limit - 13.5).abs() / 13.5;
        gate.check(
            err <= 0.005,
            format!("equal masses, angle {angle:.2}: limit {limit:.5} vs 13.5"),
        );
    }

    let sys421 = MassSystem::new(&[4.0, 2.0, 1.0], 1.0).unwrap();
    let vertical_expected = equilateral_limit_vertical(&sys421);
    let horizontal_expected = equilateral_limit_horizontal(&sys421);
    let vertical = equilateral_limit(&sys421, std::f64::consts::FRAC_PI_2, &radii).unwrap();
    let horizontal = equilateral_limit(&sys421, 0.0, &radii).unwrap();
    gate.check(
        (vertical - vertical_expected).abs() <= 0.005 * vertical_expected,
        format!("vertical {vertical:.5} vs {vertical_expected:.5}"),
    );
    gate.check(
        (horizontal - horizontal_expected).abs() <= 0.005 * horizontal_expected,
        format!("horizontal {horizontal:.5} vs {horizontal_expected:.5}"),
    );
    gate.check(
        (vertical_expected - horizontal_expected).abs()
            > 0.01 * vertical_expected.max(horizontal_expected),
        format!("directional limits must differ: {vertical_expected:.5} vs {horizontal_expected:.5}"),
    );
    gate.finish();
}

/// Ten periods of the equal-mass triangular relative equilibrium.
///
/// The configuration is linearly unstable (Gascheau): deviations grow by a
/// factor ~85 per period, about 2e19 over ten periods, so double precision
/// saturates these thresholds regardless of integrator quality. The checks
/// run as stated; the measured values document how far the run gets.
#[test]
fn criterion_06_lagrange_regression() {
    let mut gate = Gate::new("06 Lagrange relative-equilibrium regression");
    let sys = equal_sys();
    let state = presets::lagrange_relative_equilibrium(&sys, 1.0).unwrap();
    let period = presets::lagrange_period(&sys, 1.0);
    let t0 = Instant::now();
    let traj = integrate(&state, &sys, &IntegrationControls::to(10.0 * period)).unwrap();
    let report = audit(&traj).unwrap();
    let elapsed = t0.elapsed();

    let diags = traj.diagnostics();
    let max_di = diags.iter().map(|d| (d.inertia - 1.0).abs()).fold(0.0, f64::max);
    let max_dmu = diags.iter().map(|d| (d.measure - 3.0).abs()).fold(0.0, f64::max);
    let max_gap = diags.iter().map(|d| d.sundman_gap().abs()).fold(0.0, f64::max);

    gate.check(max_di <= 1e-8, format!("max |I - 1| = {max_di:.3e} (tolerance 1e-8)"));
    gate.check(max_dmu <= 1e-8, format!("max |mu - 3| = {max_dmu:.3e} (tolerance 1e-8)"));
    gate.check(max_gap <= 1e-8, format!("max |B - C^2| = {max_gap:.3e} (tolerance 1e-8)"));
    gate.check(
        report.homography_score <= 1e-6,
        format!("homography score = {:.3e} (tolerance 1e-6)", report.homography_score),
    );
    gate.check(
        report.verdict == Verdict::Homographic,
        format!("verdict = {:?}", report.verdict),
    );
    gate.check(
        elapsed < Duration::from_secs(1),
        format!("run took {elapsed:?} (budget 1 s)"),
    );
    gate.finish();
}

#[test]
fn criterion_07_homothety_free_fall() {
    let mut gate = Gate::new("07 homothetic free fall and total collision");
    let sys = equal_sys();
    let state = presets::equilateral_freefall(&sys, 1.0).unwrap();
    let traj = integrate(&state, &sys, &IntegrationControls::to(10.0)).unwrap();
    gate.check(
        traj.termination == Termination::Collision,
        format!("termination = {:?}", traj.termination),
    );
    let diags = traj.diagnostics();
    let max_b = diags.iter().map(|d| d.b_constant.abs()).fold(0.0, f64::max);
    gate.check(max_b <= 1e-9, format!("max |B| = {max_b:.3e} (tolerance 1e-9)"));
    // Total collision: every pair distance obeys the inertia bound and all
    // three shrink together.
    let mut bound_ok = true;
    for (sample, diag) in traj.samples.iter().zip(diags.iter()) {
        for j in 0..3 {
            for k in j + 1..3 {
                let r2 = (sample.phase.positions[j] - sample.phase.positions[k]).norm_sqr();
                let bound = sys.total_mass() / (sys.mass(j) * sys.mass(k)) * diag.inertia;
                bound_ok &= r2 <= bound * (1.0 + 1e-9);
            }
        }
    }
    gate.check(bound_ok, "a pair distance exceeded the inertia bound".into());
    let last = traj.last();
    let max_r_end = (0..3)
        .flat_map(|j| ((j + 1)..3).map(move |k| (j, k)))
        .map(|(j, k)| (last.phase.positions[j] - last.phase.positions[k]).norm())
        .fold(0.0, f64::max);
    gate.check(
        max_r_end < 1e-5,
        format!("largest distance at the cutoff: {max_r_end:.3e}"),
    );
    gate.finish();
}

#[test]
fn criterion_08_sundman_property_suite() {
    let mut gate = Gate::new("08 Sundman gap on random bounded orbits");
    let sys = equal_sys();
    let mut rng = common::rng(2024);
    let mut worst = f64::INFINITY;
    for _ in 0..100 {
        let state = common::random_bound_state(&mut rng, &sys);
        let mut controls = IntegrationControls::to(2.0);
        controls.dense_output = false;
        let traj = integrate(&state, &sys, &controls).unwrap();
        for d in traj.diagnostics() {
            let margin = d.sundman_gap() + 1e-9 * d.b_constant.max(1.0);
            worst = worst.min(margin);
        }
    }
    gate.check(
        worst >= 0.0,
        format!("worst Sundman margin = {worst:.3e}"),
    );
    gate.finish();
}

#[test]
fn criterion_09_rho_dual_formula() {
    let mut gate = Gate::new("09 rho dual-formula agreement");
    let mut rng = common::rng(99);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let masses = common::random_masses(&mut rng);
        let exponent = if trial % 3 == 0 { 1.0 } else { 0.4 + (trial % 7) as f64 * 0.2 };
        let sys = MassSystem::new(&masses, exponent).unwrap();
        let frame = frame_from_positions(&common::random_shape(&mut rng), &sys).unwrap();
        let mu = frame.shape().measure;
        let routes = rho_of(&frame, &sys, mu).unwrap();
        let rho2_a = routes.from_residuals * routes.from_residuals;
        let rho2_b = routes.from_pair_products * routes.from_pair_products;
        worst = worst.max((rho2_a - rho2_b).abs() / rho2_a.max(1.0));
    }
    gate.check(worst <= 1e-12, format!("worst route mismatch = {worst:.3e}"));
    gate.finish();
}

#[test]
fn criterion_10_distance_rate_formulas() {
    let mut gate = Gate::new("10 dr/dtau routes and finite differences");
    // Closed candidate route against the general one on random frames.
    let mut rng = common::rng(7);
    let mut worst_route = 0.0f64;
    for _ in 0..100 {
        let masses = common::random_masses(&mut rng);
        let sys = MassSystem::new(&masses, 1.0).unwrap();
        let mut frame = frame_from_positions(&common::random_shape(&mut rng), &sys).unwrap();
        let mu = frame.shape().measure;
        if frame.shape().rho <= 1e-6 {
            continue;
        }
        let kappa = 0.5;
        let epsilon = if frame.shape().delta >= 0.0 { -1.0 } else { 1.0 };
        let p = candidate_momenta(&frame, &sys, mu, kappa, epsilon).unwrap();
        frame.momenta = p.to_vec();
        let general = dr_dtau_general(&frame, &sys);
        let closed = dr_dtau_candidate(&frame, &sys, mu, kappa, epsilon).unwrap();
        for l in 0..3 {
            worst_route = worst_route
                .max((general[l] - closed[l]).abs() / general[l].abs().max(1.0));
        }
    }
    gate.check(
        worst_route <= 1e-10,
        format!("worst route disagreement = {worst_route:.3e}"),
    );

    // General route against finite differences along short integrations.
    let mut worst_fd = 0.0f64;
    for seed in [3, 17, 23] {
        let sys = MassSystem::new(&[1.3, 0.9, 2.1], 1.0).unwrap();
        let state = common::random_bound_state(&mut common::rng(seed), &sys);
        let traj = integrate(&state, &sys, &IntegrationControls::to(1.0)).unwrap();
        let n = 32001;
        let states = traj.resample_uniform(n);
        let h = (traj.t_span().1 - traj.t_span().0) / (n - 1) as f64;
        for i in (800..n - 800).step_by(1600) {
            let frame = frame_from_augmented(
                &states[i].phase,
                states[i].tau,
                states[i].theta,
                &sys,
            )
            .unwrap();
            let d = scalar_diagnostics(&states[i].phase, &sys).unwrap();
            let general = dr_dtau_general(&frame, &sys);
            let dist = |s: &tribody_core::AugmentedState| {
                let f = frame_from_augmented(&s.phase, s.tau, s.theta, &sys).unwrap();
                f.distances()
            };
            let plus = dist(&states[i + 1]);
            let minus = dist(&states[i - 1]);
            for l in 0..3 {
                // dr/dtau = I * dr/dt.
                let fd = d.inertia * (plus[l] - minus[l]) / (2.0 * h);
                worst_fd = worst_fd.max((fd - general[l]).abs() / general[l].abs().max(1.0));
            }
        }
    }
    gate.check(
        worst_fd <= 1e-5,
        format!("worst finite-difference mismatch = {worst_fd:.3e}"),
    );
    gate.finish();
}

#[test]
fn criterion_11_energy_identities() {
    let mut gate = Gate::new("11 Lagrange-Jacobi and kinetic decomposition");
    let equal = equal_sys();
    let sys421 = MassSystem::new(&[4.0, 2.0, 1.0], 1.0).unwrap();
    let orbits: Vec<(MassSystem, tribody_core::Trajectory)> = vec![
        (
            equal.clone(),
            integrate(
                &presets::lagrange_relative_equilibrium(&equal, 1.0).unwrap(),
                &equal,
                &IntegrationControls::to(2.0 * presets::lagrange_period(&equal, 1.0)),
            )
            .unwrap(),
        ),
        (
            equal.clone(),
            integrate(
                &presets::euler_collinear_spin(&equal, 2).unwrap(),
                &equal,
                &IntegrationControls::to(6.0),
            )
            .unwrap(),
        ),
        (
            equal.clone(),
            integrate(
                &presets::equilateral_freefall(&equal, 1.0).unwrap(),
                &equal,
                &IntegrationControls::to(0.5),
            )
            .unwrap(),
        ),
        (
            sys421.clone(),
            integrate(
                &common::random_bound_state(&mut common::rng(11), &sys421),
                &sys421,
                &IntegrationControls::to(3.0),
            )
            .unwrap(),
        ),
    ];

    let mut worst_decomposition = 0.0f64;
    let mut worst_second_diff = 0.0f64;
    for (sys, traj) in &orbits {
        let (t0, t1) = traj.t_span();
        for state in traj.resample_uniform(120) {
            let d = scalar_diagnostics(&state.phase, sys).unwrap();
            let frame = frame_from_augmented(&state.phase, state.tau, state.theta, sys).unwrap();
            let decomposed = d.angular_momentum * d.angular_momentum / (2.0 * d.inertia)
                + d.inertia_rate * d.inertia_rate / (8.0 * d.inertia)
                + 0.5 * shape_kinetic(&frame, sys) / (d.inertia * d.inertia) * d.inertia;
            worst_decomposition = worst_decomposition
                .max((decomposed - d.kinetic).abs() / d.kinetic.max(1.0));

            // Step tied to the local dynamical time so the stencil stays
            // accurate through close encounters.
            let min_r = (0..3)
                .flat_map(|j| ((j + 1)..3).map(move |k| (j, k)))
                .map(|(j, k)| (state.phase.positions[j] - state.phase.positions[k]).norm())
                .fold(f64::INFINITY, f64::min);
            let t_dyn = (min_r.powf(sys.exponent() + 2.0) / sys.total_mass()).sqrt();
            let h = (0.02 * t_dyn).clamp(1e-5, (t1 - t0) / 100.0);
            let t = state.phase.time;
            if t - 2.0 * h <= t0 || t + 2.0 * h >= t1 {
                continue;
            }
            let inertia_at = |tt: f64| {
                let s = traj.state_at(tt);
                scalar_diagnostics(&s.phase, sys).unwrap().inertia
            };
            let second = (-inertia_at(t - 2.0 * h) + 16.0 * inertia_at(t - h)
                - 30.0 * inertia_at(t)
                + 16.0 * inertia_at(t + h)
                - inertia_at(t + 2.0 * h))
                / (12.0 * h * h);
            let rhs = 4.0 * d.energy + 2.0 * (2.0 - sys.exponent()) * d.potential;
            worst_second_diff =
                worst_second_diff.max((second - rhs).abs() / rhs.abs().max(1.0));
        }
    }
    gate.check(
        worst_decomposition <= 1e-8,
        format!("kinetic decomposition worst error = {worst_decomposition:.3e}"),
    );
    gate.check(
        worst_second_diff <= 1e-4,
        format!("Lagrange-Jacobi worst error = {worst_second_diff:.3e}"),
    );
    gate.finish();
}

#[test]
fn criterion_12_euler_solver_vs_quintic() {
    let mut gate = Gate::new("12 collinear solver against the quintic");
    let sys = MassSystem::new(&[4.0, 2.0, 1.0], 1.0).unwrap();
    let result = euler_collinear(&sys, 2).unwrap();
    // middle = 2 puts the bodies in index order 1, 2, 3 along the line.
    let ratio = (result.shape[1] - result.shape[2]).norm()
        / (result.shape[0] - result.shape[1]).norm();

    // Classical quintic in x = r23 / r12 for the ordering (m1, m2, m3),
    // solved by plain interval halving.
    let (m1, m2, m3) = (4.0, 2.0, 1.0);
    let quintic = |x: f64| {
        (m1 + m2) * x.powi(5) + (3.0 * m1 + 2.0 * m2) * x.powi(4) + (3.0 * m1 + m2) * x.powi(3)
            - (m2 + 3.0 * m3) * x.powi(2)
            - (2.0 * m2 + 3.0 * m3) * x
            - (m2 + m3)
    };
    let (mut lo, mut hi) = (1e-3, 1e3);
    assert!(quintic(lo) < 0.0 && quintic(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if quintic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let oracle = 0.5 * (lo + hi);

    gate.check(
        (ratio - oracle).abs() <= 1e-10 * oracle,
        format!("ratio {ratio:.15} vs quintic root {oracle:.15}"),
    );
    gate.check(
        result.rho_check <= 1e-10,
        format!("rho at the solution = {:.3e}", result.rho_check),
    );
    gate.finish();
}

#[test]
fn criterion_13_figure_structure() {
    let mut gate = Gate::new("13 figure reproductions (structural)");

    // Negative energy: interior minimum and two turning points.
    let samples: Vec<(f64, f64)> = (1..=400)
        .map(|i| {
            let inertia = i as f64 * 0.01;
            (
                inertia,
                tribody_core::phi::phi_of_inertia(inertia, -1.5, 3.0, 1.0).unwrap(),
            )
        })
        .collect();
    let min_index = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())
        .unwrap()
        .0;
    gate.check(
        min_index > 0 && min_index < samples.len() - 1,
        format!("interior minimum index = {min_index}"),
    );
    let profile = PhiProfile::solve(-1.5, 3.0, 1.0, 2.0).unwrap();
    gate.check(
        profile.i_min.is_some() && profile.i_max.is_some() && profile.i_min < profile.i_max,
        format!("turning points {:?} {:?}", profile.i_min, profile.i_max),
    );

    // Non-negative energy: monotone decrease, a single lower turning point.
    let monotone = samples
        .iter()
        .map(|&(inertia, _)| tribody_core::phi::phi_of_inertia(inertia, 1.0, 3.0, 1.0).unwrap())
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1] < w[0]);
    gate.check(monotone, "Phi must decrease monotonically for H >= 0".into());
    let profile = PhiProfile::solve(1.0, 3.0, 1.0, 2.0).unwrap();
    gate.check(
        profile.i_min.is_some() && profile.i_max.is_none(),
        format!("H >= 0 turning points {:?} {:?}", profile.i_min, profile.i_max),
    );

    // The equal-mass critical path passes through all three rectilinear
    // configurations on the wide chart window.
    let chart = ShapeChart::new(equal_sys()).unwrap();
    let path = critical_path_contour(
        &chart,
        5.0 / 2f64.sqrt(),
        Window::new(-4.0, 4.0, -4.0, 4.0),
        512,
    )
    .unwrap();
    let cell = 8.0 / 511.0;
    for (px, py) in [(-3.0, 0.0), (0.0, 0.0), (3.0, 0.0)] {
        let dist = path.distance_to(px, py);
        gate.check(
            dist <= 2.0 * cell,
            format!("distance from ({px}, {py}) to the contour = {dist:.4}"),
        );
    }
    gate.finish();
}

#[test]
fn criterion_14_asymptotic_exponents() {
    let mut gate = Gate::new("14 asymptotic inertia exponents");
    let sys = equal_sys();
    for (energy, expected) in [(0.0, 2.0), (1.0, 1.0)] {
        let state = presets::homothetic_escape(&sys, energy).unwrap();
        let mut controls = IntegrationControls::to(1e9);
        controls.dense_output = false;
        let traj = integrate(&state, &sys, &controls).unwrap();
        gate.check(
            traj.termination == Termination::Escape,
            format!("H = {energy}: termination {:?}", traj.termination),
        );
        let report = saari::asymptotics_check(&traj).unwrap();
        let err = (report.growth_exponent - expected).abs() / expected;
        gate.check(
            err <= 0.02,
            format!(
                "H = {energy}: exponent {:.4} vs {expected} ({:.2}%)",
                report.growth_exponent,
                100.0 * err
            ),
        );
        gate.check(
            report.tau_infinity.is_finite() && report.tau_infinity > traj.last().tau,
            format!("H = {energy}: tau_infinity = {}", report.tau_infinity),
        );
    }
    gate.finish();
}

/// Supplementary: the usable double-precision horizon for the criterion-06
/// regression. Three periods hold every threshold with margin; the
/// ten-period horizon is saturated by the configuration's own instability.
#[test]
fn criterion_06_supplement_three_period_horizon() {
    let sys = equal_sys();
    let state = presets::lagrange_relative_equilibrium(&sys, 1.0).unwrap();
    let period = presets::lagrange_period(&sys, 1.0);
    let traj = integrate(&state, &sys, &IntegrationControls::to(3.0 * period)).unwrap();
    let diags = traj.diagnostics();
    let max_di = diags.iter().map(|d| (d.inertia - 1.0).abs()).fold(0.0, f64::max);
    let max_dmu = diags.iter().map(|d| (d.measure - 3.0).abs()).fold(0.0, f64::max);
    let max_gap = diags.iter().map(|d| d.sundman_gap().abs()).fold(0.0, f64::max);
    let report = audit(&traj).unwrap();
    println!(
        "three-period horizon: |I-1| {max_di:.2e}, |mu-3| {max_dmu:.2e}, |B-C^2| {max_gap:.2e}, score {:.2e}",
        report.homography_score
    );
    assert!(max_di <= 1e-8);
    assert!(max_dmu <= 1e-8);
    assert!(max_gap <= 1e-8);
    assert!(report.homography_score <= 1e-6);
    assert_eq!(report.verdict, Verdict::Homographic);
}
