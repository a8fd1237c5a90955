//! Property suites for the algebraic invariants: gauge reductions, scaling
//! laws, the Sundman gap, dual formulas, and root brackets.

mod common;

use proptest::prelude::*;
use tribody_core::fujiwara::{
    frame_from_positions, rho_of, similarity_factor, similarity_residual,
};
use tribody_core::geom::{planar, Planar};
use tribody_core::phi::PhiProfile;
use tribody_core::system::{
    forces_unchecked, moment_of_inertia, moment_of_inertia_pair_form, mutual_distance_bounds,
    potential_energy_unchecked, reduce_to_barycenter, scalar_diagnostics, MassSystem, PhaseState,
};

fn mass_strategy() -> impl Strategy<Value = [f64; 3]> {
    [0.2f64..4.0, 0.2f64..4.0, 0.2f64..4.0].prop_map(|m| m)
}

fn shape_strategy() -> impl Strategy<Value = [(f64, f64); 3]> {
    [
        ((-1.5f64..1.5), (-1.5f64..1.5)),
        ((-1.5f64..1.5), (-1.5f64..1.5)),
        ((-1.5f64..1.5), (-1.5f64..1.5)),
    ]
    .prop_filter("collision-free", |q| {
        let positions = [
            planar(q[0].0, q[0].1),
            planar(q[1].0, q[1].1),
            planar(q[2].0, q[2].1),
        ];
        (0..3).all(|j| {
            ((j + 1)..3).all(|k| (positions[j] - positions[k]).norm() > 0.2)
        })
    })
}

fn positions_of(q: [(f64, f64); 3]) -> [Planar; 3] {
    [
        planar(q[0].0, q[0].1),
        planar(q[1].0, q[1].1),
        planar(q[2].0, q[2].1),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Scaling every position by lambda multiplies U by lambda^-a and I by
    /// lambda^2 and leaves the configurational measure untouched.
    #[test]
    fn measure_is_scale_invariant(
        masses in mass_strategy(),
        shape in shape_strategy(),
        exponent in 0.3f64..1.9,
        lambda in 0.2f64..5.0,
    ) {
        let sys = MassSystem::new(&masses, exponent).unwrap();
        let q = positions_of(shape);
        let scaled: [Planar; 3] = [q[0] * lambda, q[1] * lambda, q[2] * lambda];
        let u = potential_energy_unchecked(&q, &sys);
        let u_scaled = potential_energy_unchecked(&scaled, &sys);
        prop_assert!((u_scaled - u * lambda.powf(-exponent)).abs() <= 1e-12 * u_scaled.abs());
        let inertia = moment_of_inertia_pair_form(&q, &sys);
        let inertia_scaled = moment_of_inertia_pair_form(&scaled, &sys);
        prop_assert!((inertia_scaled - inertia * lambda * lambda).abs() <= 1e-12 * inertia_scaled);
        let mu = u * inertia.powf(exponent / 2.0);
        let mu_scaled = u_scaled * inertia_scaled.powf(exponent / 2.0);
        prop_assert!((mu - mu_scaled).abs() <= 1e-12 * mu.abs().max(1.0));
    }

    /// The per-sample Sundman gap is non-negative for every phase state.
    #[test]
    fn sundman_gap_is_nonnegative(
        masses in mass_strategy(),
        shape in shape_strategy(),
        momenta in [((-2.0f64..2.0), (-2.0f64..2.0)), ((-2.0f64..2.0), (-2.0f64..2.0)), ((-2.0f64..2.0), (-2.0f64..2.0))],
    ) {
        let sys = MassSystem::new(&masses, 1.0).unwrap();
        let state = reduce_to_barycenter(
            &PhaseState::new(
                positions_of(shape).to_vec(),
                momenta.iter().map(|&(x, y)| planar(x, y)).collect(),
                0.0,
            ),
            &sys,
        );
        let d = scalar_diagnostics(&state, &sys).unwrap();
        prop_assert!(d.sundman_gap() >= -1e-9 * d.b_constant.max(1.0));
        prop_assert!(d.b_constant >= -1e-9 * (2.0 * d.inertia * d.kinetic).max(1.0));
    }

    /// Both routes to rho agree when the measure is the frame's own.
    #[test]
    fn rho_routes_agree(
        masses in mass_strategy(),
        shape in shape_strategy(),
        exponent in 0.3f64..1.9,
    ) {
        let sys = MassSystem::new(&masses, exponent).unwrap();
        let frame = frame_from_positions(&positions_of(shape), &sys).unwrap();
        let mu = frame.shape().measure;
        let routes = rho_of(&frame, &sys, mu).unwrap();
        let rho2 = routes.from_residuals * routes.from_residuals;
        let rho2_pair = routes.from_pair_products * routes.from_pair_products;
        prop_assert!(
            (rho2 - rho2_pair).abs() <= 1e-12 * rho2.max(1.0),
            "{} vs {}", rho2, rho2_pair
        );
    }

    /// An inversely-similar momentum triple reproduces its similarity factor.
    #[test]
    fn similarity_factor_roundtrip(
        shape in shape_strategy(),
        zr in -2.0f64..2.0,
        zi in -2.0f64..2.0,
    ) {
        let sys = MassSystem::equal_unit(1.0);
        let frame = frame_from_positions(&positions_of(shape), &sys).unwrap();
        let xi = [frame.coords[0], frame.coords[1], frame.coords[2]];
        let zeta = planar(zr, zi);
        let eta = [
            zeta * (xi[1].conj() - xi[2].conj()),
            zeta * (xi[2].conj() - xi[0].conj()),
            zeta * (xi[0].conj() - xi[1].conj()),
        ];
        let recovered = similarity_factor(&xi, &eta).unwrap();
        prop_assert!((recovered - zeta).norm() <= 1e-10 * zeta.norm().max(1.0));
        prop_assert!(similarity_residual(&xi, &eta, recovered) <= 1e-12);
    }

    /// Every shape satisfies the pair-distance bounds built from its own
    /// measure and inertia.
    #[test]
    fn distance_bounds_hold(
        masses in mass_strategy(),
        shape in shape_strategy(),
        exponent in 0.3f64..1.9,
    ) {
        let sys = MassSystem::new(&masses, exponent).unwrap();
        let q = positions_of(shape);
        let u = potential_energy_unchecked(&q, &sys);
        let inertia = moment_of_inertia_pair_form(&q, &sys);
        let mu = u * inertia.powf(exponent / 2.0);
        for ((j, k), (lo, hi)) in mutual_distance_bounds(mu, inertia, &sys) {
            let r2 = (q[j] - q[k]).norm_sqr();
            prop_assert!(r2 >= lo * (1.0 - 1e-12));
            prop_assert!(r2 <= hi * (1.0 + 1e-12));
        }
    }

    /// Barycentric reduction is idempotent and kills both gauge sums.
    #[test]
    fn barycentric_reduction_gauge(
        masses in mass_strategy(),
        shape in shape_strategy(),
        momenta in [((-2.0f64..2.0), (-2.0f64..2.0)), ((-2.0f64..2.0), (-2.0f64..2.0)), ((-2.0f64..2.0), (-2.0f64..2.0))],
    ) {
        let sys = MassSystem::new(&masses, 1.0).unwrap();
        let state = reduce_to_barycenter(
            &PhaseState::new(
                positions_of(shape).to_vec(),
                momenta.iter().map(|&(x, y)| planar(x, y)).collect(),
                0.0,
            ),
            &sys,
        );
        let mut q_weighted = Planar::new(0.0, 0.0);
        let mut p_total = Planar::new(0.0, 0.0);
        let mut q_scale = 0.0f64;
        let mut p_scale = 0.0f64;
        for k in 0..3 {
            q_weighted += state.positions[k] * sys.mass(k);
            p_total += state.momenta[k];
            q_scale = q_scale.max(state.positions[k].norm());
            p_scale = p_scale.max(state.momenta[k].norm());
        }
        prop_assert!(q_weighted.norm() <= 1e-12 * sys.total_mass() * q_scale.max(1e-12));
        prop_assert!(p_total.norm() <= 1e-12 * p_scale.max(1e-12));
    }

    /// Turning points: below the well depth there are two verified roots,
    /// above it none.
    #[test]
    fn turning_points_bracket_the_well(
        mu in 0.5f64..5.0,
        energy in -3.0f64..-0.2,
        fraction in 0.05f64..0.95,
    ) {
        let exponent = 1.0;
        // Interior minimum of Phi for a = 1 sits at I* = (mu / -2H)^2.
        let i_star = (mu / (-2.0 * energy)).powi(2);
        let well_depth = -(-4.0 * energy * i_star - 4.0 * mu * i_star.sqrt()) / 2.0;
        let profile = PhiProfile::solve(energy, mu, exponent, fraction * well_depth).unwrap();
        let (lo, hi) = (profile.i_min.unwrap(), profile.i_max.unwrap());
        prop_assert!(lo <= i_star && i_star <= hi);
        for root in [lo, hi] {
            let phi = profile.phi(root).unwrap();
            prop_assert!((phi + 2.0 * profile.b_constant).abs()
                <= 1e-10 * (2.0 * profile.b_constant).max(1e-6));
        }
        prop_assert!(PhiProfile::solve(energy, mu, exponent, 1.5 * well_depth).is_err());
    }
}

/// Forces match central finite differences of the potential at 100 random
/// states to 1e-5 relative.
#[test]
fn forces_match_potential_gradient() {
    let mut rng = common::rng(42);
    for trial in 0..100 {
        let masses = common::random_masses(&mut rng);
        let sys = MassSystem::new(&masses, if trial % 2 == 0 { 1.0 } else { 1.6 }).unwrap();
        let q = common::random_shape(&mut rng);
        let g = forces_unchecked(&q, &sys);
        let eps = 1e-6;
        let mut max_rel = 0.0f64;
        for k in 0..3 {
            for c in 0..2 {
                let unit = if c == 0 { planar(eps, 0.0) } else { planar(0.0, eps) };
                let mut plus = q;
                plus[k] += unit;
                let mut minus = q;
                minus[k] -= unit;
                let fd = (potential_energy_unchecked(&plus, &sys)
                    - potential_energy_unchecked(&minus, &sys))
                    / (2.0 * eps);
                let analytic = if c == 0 { g[k].re } else { g[k].im };
                max_rel = max_rel.max((fd - analytic).abs() / analytic.abs().max(1.0));
            }
        }
        assert!(max_rel <= 1e-5, "trial {trial}: max relative error {max_rel}");
    }
}

#[test]
fn inertia_forms_agree_on_random_states() {
    let mut rng = common::rng(7);
    for _ in 0..200 {
        let masses = common::random_masses(&mut rng);
        let sys = MassSystem::new(&masses, 1.0).unwrap();
        let state = reduce_to_barycenter(
            &PhaseState::new(
                common::random_shape(&mut rng).to_vec(),
                vec![Planar::new(0.0, 0.0); 3],
                0.0,
            ),
            &sys,
        );
        let direct = moment_of_inertia(&state.positions, &sys);
        let pair = moment_of_inertia_pair_form(&state.positions, &sys);
        assert!((direct - pair).abs() <= 1e-12 * direct);
    }
}
