//! Shared builders for the integration test suites.
#![allow(dead_code)] // each test target uses a different subset

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tribody_core::geom::{planar, Planar};
use tribody_core::system::{reduce_to_barycenter, scalar_diagnostics, MassSystem, PhaseState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random barycentric three-body state with positions in a unit-scale box
/// and a collision-free start; momenta scaled by `speed`.
pub fn random_state(rng: &mut ChaCha8Rng, sys: &MassSystem, speed: f64) -> PhaseState {
    loop {
        let positions: Vec<Planar> = (0..3)
            .map(|_| planar(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect();
        let min_r = (0..3)
            .flat_map(|j| ((j + 1)..3).map(move |k| (j, k)))
            .map(|(j, k)| (positions[j] - positions[k]).norm())
            .fold(f64::INFINITY, f64::min);
        if min_r < 0.3 {
            continue;
        }
        let momenta: Vec<Planar> = (0..3)
            .map(|_| planar(rng.gen_range(-1.0..1.0) * speed, rng.gen_range(-1.0..1.0) * speed))
            .collect();
        return reduce_to_barycenter(&PhaseState::new(positions, momenta, 0.0), sys);
    }
}

/// A random bounded state: momenta rescaled until the energy is negative.
pub fn random_bound_state(rng: &mut ChaCha8Rng, sys: &MassSystem) -> PhaseState {
    let mut state = random_state(rng, sys, 0.8);
    loop {
        let diag = scalar_diagnostics(&state, sys).expect("collision-free by construction");
        if diag.energy < -0.05 {
            return state;
        }
        for p in state.momenta.iter_mut() {
            *p *= 0.7;
        }
    }
}

/// Random three-body shapes (positions only), collision-free.
pub fn random_shape(rng: &mut ChaCha8Rng) -> [Planar; 3] {
    loop {
        let q = [
            planar(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
            planar(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
            planar(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
        ];
        let mut ok = true;
        for j in 0..3 {
            for k in j + 1..3 {
                if (q[j] - q[k]).norm() < 0.2 {
                    ok = false;
                }
            }
        }
        if ok {
            return q;
        }
    }
}

/// Random positive masses in a moderate range.
pub fn random_masses(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [
        rng.gen_range(0.2..4.0),
        rng.gen_range(0.2..4.0),
        rng.gen_range(0.2..4.0),
    ]
}
