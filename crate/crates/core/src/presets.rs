//! Reference initial states with known analytic diagnostics.

use crate::central_config::euler_collinear;
use crate::error::Error;
use crate::geom::{planar, rot90, Planar};
use crate::system::{reduce_to_barycenter, MassSystem, PhaseState};
use crate::Result;

fn equilateral_positions(side: f64) -> [Planar; 3] {
    [
        planar(0.0, 0.0),
        planar(side, 0.0),
        planar(side / 2.0, side * 3f64.sqrt() / 2.0),
    ]
}

/// Uniformly rotating equilateral configuration of side `side`.
///
/// The equilateral triangle is central for any masses, with
/// `g_k = -(M m_k / s^(a+2)) q_k` about the barycenter, so circular motion
/// at `omega = sqrt(M) / s^((a+2)/2)` solves the equations of motion.
pub fn lagrange_relative_equilibrium(sys: &MassSystem, side: f64) -> Result<PhaseState> {
    if !(side > 0.0) {
        return Err(Error::InvalidInput(format!("side = {side} must be positive")));
    }
    let state = reduce_to_barycenter(
        &PhaseState::new(
            equilateral_positions(side).to_vec(),
            vec![Planar::new(0.0, 0.0); 3],
            0.0,
        ),
        sys,
    );
    let omega = lagrange_angular_velocity(sys, side);
    let momenta = state
        .positions
        .iter()
        .enumerate()
        .map(|(k, &q)| rot90(q) * (sys.mass(k) * omega))
        .collect();
    Ok(PhaseState::new(state.positions, momenta, 0.0))
}

pub fn lagrange_angular_velocity(sys: &MassSystem, side: f64) -> f64 {
    (sys.total_mass() / side.powf(sys.exponent() + 2.0)).sqrt()
}

pub fn lagrange_period(sys: &MassSystem, side: f64) -> f64 {
    2.0 * std::f64::consts::PI / lagrange_angular_velocity(sys, side)
}

/// Equilateral configuration released from rest: homothetic total collapse.
pub fn equilateral_freefall(sys: &MassSystem, side: f64) -> Result<PhaseState> {
    if !(side > 0.0) {
        return Err(Error::InvalidInput(format!("side = {side} must be positive")));
    }
    Ok(reduce_to_barycenter(
        &PhaseState::new(
            equilateral_positions(side).to_vec(),
            vec![Planar::new(0.0, 0.0); 3],
            0.0,
        ),
        sys,
    ))
}

/// Uniformly rotating rectilinear central configuration at unit inertia.
///
/// At the `I = 1` scale the proportionality constant is `a mu_c`, so the
/// relative equilibrium spins at `omega = sqrt(a mu_c)`.
pub fn euler_collinear_spin(sys: &MassSystem, middle_index: usize) -> Result<PhaseState> {
    let config = euler_collinear(sys, middle_index)?;
    let omega = (sys.exponent() * config.mu_c).sqrt();
    let positions: Vec<Planar> = config.shape.to_vec();
    let momenta = positions
        .iter()
        .enumerate()
        .map(|(k, &q)| rot90(q) * (sys.mass(k) * omega))
        .collect();
    Ok(PhaseState::new(positions, momenta, 0.0))
}

/// Homothetic escape from the equilateral configuration at unit inertia.
///
/// Radial momenta `p_k = lambda m_k q_k` keep the motion homothetic; the
/// expansion rate is picked to land on the requested total energy.
pub fn homothetic_escape(sys: &MassSystem, energy: f64) -> Result<PhaseState> {
    let rest = equilateral_freefall(sys, 1.0)?;
    let mut inertia = 0.0;
    for k in 0..3 {
        inertia += sys.mass(k) * rest.positions[k].norm_sqr();
    }
    let scale = inertia.sqrt();
    let positions: Vec<Planar> = rest.positions.iter().map(|&q| q / scale).collect();
    let potential = crate::system::potential_energy_unchecked(&positions, sys);
    if energy + potential < 0.0 {
        return Err(Error::InvalidInput(format!(
            "energy {energy} is below the potential floor -{potential}"
        )));
    }
    // T = lambda^2 I / 2 with I = 1.
    let lambda = (2.0 * (energy + potential)).sqrt();
    let momenta = positions
        .iter()
        .enumerate()
        .map(|(k, &q)| q * (lambda * sys.mass(k)))
        .collect();
    Ok(PhaseState::new(positions, momenta, 0.0))
}
