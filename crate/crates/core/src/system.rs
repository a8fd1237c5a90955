//! Physical model for planar n-body systems with homogeneous potentials:
//! masses, phase states, forces, and the conserved / quasi-conserved scalars.
//!
//! The potential is `U = (1/a) * sum_{j<k} m_j m_k / r_jk^a` with `a > 0`,
//! and the equations of motion are `m_k dq_k/dt = p_k`,
//! `dp_k/dt = sum_{j != k} m_j m_k (q_j - q_k) / r_jk^(a+2)`.

use crate::error::Error;
use crate::geom::{dot, wedge, Planar};
use crate::Result;

/// Pair distances below `COLLISION_SCALE * sqrt(I)` are treated as collisions:
/// below that, double precision in `r^-(a+2)` carries no information.
pub const COLLISION_SCALE: f64 = 1e-8;

/// Cyclic index triples `(j, k, l)`: body `l` is opposite the pair `(j, k)`.
pub const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

/// Masses and potential exponent of an n-body system, n >= 3.
#[derive(Debug, Clone, PartialEq)]
pub struct MassSystem {
    masses: Vec<f64>,
    total_mass: f64,
    exponent: f64,
}

impl MassSystem {
    pub fn new(masses: &[f64], exponent: f64) -> Result<Self> {
        if masses.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "masses: need at least 3 bodies, got {}",
                masses.len()
            )));
        }
        for (k, &m) in masses.iter().enumerate() {
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "masses[{k}] = {m}: every mass must be positive and finite"
                )));
            }
        }
        if !(exponent > 0.0) || !exponent.is_finite() {
            return Err(Error::InvalidInput(format!(
                "exponent = {exponent}: the potential exponent must be positive"
            )));
        }
        Ok(Self {
            total_mass: masses.iter().sum(),
            masses: masses.to_vec(),
            exponent,
        })
    }

    /// Three equal unit masses with the given exponent.
    pub fn equal_unit(exponent: f64) -> Self {
        Self::new(&[1.0, 1.0, 1.0], exponent).expect("valid by construction")
    }

    pub fn n(&self) -> usize {
        self.masses.len()
    }

    pub fn mass(&self, k: usize) -> f64 {
        self.masses[k]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Product m1*m2*m3 (three-body only).
    pub fn mass_product(&self) -> f64 {
        debug_assert_eq!(self.n(), 3);
        self.masses[0] * self.masses[1] * self.masses[2]
    }

    /// True when the first-integral machinery is degenerate (a = 2).
    pub fn degenerate_exponent(&self) -> bool {
        self.exponent == 2.0
    }
}

/// Planar positions and momenta for n bodies at physical time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub positions: Vec<Planar>,
    pub momenta: Vec<Planar>,
    pub time: f64,
}

impl PhaseState {
    pub fn new(positions: Vec<Planar>, momenta: Vec<Planar>, time: f64) -> Self {
        assert_eq!(positions.len(), momenta.len());
        Self {
            positions,
            momenta,
            time,
        }
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }
}

/// Scalar diagnostics of a single phase-space sample.
///
/// `b_constant` is the per-sample estimate `2IT - (sum q.p)^2`; it is constant
/// exactly on constant-measure orbits and is audited there, not here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarDiagnostics {
    pub potential: f64,
    pub kinetic: f64,
    pub energy: f64,
    pub inertia: f64,
    pub inertia_rate: f64,
    pub angular_momentum: f64,
    pub measure: f64,
    pub b_constant: f64,
}

impl ScalarDiagnostics {
    /// Sundman gap `B - C^2`, non-negative for every state by Cauchy-Schwarz.
    pub fn sundman_gap(&self) -> f64 {
        self.b_constant - self.angular_momentum * self.angular_momentum
    }
}

/// Shift positions to the barycenter and momenta to the zero-drift frame.
///
/// Relative geometry is untouched: both maps subtract a common vector.
pub fn reduce_to_barycenter(state: &PhaseState, sys: &MassSystem) -> PhaseState {
    let m_total = sys.total_mass();
    let mut q_cm = Planar::new(0.0, 0.0);
    let mut p_sum = Planar::new(0.0, 0.0);
    for k in 0..state.n() {
        q_cm += state.positions[k] * sys.mass(k);
        p_sum += state.momenta[k];
    }
    q_cm /= m_total;
    let positions = state.positions.iter().map(|&q| q - q_cm).collect();
    let momenta = state
        .momenta
        .iter()
        .enumerate()
        .map(|(k, &p)| p - p_sum * (sys.mass(k) / m_total))
        .collect();
    PhaseState::new(positions, momenta, state.time)
}

/// Moment of inertia about the origin, `sum m_k |q_k|^2`.
pub fn moment_of_inertia(positions: &[Planar], sys: &MassSystem) -> f64 {
    positions
        .iter()
        .zip(sys.masses())
        .map(|(q, m)| m * dot(*q, *q))
        .sum()
}

/// Moment of inertia from the pair form, `M^-1 sum_{j<k} m_j m_k r_jk^2`.
pub fn moment_of_inertia_pair_form(positions: &[Planar], sys: &MassSystem) -> f64 {
    let n = positions.len();
    let mut acc = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            let d = positions[j] - positions[k];
            acc += sys.mass(j) * sys.mass(k) * dot(d, d);
        }
    }
    acc / sys.total_mass()
}

fn collision_guard(positions: &[Planar], sys: &MassSystem) -> Result<()> {
    let inertia = moment_of_inertia_pair_form(positions, sys);
    let threshold = COLLISION_SCALE * inertia.max(0.0).sqrt();
    for j in 0..positions.len() {
        for k in j + 1..positions.len() {
            let r = (positions[j] - positions[k]).norm();
            if r <= threshold {
                return Err(Error::CollisionSingularity { j, k, r, threshold });
            }
        }
    }
    Ok(())
}

/// Potential energy `U = (1/a) sum_{j<k} m_j m_k / r_jk^a`.
pub fn potential_energy(state: &PhaseState, sys: &MassSystem) -> Result<f64> {
    collision_guard(&state.positions, sys)?;
    Ok(potential_energy_unchecked(&state.positions, sys))
}

pub fn potential_energy_unchecked(positions: &[Planar], sys: &MassSystem) -> f64 {
    let a = sys.exponent();
    let n = positions.len();
    let mut u = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            let r = (positions[j] - positions[k]).norm();
            u += sys.mass(j) * sys.mass(k) / r.powf(a);
        }
    }
    u / a
}

/// Right-hand sides `g_k = sum_{j != k} m_j m_k (q_j - q_k) / r_jk^(a+2)`.
pub fn forces(state: &PhaseState, sys: &MassSystem) -> Result<Vec<Planar>> {
    collision_guard(&state.positions, sys)?;
    Ok(forces_unchecked(&state.positions, sys))
}

pub fn forces_unchecked(positions: &[Planar], sys: &MassSystem) -> Vec<Planar> {
    let a = sys.exponent();
    let n = positions.len();
    let mut g = vec![Planar::new(0.0, 0.0); n];
    for j in 0..n {
        for k in j + 1..n {
            let d = positions[j] - positions[k];
            let r = d.norm();
            let f = d * (sys.mass(j) * sys.mass(k) / r.powf(a + 2.0));
            g[j] -= f;
            g[k] += f;
        }
    }
    g
}

/// All scalar diagnostics of a barycentric state.
pub fn scalar_diagnostics(state: &PhaseState, sys: &MassSystem) -> Result<ScalarDiagnostics> {
    let potential = potential_energy(state, sys)?;
    Ok(scalar_diagnostics_with_potential(state, sys, potential))
}

pub(crate) fn scalar_diagnostics_with_potential(
    state: &PhaseState,
    sys: &MassSystem,
    potential: f64,
) -> ScalarDiagnostics {
    let mut kinetic = 0.0;
    let mut inertia = 0.0;
    let mut qp = 0.0;
    let mut angular = 0.0;
    for k in 0..state.n() {
        let q = state.positions[k];
        let p = state.momenta[k];
        kinetic += dot(p, p) / sys.mass(k);
        inertia += sys.mass(k) * dot(q, q);
        qp += dot(q, p);
        angular += wedge(q, p);
    }
    kinetic *= 0.5;
    ScalarDiagnostics {
        potential,
        kinetic,
        energy: kinetic - potential,
        inertia,
        inertia_rate: 2.0 * qp,
        angular_momentum: angular,
        measure: potential * inertia.powf(sys.exponent() / 2.0),
        b_constant: 2.0 * inertia * kinetic - qp * qp,
    }
}

/// Squared-distance bounds per pair for a constant-measure orbit:
/// `(m_j m_k / (a mu))^(2/a) * I <= r_jk^2 <= (M / (m_j m_k)) * I`.
pub fn mutual_distance_bounds(mu: f64, inertia: f64, sys: &MassSystem) -> Vec<((usize, usize), (f64, f64))> {
    let a = sys.exponent();
    let mut out = Vec::new();
    for j in 0..sys.n() {
        for k in j + 1..sys.n() {
            let mm = sys.mass(j) * sys.mass(k);
            let lower = (mm / (a * mu)).powf(2.0 / a) * inertia;
            let upper = sys.total_mass() / mm * inertia;
            out.push(((j, k), (lower, upper)));
        }
    }
    out
}

/// Pair distances of a three-body configuration, indexed by the opposite body:
/// `r[l] = |q_j - q_k|` with `(j, k, l)` cyclic.
pub fn pair_distances(positions: &[Planar]) -> [f64; 3] {
    debug_assert_eq!(positions.len(), 3);
    let mut r = [0.0; 3];
    for &(j, k, l) in &CYCLIC {
        r[l] = (positions[j] - positions[k]).norm();
    }
    r
}
