//! Fujiwara shape coordinates and the quantities living on them.
//!
//! A trajectory sample maps to `Q_k = exp(-i theta) q_k / sqrt(I)` with the
//! phase `theta` accumulated by the integrator. The frame then satisfies
//! `sum m_k |Q_k|^2 = 1` and has zero angular momentum, so the residual
//! motion of `Q` is pure shape change. Shape momenta are
//! `P_k = m_k dQ_k/dtau = I m_k dQ_k/dt`.

use crate::error::Error;
use crate::geom::{dot, rot90, rotor, wedge, Planar};
use crate::integrate::Trajectory;
use crate::system::{
    forces_unchecked, pair_distances, potential_energy_unchecked, reduce_to_barycenter,
    MassSystem, PhaseState, CYCLIC,
};
use crate::Result;

/// Shape-level diagnostics of a three-body frame.
#[derive(Debug, Clone, Copy)]
pub struct ShapeDiagnostics {
    /// Central-configuration residual vectors `G_k = g_k(Q) + a mu m_k Q_k`,
    /// evaluated with the frame's own measure.
    pub g: [Planar; 3],
    /// Twice the oriented area of the `Q` triangle.
    pub delta: f64,
    /// Magnitude of the residual triple, zero exactly at central configurations.
    pub rho: f64,
    /// Shape-momentum magnitude `sqrt(m1 m2 m3 (B - C^2) / M)` of the sample.
    pub kappa: f64,
    /// Pair quantities `E_l = m_j m_k (1 / r_jk^(a+2) - a mu / M)`.
    pub e: [f64; 3],
    /// The frame's own configurational measure `U(Q)`.
    pub measure: f64,
}

/// One sample in shape coordinates.
#[derive(Debug, Clone)]
pub struct FujiwaraFrame {
    pub tau: f64,
    /// Shape coordinates `Q_k`.
    pub coords: Vec<Planar>,
    /// Shape momenta `P_k`.
    pub momenta: Vec<Planar>,
    /// Present for three-body frames.
    pub shape: Option<ShapeDiagnostics>,
}

impl FujiwaraFrame {
    pub fn shape(&self) -> &ShapeDiagnostics {
        self.shape.as_ref().expect("three-body frame")
    }

    /// Pair distances of the shape, indexed by the opposite body.
    pub fn distances(&self) -> [f64; 3] {
        pair_distances(&self.coords)
    }

    /// Largest shape speed `max_k |P_k| / m_k`.
    pub fn shape_speed(&self, sys: &MassSystem) -> f64 {
        self.momenta
            .iter()
            .zip(sys.masses())
            .map(|(p, m)| p.norm() / m)
            .fold(0.0, f64::max)
    }
}

/// Fujiwara kinetic energy `sum |P_k|^2 / m_k` of a frame.
///
/// Algebraically this equals the per-sample `B - C^2`, and stays constant
/// exactly on constant-measure orbits.
pub fn shape_kinetic(frame: &FujiwaraFrame, sys: &MassSystem) -> f64 {
    frame
        .momenta
        .iter()
        .zip(sys.masses())
        .map(|(p, m)| p.norm_sqr() / m)
        .sum()
}

fn shape_diagnostics(coords: &[Planar], momenta_b_c: Option<(f64, f64)>, sys: &MassSystem) -> ShapeDiagnostics {
    let mu = potential_energy_unchecked(coords, sys);
    let g = residual_vectors_unchecked(coords, sys, mu);
    let delta = wedge(coords[0], coords[1])
        + wedge(coords[1], coords[2])
        + wedge(coords[2], coords[0]);
    let rho = rho_from_residuals(&g, sys);
    let r = pair_distances(coords);
    let mut e = [0.0; 3];
    let a = sys.exponent();
    for &(j, k, l) in &CYCLIC {
        e[l] = sys.mass(j) * sys.mass(k)
            * (r[l].powf(-(a + 2.0)) - a * mu / sys.total_mass());
    }
    let kappa = match momenta_b_c {
        Some((b, c)) => (sys.mass_product() * (b - c * c).max(0.0) / sys.total_mass()).sqrt(),
        None => 0.0,
    };
    ShapeDiagnostics {
        g,
        delta,
        rho,
        kappa,
        e,
        measure: mu,
    }
}

fn rho_from_residuals(g: &[Planar; 3], sys: &MassSystem) -> f64 {
    let sum: f64 = g
        .iter()
        .zip(sys.masses())
        .map(|(gk, m)| gk.norm_sqr() / m)
        .sum();
    (sys.mass_product() / sys.total_mass() * sum).sqrt()
}

/// `G_k = g_k(Q) + a mu m_k Q_k` without the collision guard.
fn residual_vectors_unchecked(coords: &[Planar], sys: &MassSystem, mu: f64) -> [Planar; 3] {
    let g = forces_unchecked(coords, sys);
    let a = sys.exponent();
    let mut out = [Planar::new(0.0, 0.0); 3];
    for k in 0..3 {
        out[k] = g[k] + coords[k] * (a * mu * sys.mass(k));
    }
    out
}

/// Central-configuration residual vectors for an explicit measure input.
pub fn g_of_coords(coords: &[Planar], sys: &MassSystem, mu: f64) -> Result<[Planar; 3]> {
    let r = pair_distances(coords);
    for &(j, k, l) in &CYCLIC {
        if r[l] <= 0.0 {
            return Err(Error::CollisionSingularity {
                j,
                k,
                r: r[l],
                threshold: 0.0,
            });
        }
    }
    Ok(residual_vectors_unchecked(coords, sys, mu))
}

/// Map an integrated trajectory to shape coordinates.
///
/// `dQ_k/dt` comes from the exact velocity decomposition, not from
/// differencing the sampled `Q`; the phase factor uses the trajectory's own
/// accumulated `theta`.
pub fn to_fujiwara(traj: &Trajectory) -> Result<Vec<FujiwaraFrame>> {
    traj.samples
        .iter()
        .map(|s| frame_from_augmented(&s.phase, s.tau, s.theta, &traj.system))
        .collect()
}

/// Shape frame of one phase-space sample with known `tau` and `theta`.
pub fn frame_from_augmented(
    phase: &PhaseState,
    tau: f64,
    theta: f64,
    sys: &MassSystem,
) -> Result<FujiwaraFrame> {
    let n = phase.n();
    let mut inertia = 0.0;
    let mut inertia_rate = 0.0;
    let mut angular = 0.0;
    let mut kinetic = 0.0;
    for k in 0..n {
        let q = phase.positions[k];
        let p = phase.momenta[k];
        inertia += sys.mass(k) * dot(q, q);
        inertia_rate += 2.0 * dot(q, p);
        angular += wedge(q, p);
        kinetic += 0.5 * dot(p, p) / sys.mass(k);
    }
    if !(inertia > 0.0) {
        return Err(Error::ZeroInertia { inertia });
    }
    let sqrt_i = inertia.sqrt();
    let phase_rotor = rotor(-theta);
    let mut coords = Vec::with_capacity(n);
    let mut momenta = Vec::with_capacity(n);
    for k in 0..n {
        let q = phase.positions[k];
        let p = phase.momenta[k];
        coords.push(phase_rotor * q / sqrt_i);
        // dQ/dt = rot(-theta) [v - (I'/2I) q - (C/I) i q] / sqrt(I)
        let v = p / sys.mass(k);
        let dq_dt = phase_rotor
            * (v - q * (inertia_rate / (2.0 * inertia)) - rot90(q) * (angular / inertia))
            / sqrt_i;
        momenta.push(dq_dt * (inertia * sys.mass(k)));
    }
    let shape = (n == 3).then(|| {
        let qp = 0.5 * inertia_rate;
        let b = 2.0 * inertia * kinetic - qp * qp;
        shape_diagnostics(&coords, Some((b, angular)), sys)
    });
    Ok(FujiwaraFrame {
        tau,
        coords,
        momenta,
        shape,
    })
}

/// Normalize arbitrary three-body positions into a rest frame: barycentric,
/// `I(Q) = 1`, zero shape momenta.
pub fn frame_from_positions(positions: &[Planar], sys: &MassSystem) -> Result<FujiwaraFrame> {
    let state = reduce_to_barycenter(
        &PhaseState::new(positions.to_vec(), vec![Planar::new(0.0, 0.0); positions.len()], 0.0),
        sys,
    );
    let mut inertia = 0.0;
    for k in 0..state.n() {
        inertia += sys.mass(k) * dot(state.positions[k], state.positions[k]);
    }
    if !(inertia > 0.0) {
        return Err(Error::ZeroInertia { inertia });
    }
    let sqrt_i = inertia.sqrt();
    let coords: Vec<Planar> = state.positions.iter().map(|&q| q / sqrt_i).collect();
    let shape = (state.n() == 3).then(|| shape_diagnostics(&coords, None, sys));
    Ok(FujiwaraFrame {
        tau: 0.0,
        momenta: vec![Planar::new(0.0, 0.0); coords.len()],
        coords,
        shape,
    })
}

/// Both routes to `rho` and the pair quantities backing the second one.
#[derive(Debug, Clone, Copy)]
pub struct RhoRoutes {
    /// From the residual vectors: `sqrt((m1 m2 m3 / M) sum |G_l|^2 / m_l)`.
    pub from_residuals: f64,
    /// From the pair products: `rho^2 = -(E1 E2 + E2 E3 + E3 E1)`.
    pub from_pair_products: f64,
    pub e: [f64; 3],
}

/// Evaluate `rho` through both of its formulas for an explicit measure.
pub fn rho_of(frame: &FujiwaraFrame, sys: &MassSystem, mu: f64) -> Result<RhoRoutes> {
    let g = g_of_coords(&frame.coords, sys, mu)?;
    let from_residuals = rho_from_residuals(&g, sys);
    let r = frame.distances();
    let a = sys.exponent();
    let mut e = [0.0; 3];
    for &(j, k, l) in &CYCLIC {
        e[l] = sys.mass(j) * sys.mass(k)
            * (r[l].powf(-(a + 2.0)) - a * mu / sys.total_mass());
    }
    let rho2 = -(e[0] * e[1] + e[1] * e[2] + e[2] * e[0]);
    let scale = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if rho2 < -1e-12 * scale.powi(2).max(1.0) {
        return Err(Error::NegativeRhoSquared { rho2 });
    }
    Ok(RhoRoutes {
        from_residuals,
        from_pair_products: rho2.max(0.0).sqrt(),
        e,
    })
}

/// Shape-momentum magnitude `kappa = sqrt(m1 m2 m3 (B - C^2) / M)`.
pub fn kappa_of(b: f64, c: f64, sys: &MassSystem) -> Result<f64> {
    let gap = b - c * c;
    if gap < -1e-9 {
        return Err(Error::SundmanViolation { b, c2: c * c });
    }
    Ok((sys.mass_product() * gap.max(0.0) / sys.total_mass()).sqrt())
}

/// The complex similarity factor `zeta` with `eta_l = zeta (xi_j^† - xi_k^†)`.
///
/// Requires `sum xi_k^† eta_k = 0` and `sum eta_k = 0`; the denominator pair
/// is the one with the largest coordinate difference.
pub fn similarity_factor(xi: &[Planar; 3], eta: &[Planar; 3]) -> Result<Planar> {
    let xi_scale = xi.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let eta_scale = eta.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let orth: Planar = (0..3).map(|k| xi[k].conj() * eta[k]).sum();
    let orth_tol = 1e-10 * (xi_scale * eta_scale).max(1.0);
    if orth.re.abs() > orth_tol || orth.im.abs() > orth_tol {
        return Err(Error::PreconditionViolated(format!(
            "sum xi^† eta = {orth} exceeds tolerance {orth_tol:.1e}"
        )));
    }
    let eta_sum: Planar = eta.iter().sum();
    if eta_sum.norm() > 1e-10 * eta_scale.max(1.0) {
        return Err(Error::PreconditionViolated(format!(
            "sum eta = {eta_sum} is not zero"
        )));
    }
    let mut best_l = 0;
    let mut best = -1.0;
    for &(j, k, l) in &CYCLIC {
        let d = (xi[j] - xi[k]).norm();
        if d > best {
            best = d;
            best_l = l;
        }
    }
    if best <= 1e-15 * xi_scale.max(1.0) {
        return Err(Error::DegenerateShape);
    }
    let (j, k, l) = CYCLIC[best_l];
    Ok(eta[l] / (xi[j].conj() - xi[k].conj()))
}

/// Largest deviation of `eta_l` from `zeta (xi_j^† - xi_k^†)` over the triples.
pub fn similarity_residual(xi: &[Planar; 3], eta: &[Planar; 3], zeta: Planar) -> f64 {
    CYCLIC
        .iter()
        .map(|&(j, k, l)| (eta[l] - zeta * (xi[j].conj() - xi[k].conj())).norm())
        .fold(0.0, f64::max)
}

fn central_config_tolerance(sys: &MassSystem, mu: f64) -> f64 {
    1e-12 * (sys.exponent() * mu).max(1.0)
}

/// The only shape momenta a non-homographic constant-measure orbit can carry:
/// `P_k = epsilon (kappa / rho) i G_k`.
pub fn candidate_momenta(
    frame: &FujiwaraFrame,
    sys: &MassSystem,
    mu: f64,
    kappa: f64,
    epsilon: f64,
) -> Result<[Planar; 3]> {
    debug_assert!(epsilon == 1.0 || epsilon == -1.0);
    let g = g_of_coords(&frame.coords, sys, mu)?;
    let rho = rho_from_residuals(&g, sys);
    if rho <= central_config_tolerance(sys, mu) {
        return Err(Error::CentralConfiguration { rho });
    }
    let scale = epsilon * kappa / rho;
    Ok([
        rot90(g[0]) * scale,
        rot90(g[1]) * scale,
        rot90(g[2]) * scale,
    ])
}

/// `dr_jk/dtau` for the frame's own momenta: `-M (Q_l . P_l) / (m_j m_k r_jk)`.
///
/// Valid for any momenta tangent to the shape sphere; indexed by the
/// opposite body like [`pair_distances`].
pub fn dr_dtau_general(frame: &FujiwaraFrame, sys: &MassSystem) -> [f64; 3] {
    let r = frame.distances();
    let m_total = sys.total_mass();
    let mut out = [0.0; 3];
    for &(j, k, l) in &CYCLIC {
        out[l] = -m_total * dot(frame.coords[l], frame.momenta[l])
            / (sys.mass(j) * sys.mass(k) * r[l]);
    }
    out
}

/// `dr_jk/dtau` in the closed form available for candidate momenta.
pub fn dr_dtau_candidate(
    frame: &FujiwaraFrame,
    sys: &MassSystem,
    mu: f64,
    kappa: f64,
    epsilon: f64,
) -> Result<[f64; 3]> {
    let g = g_of_coords(&frame.coords, sys, mu)?;
    let rho = rho_from_residuals(&g, sys);
    if rho <= central_config_tolerance(sys, mu) {
        return Err(Error::CentralConfiguration { rho });
    }
    let r = frame.distances();
    let delta = wedge(frame.coords[0], frame.coords[1])
        + wedge(frame.coords[1], frame.coords[2])
        + wedge(frame.coords[2], frame.coords[0]);
    let a = sys.exponent();
    let front = sys.mass_product() * epsilon * kappa * delta / rho;
    let mut out = [0.0; 3];
    for &(j, k, l) in &CYCLIC {
        let bracket = r[k].powf(-(a + 2.0)) - r[j].powf(-(a + 2.0));
        out[l] = front * bracket / (sys.mass(j) * sys.mass(k) * r[l]);
    }
    Ok(out)
}

/// Both sides of the torque identity
/// `Q_l ∧ G_l = (m1 m2 m3 Δ / M)(1/r_lj^(a+2) - 1/r_kl^(a+2))`.
pub fn torque_identity(
    frame: &FujiwaraFrame,
    sys: &MassSystem,
    mu: f64,
) -> Result<[(f64, f64); 3]> {
    let g = g_of_coords(&frame.coords, sys, mu)?;
    let r = frame.distances();
    let delta = wedge(frame.coords[0], frame.coords[1])
        + wedge(frame.coords[1], frame.coords[2])
        + wedge(frame.coords[2], frame.coords[0]);
    let a = sys.exponent();
    let front = sys.mass_product() * delta / sys.total_mass();
    let mut out = [(0.0, 0.0); 3];
    for &(j, k, l) in &CYCLIC {
        let lhs = wedge(frame.coords[l], g[l]);
        let rhs = front * (r[k].powf(-(a + 2.0)) - r[j].powf(-(a + 2.0)));
        out[l] = (lhs, rhs);
    }
    Ok(out)
}

/// Residual of the shape-kinetic balance along a trajectory:
/// `d/dt (I^2 sum m |dQ/dt|^2) - 2 I^(1-a/2) dmu/dt`, both sides by central
/// differences on the dense output, normalized by the right-hand side.
pub fn saari_relation_residual(traj: &Trajectory) -> Result<Vec<(f64, f64)>> {
    let sys = &traj.system;
    let (t0, t1) = traj.t_span();
    let span = t1 - t0;
    let n = 400;
    let h = span / 20000.0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = t0 + span * (i as f64 + 0.5) / n as f64;
        if (t - h - t0) * span.signum() < 0.0 || (t1 - (t + h)) * span.signum() < 0.0 {
            continue;
        }
        let minus = traj.state_at(t - h);
        let plus = traj.state_at(t + h);
        let center = traj.state_at(t);

        let kinetic_of = |s: &crate::integrate::AugmentedState| -> Result<f64> {
            let f = frame_from_augmented(&s.phase, s.tau, s.theta, sys)?;
            Ok(shape_kinetic(&f, sys))
        };
        let measure_of = |s: &crate::integrate::AugmentedState| {
            let u = potential_energy_unchecked(&s.phase.positions, sys);
            let inertia: f64 = s
                .phase
                .positions
                .iter()
                .zip(sys.masses())
                .map(|(q, m)| m * dot(*q, *q))
                .sum();
            (u * inertia.powf(sys.exponent() / 2.0), inertia)
        };

        let lhs = (kinetic_of(&plus)? - kinetic_of(&minus)?) / (2.0 * h);
        let (mu_p, _) = measure_of(&plus);
        let (mu_m, _) = measure_of(&minus);
        let (_, inertia_c) = measure_of(&center);
        let rhs = 2.0 * inertia_c.powf(1.0 - sys.exponent() / 2.0) * (mu_p - mu_m) / (2.0 * h);
        out.push((t, (lhs - rhs) / rhs.abs().max(1.0)));
    }
    Ok(out)
}
