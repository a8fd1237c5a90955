//! Adaptive time integration of the planar n-body equations of motion.
//!
//! The phase state is augmented with two quadratures integrated as part of
//! the same system: the fictitious time `tau` with `dtau/dt = 1/I` and the
//! rotation phase `theta` with `dtheta/dt = C/I`. Stepping is embedded
//! Dormand-Prince 5(4) with PI-free step control and a quartic dense-output
//! interpolant used for event localization.

use crate::error::Error;
use crate::geom::{dot, wedge, Planar};
use crate::system::{
    forces_unchecked, moment_of_inertia, reduce_to_barycenter, MassSystem, PhaseState,
    ScalarDiagnostics,
};
use crate::{system, Result};

/// A first-order ODE system `dy/dt = f(t, y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, y: &[f64], dydt: &mut [f64]);
}

/// Phase state plus the fictitious-time and phase quadratures.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedState {
    pub phase: PhaseState,
    pub tau: f64,
    pub theta: f64,
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    TimeLimit,
    Collision,
    Escape,
    ToleranceFailure,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::TimeLimit => "TimeLimit",
            Termination::Collision => "Collision",
            Termination::Escape => "Escape",
            Termination::ToleranceFailure => "ToleranceFailure",
        }
    }
}

/// Step-size and event controls.
#[derive(Debug, Clone)]
pub struct IntegrationControls {
    pub t_end: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Absolute pair-distance cutoff for collision termination. When `None`
    /// it defaults to `1e-6 * sqrt(I(0))`: on a total-collision orbit every
    /// distance shrinks in proportion to `sqrt(I)`, so a purely
    /// scale-relative threshold would never trigger.
    pub collision_radius: Option<f64>,
    /// Escape termination at `I > escape_factor * I(0)`.
    pub escape_factor: f64,
    /// Keep the dense-output interpolant for every accepted step.
    pub dense_output: bool,
    pub max_steps: usize,
}

impl IntegrationControls {
    pub fn to(t_end: f64) -> Self {
        Self {
            t_end,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_step: f64::INFINITY,
            collision_radius: None,
            escape_factor: 1e6,
            dense_output: true,
            max_steps: 20_000_000,
        }
    }
}

/// Dense-output coefficients for one accepted step.
#[derive(Debug, Clone)]
struct DenseSegment {
    t0: f64,
    h: f64,
    cont: [Vec<f64>; 5],
}

impl DenseSegment {
    fn eval_into(&self, t: f64, out: &mut [f64]) {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        for i in 0..out.len() {
            out[i] = self.cont[0][i]
                + s * (self.cont[1][i]
                    + s1 * (self.cont[2][i] + s * (self.cont[3][i] + s1 * self.cont[4][i])));
        }
    }
}

/// An integrated orbit: ordered samples plus the termination cause.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub system: MassSystem,
    pub samples: Vec<AugmentedState>,
    pub termination: Termination,
    dense: Vec<DenseSegment>,
}

impl Trajectory {
    pub fn initial(&self) -> &AugmentedState {
        &self.samples[0]
    }

    pub fn last(&self) -> &AugmentedState {
        self.samples.last().expect("trajectory has samples")
    }

    pub fn t_span(&self) -> (f64, f64) {
        (self.samples[0].phase.time, self.last().phase.time)
    }

    /// Interpolated state at `t` from the dense output.
    pub fn state_at(&self, t: f64) -> AugmentedState {
        assert!(!self.dense.is_empty(), "trajectory stored no dense output");
        let dir = self.dense[0].h.signum();
        let idx = self
            .dense
            .partition_point(|seg| (seg.t0 + seg.h - t) * dir < 0.0)
            .min(self.dense.len() - 1);
        let seg = &self.dense[idx];
        let mut y = vec![0.0; seg.cont[0].len()];
        seg.eval_into(t, &mut y);
        unpack(self.system.n(), t, &y)
    }

    /// States at `n` uniformly spaced times across the integrated span.
    pub fn resample_uniform(&self, n: usize) -> Vec<AugmentedState> {
        let (t0, t1) = self.t_span();
        (0..n)
            .map(|i| {
                let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
                self.state_at(t)
            })
            .collect()
    }

    /// Per-sample scalar diagnostics. Samples are pre-validated by the
    /// integrator, so the collision guard is skipped.
    pub fn diagnostics(&self) -> Vec<ScalarDiagnostics> {
        self.samples
            .iter()
            .map(|s| {
                let u = system::potential_energy_unchecked(&s.phase.positions, &self.system);
                system::scalar_diagnostics_with_potential(&s.phase, &self.system, u)
            })
            .collect()
    }
}

const N_STAGES: usize = 7;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (row 7 of A by the FSAL property).
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Difference to the embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
/// Dense-output coefficients.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// One accepted/rejected Dormand-Prince attempt.
struct StepOutcome {
    y1: Vec<f64>,
    err: f64,
    k: Vec<Vec<f64>>,
}

fn dp54_attempt<S: OdeSystem>(
    sys: &S,
    t: f64,
    y: &[f64],
    h: f64,
    k1: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> StepOutcome {
    let dim = y.len();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; N_STAGES];
    k[0].copy_from_slice(k1);
    let mut y_stage = vec![0.0; dim];
    for s in 1..N_STAGES {
        for i in 0..dim {
            let mut acc = 0.0;
            for (j, k_j) in k.iter().enumerate().take(s) {
                let a = A[s][j.min(5)];
                if j < 6 && a != 0.0 {
                    acc += a * k_j[i];
                }
            }
            y_stage[i] = y[i] + h * acc;
        }
        let (head, tail) = k.split_at_mut(s);
        let _ = head;
        sys.eval(t + C[s] * h, &y_stage, &mut tail[0]);
    }
    let mut y1 = vec![0.0; dim];
    let mut err_acc = 0.0;
    for i in 0..dim {
        let mut sum_b = 0.0;
        let mut sum_e = 0.0;
        for s in 0..N_STAGES {
            sum_b += B[s] * k[s][i];
            sum_e += E[s] * k[s][i];
        }
        y1[i] = y[i] + h * sum_b;
        let sc = abs_tol + rel_tol * y[i].abs().max(y1[i].abs());
        let e = h * sum_e / sc;
        err_acc += e * e;
    }
    StepOutcome {
        y1,
        err: (err_acc / dim as f64).sqrt(),
        k,
    }
}

fn dense_coefficients(y0: &[f64], y1: &[f64], h: f64, k: &[Vec<f64>]) -> [Vec<f64>; 5] {
    let dim = y0.len();
    let mut c: [Vec<f64>; 5] = [
        y0.to_vec(),
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
    ];
    for i in 0..dim {
        let ydiff = y1[i] - y0[i];
        let bspl = h * k[0][i] - ydiff;
        c[1][i] = ydiff;
        c[2][i] = bspl;
        c[3][i] = ydiff - h * k[6][i] - bspl;
        let mut dsum = 0.0;
        for s in 0..N_STAGES {
            dsum += D[s] * k[s][i];
        }
        c[4][i] = h * dsum;
    }
    c
}

/// Low-level adaptive driver for a generic ODE system.
///
/// Calls `on_step(t0, h, y0, y1, k)` after every accepted step; the closure
/// may return `false` to stop. Used directly by tests that substitute a
/// different right-hand side; n-body work goes through [`integrate`].
pub fn drive_adaptive<S, F>(
    sys: &S,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_step: f64,
    max_steps: usize,
    mut on_step: F,
) -> std::result::Result<(f64, Vec<f64>), Error>
where
    S: OdeSystem,
    F: FnMut(f64, f64, &[f64], &[f64], &[Vec<f64>]) -> bool,
{
    let dim = sys.dim();
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; dim];
    sys.eval(t, &y, &mut k1);

    // Starting step from the derivative scale.
    let d0: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-10);
    let d1: f64 = k1.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-10);
    let mut h = dir * (0.01 * d0 / d1).min(max_step).min((t_end - t0).abs().max(1e-30));

    for _ in 0..max_steps {
        if (t - t_end) * dir >= 0.0 {
            return Ok((t, y));
        }
        if (t + h - t_end) * dir > 0.0 {
            h = t_end - t;
        }
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::ToleranceFailure { t });
        }
        let attempt = dp54_attempt(sys, t, &y, h, &k1, rel_tol, abs_tol);
        if attempt.err <= 1.0 {
            let keep_going = on_step(t, h, &y, &attempt.y1, &attempt.k);
            t += h;
            y = attempt.y1;
            k1.copy_from_slice(&attempt.k[6]); // FSAL
            if !keep_going {
                return Ok((t, y));
            }
            let fac = (0.9 * attempt.err.powf(-0.2)).clamp(0.2, 5.0);
            h = (h * fac).clamp(-max_step, max_step);
        } else {
            let fac = (0.9 * attempt.err.powf(-0.2)).clamp(0.2, 1.0);
            h *= fac;
        }
    }
    Err(Error::ToleranceFailure { t })
}

struct NBodyOde<'a> {
    sys: &'a MassSystem,
}

impl OdeSystem for NBodyOde<'_> {
    fn dim(&self) -> usize {
        4 * self.sys.n() + 2
    }

    fn eval(&self, _t: f64, y: &[f64], dydt: &mut [f64]) {
        let n = self.sys.n();
        let (positions, momenta) = unpack_bodies(n, y);
        let g = forces_unchecked(&positions, self.sys);
        let mut inertia = 0.0;
        let mut angular = 0.0;
        for k in 0..n {
            inertia += self.sys.mass(k) * dot(positions[k], positions[k]);
            angular += wedge(positions[k], momenta[k]);
            dydt[2 * k] = momenta[k].re / self.sys.mass(k);
            dydt[2 * k + 1] = momenta[k].im / self.sys.mass(k);
            dydt[2 * n + 2 * k] = g[k].re;
            dydt[2 * n + 2 * k + 1] = g[k].im;
        }
        dydt[4 * n] = 1.0 / inertia;
        dydt[4 * n + 1] = angular / inertia;
    }
}

fn unpack_bodies(n: usize, y: &[f64]) -> (Vec<Planar>, Vec<Planar>) {
    let positions = (0..n).map(|k| Planar::new(y[2 * k], y[2 * k + 1])).collect();
    let momenta = (0..n)
        .map(|k| Planar::new(y[2 * n + 2 * k], y[2 * n + 2 * k + 1]))
        .collect();
    (positions, momenta)
}

fn unpack(n: usize, t: f64, y: &[f64]) -> AugmentedState {
    let (positions, momenta) = unpack_bodies(n, y);
    AugmentedState {
        phase: PhaseState::new(positions, momenta, t),
        tau: y[4 * n],
        theta: y[4 * n + 1],
    }
}

fn pack(state: &PhaseState, tau: f64, theta: f64) -> Vec<f64> {
    let n = state.n();
    let mut y = vec![0.0; 4 * n + 2];
    for k in 0..n {
        y[2 * k] = state.positions[k].re;
        y[2 * k + 1] = state.positions[k].im;
        y[2 * n + 2 * k] = state.momenta[k].re;
        y[2 * n + 2 * k + 1] = state.momenta[k].im;
    }
    y[4 * n] = tau;
    y[4 * n + 1] = theta;
    y
}

fn min_pair_distance(positions: &[Planar]) -> f64 {
    let mut best = f64::INFINITY;
    for j in 0..positions.len() {
        for k in j + 1..positions.len() {
            best = best.min((positions[j] - positions[k]).norm());
        }
    }
    best
}

/// Integrate the augmented n-body system from a barycentric state.
///
/// Collision and escape terminations are normal outcomes recorded on the
/// trajectory; a step-size underflow terminates with `ToleranceFailure`.
pub fn integrate(
    initial: &PhaseState,
    sys: &MassSystem,
    controls: &IntegrationControls,
) -> Result<Trajectory> {
    let state0 = reduce_to_barycenter(initial, sys);
    let drift = state0
        .positions
        .iter()
        .zip(initial.positions.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    let scale = initial
        .positions
        .iter()
        .map(|q| q.norm())
        .fold(0.0f64, f64::max);
    if drift > 1e-9 * scale.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "initial state is not barycentric (offset {drift:.3e}); reduce it first"
        )));
    }

    // Reject states already inside the collision guard.
    system::forces(&state0, sys)?;

    let inertia0 = moment_of_inertia(&state0.positions, sys);
    let collision_cutoff = controls
        .collision_radius
        .unwrap_or(1e-6 * inertia0.sqrt());
    let escape_inertia = controls.escape_factor * inertia0;

    let ode = NBodyOde { sys };
    let n = sys.n();
    let y0 = pack(&state0, 0.0, 0.0);
    let t0 = state0.time;

    let mut samples = vec![AugmentedState {
        phase: state0.clone(),
        tau: 0.0,
        theta: 0.0,
    }];
    let mut dense: Vec<DenseSegment> = Vec::new();
    let mut termination = Termination::TimeLimit;

    let result = drive_adaptive(
        &ode,
        t0,
        &y0,
        controls.t_end,
        controls.rel_tol,
        controls.abs_tol,
        controls.max_step,
        controls.max_steps,
        |t_step, h, y_before, y1, k| {
            let seg = DenseSegment {
                t0: t_step,
                h,
                cont: dense_coefficients(y_before, y1, h, k),
            };
            let state1 = unpack(n, t_step + h, y1);
            let min_r = min_pair_distance(&state1.phase.positions);
            let scale_cut =
                crate::system::COLLISION_SCALE * moment_of_inertia(&state1.phase.positions, sys).sqrt();
            let cutoff = collision_cutoff.max(scale_cut);
            if min_r <= cutoff {
                // Localize the first crossing on the dense interpolant.
                let gap = |t: f64| {
                    let mut y = vec![0.0; y1.len()];
                    seg.eval_into(t, &mut y);
                    let (pos, _) = unpack_bodies(n, &y);
                    let cut = collision_cutoff
                        .max(crate::system::COLLISION_SCALE * moment_of_inertia(&pos, sys).sqrt());
                    min_pair_distance(&pos) - cut
                };
                let t_hit = if gap(t_step) > 0.0 {
                    crate::numeric::bisect_newton(
                        gap,
                        t_step,
                        t_step + h,
                        1e-10 * (t_step + h).abs().max(1.0),
                        0.0,
                    )
                } else {
                    t_step
                };
                let mut y_hit = vec![0.0; y1.len()];
                seg.eval_into(t_hit, &mut y_hit);
                samples.push(unpack(n, t_hit, &y_hit));
                if controls.dense_output {
                    dense.push(seg);
                }
                termination = Termination::Collision;
                return false;
            }

            samples.push(state1.clone());
            if controls.dense_output {
                dense.push(seg);
            }
            if moment_of_inertia(&state1.phase.positions, sys) >= escape_inertia {
                termination = Termination::Escape;
                return false;
            }
            true
        },
    );

    if let Err(Error::ToleranceFailure { .. }) = result {
        termination = Termination::ToleranceFailure;
    } else {
        result?;
    }

    Ok(Trajectory {
        system: sys.clone(),
        samples,
        termination,
        dense,
    })
}
