//! Conjecture audits: the candidate condition and its ingredients `f1`/`f2`,
//! series and limit checks along the equal-mass critical path, the
//! `dr/dtau = 0` event finder, orbit-level homography classification, and
//! asymptotic-exponent fits for escaping constant-measure runs.

use crate::central_config::{
    classify_shape_with_tol, euler_collinear, ShapeChart, ShapeClass,
};
use crate::contour::CriticalPath;
use crate::error::Error;
use crate::fujiwara::{
    self, frame_from_positions, g_of_coords, to_fujiwara, FujiwaraFrame,
};
use crate::geom::{planar, Planar};
use crate::integrate::Trajectory;
use crate::numeric::{self, bisect_newton};
use crate::phi::{categorize_orbit, OrbitCategory};
use crate::system::{MassSystem, CYCLIC};
use crate::Result;

/// Quadratic coefficient of `y^2(x)` on the equal-mass critical path: 29/7.
pub const PATH_Y2_QUADRATIC: f64 = 29.0 / 7.0;
/// Quartic coefficient of the same series: -7491/343.
pub const PATH_Y2_QUARTIC: f64 = -7491.0 / 343.0;
/// Leading coefficient of `rho^2(x)` on the path: 58.
pub const PATH_RHO2_QUADRATIC: f64 = 58.0;
/// Limit of `f1/rho^4 + f2/rho^2` at the rectilinear configuration.
pub fn path_condition_limit() -> f64 {
    -7491.0 / (1624.0 * 2f64.sqrt())
}
/// Equal-mass near-equilateral limit of `f1/rho^2 + f2`: `9(a+2)/2`.
pub fn equilateral_limit_equal_masses(exponent: f64) -> f64 {
    9.0 * (exponent + 2.0) / 2.0
}

fn distances_checked(frame: &FujiwaraFrame) -> Result<[f64; 3]> {
    let r = frame.distances();
    for &(j, k, l) in &CYCLIC {
        if !(r[l] > 0.0) {
            return Err(Error::CollisionSingularity {
                j,
                k,
                r: r[l],
                threshold: 0.0,
            });
        }
    }
    Ok(r)
}

/// `f1 = (a+2) m1 m2 m3 Delta^2 sum (m_l / r_jk^(a+4)) (1/r_kl^(a+2) - 1/r_lj^(a+2))^2`.
///
/// Non-negative everywhere; zero exactly on collinear shapes (the area
/// factor) and on shapes whose two brackets vanish, e.g. equilateral.
pub fn f1_of(frame: &FujiwaraFrame, sys: &MassSystem) -> Result<f64> {
    let r = distances_checked(frame)?;
    let a = sys.exponent();
    let delta = frame.shape().delta;
    let mut acc = 0.0;
    for &(j, k, l) in &CYCLIC {
        let bracket = r[j].powf(-(a + 2.0)) - r[k].powf(-(a + 2.0));
        acc += sys.mass(l) / r[l].powf(a + 4.0) * bracket * bracket;
    }
    Ok((a + 2.0) * sys.mass_product() * delta * delta * acc)
}

/// `f2 = (M / (m1 m2 m3)) (2 a mu - sum (m_j + m_k) / r_jk^(a+2))`.
pub fn f2_of(frame: &FujiwaraFrame, sys: &MassSystem, mu: f64) -> Result<f64> {
    let r = distances_checked(frame)?;
    let a = sys.exponent();
    let mut pair_sum = 0.0;
    for &(j, k, l) in &CYCLIC {
        pair_sum += (sys.mass(j) + sys.mass(k)) / r[l].powf(a + 2.0);
    }
    Ok(sys.total_mass() / sys.mass_product() * (2.0 * a * mu - pair_sum))
}

/// Inputs to the candidate condition at one sample.
#[derive(Debug, Clone)]
pub struct ConditionInputs {
    pub frame: FujiwaraFrame,
    /// Physical moment of inertia `I(q)` of the sample.
    pub inertia_phys: f64,
    pub b_constant: f64,
    pub angular_momentum: f64,
    pub epsilon: f64,
}

/// Residual of the candidate condition at one sample:
///
/// `I^((2-a)/2) + (m1 m2 m3 / M)^2 (B - C^2) (f1/rho^4 + f2/rho^2)
///  + 2 epsilon C kappa / rho`.
///
/// Zero is necessary for the non-homographic candidate to solve the shape
/// equations of motion; a nonzero value certifies rejection at the sample.
pub fn condition_residual(inputs: &ConditionInputs, sys: &MassSystem, mu: f64) -> Result<f64> {
    let gap = inputs.b_constant - inputs.angular_momentum * inputs.angular_momentum;
    if gap < -1e-9 {
        return Err(Error::SundmanViolation {
            b: inputs.b_constant,
            c2: inputs.angular_momentum * inputs.angular_momentum,
        });
    }
    let g = g_of_coords(&inputs.frame.coords, sys, mu)?;
    let rho2: f64 = sys.mass_product() / sys.total_mass()
        * g.iter()
            .zip(sys.masses())
            .map(|(gk, m)| gk.norm_sqr() / m)
            .sum::<f64>();
    let rho = rho2.sqrt();
    if rho <= 1e-12 * (sys.exponent() * mu).max(1.0) {
        return Err(Error::CentralConfiguration { rho });
    }
    let f1 = f1_of(&inputs.frame, sys)?;
    let f2 = f2_of(&inputs.frame, sys, mu)?;
    let a = sys.exponent();
    let mass_ratio = sys.mass_product() / sys.total_mass();
    let kappa = (mass_ratio * gap.max(0.0)).sqrt();
    Ok(inputs.inertia_phys.powf((2.0 - a) / 2.0)
        + mass_ratio * mass_ratio * gap * (f1 / (rho2 * rho2) + f2 / rho2)
        + 2.0 * inputs.epsilon * inputs.angular_momentum * kappa / rho)
}

/// Sign choice for the candidate condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonChoice {
    pub epsilon: f64,
    /// Set when `C = 0`: the sign rule does not apply and both signs should
    /// be evaluated downstream.
    pub evaluate_both: bool,
}

/// `epsilon C = -|C|`; for `C = 0` returns +1 and requests dual evaluation.
pub fn epsilon_rule(angular_momentum: f64) -> EpsilonChoice {
    if angular_momentum == 0.0 {
        EpsilonChoice {
            epsilon: 1.0,
            evaluate_both: true,
        }
    } else {
        EpsilonChoice {
            epsilon: -angular_momentum.signum(),
            evaluate_both: false,
        }
    }
}

/// Least-squares series coefficients of `y^2 = c2 x^2 + c4 x^4`.
#[derive(Debug, Clone, Copy)]
pub struct SeriesFit {
    pub c2: f64,
    pub c4: f64,
    pub rms_residual: f64,
    pub points_used: usize,
}

/// Fit the near-origin branch of a critical-path contour.
pub fn series_fit_critical_path(contour: &CriticalPath, max_x: f64) -> Result<SeriesFit> {
    let points: Vec<(f64, f64)> = contour
        .points()
        .filter(|&(x, _)| x.abs() <= max_x && x != 0.0)
        .map(|(x, y)| (x, y * y))
        .collect();
    let has_both_signs =
        points.iter().any(|p| p.0 > 0.0) && points.iter().any(|p| p.0 < 0.0);
    if points.len() < 20 || !has_both_signs {
        return Err(Error::InsufficientPoints {
            found: points.len(),
            needed: 20,
        });
    }
    let (c2, c4, rms) = numeric::fit2(&points, |x| x * x, |x| x.powi(4));
    Ok(SeriesFit {
        c2,
        c4,
        rms_residual: rms,
        points_used: points.len(),
    })
}

/// Solve for the positive near-origin branch `y(x)` of `mu(x, y) = level`.
///
/// Refined to machine precision: the condition combinations read off the
/// path have transverse derivatives of order `1/rho^4`, so anything looser
/// than ulp-level placement pollutes the small-x limits.
pub fn refine_path_y(chart: &ShapeChart, level: f64, x: f64) -> Result<f64> {
    let f = |y: f64| chart.mu(x, y).map(|m| m - level).unwrap_or(f64::NAN);
    let mut y_prev = 1e-9;
    let mut f_prev = f(y_prev);
    let steps = 400;
    for i in 1..=steps {
        let y = i as f64 / steps as f64;
        let fy = f(y);
        if f_prev.is_finite() && fy.is_finite() && f_prev * fy <= 0.0 {
            return Ok(bisect_newton(f, y_prev, y, 1e-18, 2.0 * f64::EPSILON * level));
        }
        y_prev = y;
        f_prev = fy;
    }
    Err(Error::NoRoot { lo: 0.0, hi: 1.0 })
}

/// Shape quantities evaluated exactly on the critical path.
#[derive(Debug, Clone, Copy)]
pub struct PathSample {
    pub x: f64,
    pub y: f64,
    pub rho2: f64,
    pub f1: f64,
    pub f1_over_rho2_plus_f2: f64,
    pub f1_over_rho4_plus_f2_over_rho2: f64,
}

/// Evaluate `rho^2`, `f1`, and the two condition combinations at the refined
/// path points `y(x)` for each requested `x`.
pub fn series_limits_on_path(chart: &ShapeChart, x_values: &[f64]) -> Result<Vec<PathSample>> {
    let sys = chart.system().clone();
    let level = chart.mu(0.0, 0.0)?;
    let mut out = Vec::with_capacity(x_values.len());
    for &x in x_values {
        let y = refine_path_y(chart, level, x)?;
        let frame = frame_from_positions(&chart.positions(x, y), &sys)?;
        let shape = frame.shape();
        let mu = shape.measure;
        let rho2 = shape.rho * shape.rho;
        let f1 = f1_of(&frame, &sys)?;
        let f2 = f2_of(&frame, &sys, mu)?;
        out.push(PathSample {
            x,
            y,
            rho2,
            f1,
            f1_over_rho2_plus_f2: f1 / rho2 + f2,
            f1_over_rho4_plus_f2_over_rho2: f1 / (rho2 * rho2) + f2 / rho2,
        });
    }
    Ok(out)
}

/// The default radius ladder for near-equilateral extrapolation:
/// 0.04 halved six times.
pub fn default_radius_ladder() -> Vec<f64> {
    (0..7).map(|k| 0.04 / 2f64.powi(k)).collect()
}

/// Extrapolated limit of `f1/rho^2 + f2` approaching the equilateral
/// configuration along a fixed direction of the chart `q3 = (x, sqrt(3) + y)`.
pub fn equilateral_limit(
    sys: &MassSystem,
    direction_angle: f64,
    radii: &[f64],
) -> Result<f64> {
    let mut samples = Vec::with_capacity(radii.len());
    for &r in radii {
        let x = r * direction_angle.cos();
        let y = r * direction_angle.sin();
        let positions = [planar(-1.0, 0.0), planar(1.0, 0.0), planar(x, 3f64.sqrt() + y)];
        let frame = frame_from_positions(&positions, sys)?;
        let shape = frame.shape();
        let mu = shape.measure;
        let rho2 = shape.rho * shape.rho;
        let value = f1_of(&frame, sys)? / rho2 + f2_of(&frame, sys, mu)?;
        samples.push((r, value));
    }
    Ok(numeric::neville_to_zero(&samples))
}

/// Closed-form vertical-approach limit of `f1/rho^2 + f2` at the equilateral
/// configuration (`x = 0`, `y -> 0`).
pub fn equilateral_limit_vertical(sys: &MassSystem) -> f64 {
    let (m1, m2, _m3) = (sys.mass(0), sys.mass(1), sys.mass(2));
    let a = sys.exponent();
    let pair_sum = sys.mass(0) * sys.mass(1)
        + sys.mass(1) * sys.mass(2)
        + sys.mass(2) * sys.mass(0);
    3.0 * (a + 2.0) * (m1 + m2) * pair_sum * pair_sum
        / (4.0 * sys.mass_product() * (m1 * m1 + m1 * m2 + m2 * m2))
        * (pair_sum / sys.total_mass()).powf(a / 2.0)
}

/// Closed-form horizontal-approach limit (`y = 0`, `x -> 0`).
pub fn equilateral_limit_horizontal(sys: &MassSystem) -> f64 {
    let (m1, m2, m3) = (sys.mass(0), sys.mass(1), sys.mass(2));
    let a = sys.exponent();
    let pair_sum = m1 * m2 + m2 * m3 + m3 * m1;
    let quad = m1 * m1 + m2 * m2 + 4.0 * m3 * m3 - m1 * m2 + 2.0 * m2 * m3 + 2.0 * m3 * m1;
    3.0 * (a + 2.0) * (m1 + m2 + 4.0 * m3) * pair_sum * pair_sum
        / (4.0 * sys.mass_product() * quad)
        * (pair_sum / sys.total_mass()).powf(a / 2.0)
}

/// One localized `dr_jk/dtau = 0` event.
#[derive(Debug, Clone, Copy)]
pub struct Event {
    pub tau0: f64,
    /// 1-based body pair whose distance is stationary.
    pub pair: (usize, usize),
    pub class: ShapeClass,
}

/// Result of scanning a frame sequence for distance-stationary events.
#[derive(Debug, Clone)]
pub struct EventScan {
    pub events: Vec<Event>,
    /// Channels whose `dr/dtau` vanishes identically (frozen shapes).
    pub zero_channels: [bool; 3],
}

/// Classification threshold used at interpolated event shapes; looser than
/// the exact-shape default because the event state is reconstructed from
/// sampled frames.
pub const EVENT_CLASS_TOL: f64 = 1e-6;

/// Locate and classify sign changes of `dr_jk/dtau` along a frame sequence.
pub fn event_finder(frames: &[FujiwaraFrame], sys: &MassSystem) -> EventScan {
    event_finder_with_tol(frames, sys, EVENT_CLASS_TOL)
}

pub fn event_finder_with_tol(
    frames: &[FujiwaraFrame],
    sys: &MassSystem,
    class_tol: f64,
) -> EventScan {
    let n = frames.len();
    let mut channels = vec![[0.0f64; 3]; n];
    let mut scale = 0.0f64;
    for (i, frame) in frames.iter().enumerate() {
        channels[i] = fujiwara::dr_dtau_general(frame, sys);
        for v in channels[i] {
            scale = scale.max(v.abs());
        }
    }
    let zero_tol = 1e-8 * scale.max(1.0);
    let mut zero_channels = [false; 3];
    let mut events = Vec::new();
    for l in 0..3 {
        let max_l = channels.iter().map(|c| c[l].abs()).fold(0.0, f64::max);
        if max_l <= zero_tol {
            zero_channels[l] = true;
            continue;
        }
        for i in 0..n.saturating_sub(1) {
            let (v0, v1) = (channels[i][l], channels[i + 1][l]);
            let lo = i.saturating_sub(1);
            let hi = (i + 2).min(n - 1);
            let tau0 = if v0 * v1 < 0.0 {
                // Interpolate the channel on a 4-sample window and bisect.
                let window: Vec<(f64, f64)> =
                    (lo..=hi).map(|m| (frames[m].tau, channels[m][l])).collect();
                let value_at = |tau: f64| neville_value(&window, tau);
                bisect_newton(
                    value_at,
                    frames[i].tau,
                    frames[i + 1].tau,
                    1e-10 * frames[i + 1].tau.abs().max(1.0),
                    0.0,
                )
            } else if v1 == 0.0 && v0 != 0.0 {
                // The zero landed exactly on a sample.
                frames[i + 1].tau
            } else {
                continue;
            };
            // Reconstruct the shape at the event by the same interpolation.
            let mut positions = [Planar::new(0.0, 0.0); 3];
            for (b, position) in positions.iter_mut().enumerate() {
                let xs: Vec<(f64, f64)> = (lo..=hi)
                    .map(|m| (frames[m].tau, frames[m].coords[b].re))
                    .collect();
                let ys: Vec<(f64, f64)> = (lo..=hi)
                    .map(|m| (frames[m].tau, frames[m].coords[b].im))
                    .collect();
                *position = Planar::new(neville_value(&xs, tau0), neville_value(&ys, tau0));
            }
            let class = classify_shape_with_tol(&positions, sys, class_tol)
                .map(|c| c.class)
                .unwrap_or(ShapeClass::Generic);
            let (j, k, _) = CYCLIC[l];
            events.push(Event {
                tau0,
                pair: (j + 1, k + 1),
                class,
            });
        }
    }
    events.sort_by(|a, b| a.tau0.partial_cmp(&b.tau0).unwrap());
    EventScan {
        events,
        zero_channels,
    }
}

/// Polynomial interpolation of tabulated `(x, y)` at `x0`.
fn neville_value(samples: &[(f64, f64)], x0: f64) -> f64 {
    let n = samples.len();
    let mut tableau: Vec<f64> = samples.iter().map(|&(_, y)| y).collect();
    for level in 1..n {
        for i in 0..n - level {
            let (x_i, _) = samples[i];
            let (x_ik, _) = samples[i + level];
            tableau[i] = ((x0 - x_ik) * tableau[i] - (x0 - x_i) * tableau[i + 1]) / (x_i - x_ik);
        }
    }
    tableau[0]
}

/// Orbit-level verdict of the audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Homographic,
    NonHomographicCandidateRejected,
    NotConstantMeasure,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Homographic => "Homographic",
            Verdict::NonHomographicCandidateRejected => "NonHomographicCandidateRejected",
            Verdict::NotConstantMeasure => "NotConstantMeasure",
        }
    }
}

/// Condition-residual series for one sign choice.
#[derive(Debug, Clone)]
pub struct ResidualSeries {
    pub epsilon: f64,
    /// `(tau, residual)` at every sample where the condition is defined.
    pub values: Vec<(f64, f64)>,
}

/// Per-orbit audit of the conjecture's case analysis.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub mu_mean: f64,
    pub mu_drift: f64,
    pub b_mean: f64,
    pub b_drift: f64,
    pub angular_momentum: f64,
    pub sundman_gap: f64,
    pub category: OrbitCategory,
    pub homography_score: f64,
    pub condition_residuals: Vec<ResidualSeries>,
    pub events: EventScan,
    pub verdict: Verdict,
}

/// Relative measure drift separating constant-measure orbits from generic ones.
pub const MU_DRIFT_TOL: f64 = 1e-6;
/// Sundman-gap threshold for the homographic verdict.
pub const HOMOGRAPHIC_GAP_TOL: f64 = 1e-8;
/// Shape-speed threshold for the homographic verdict.
pub const HOMOGRAPHY_SCORE_TOL: f64 = 1e-6;

/// Audit an integrated trajectory against the conjecture's case analysis.
pub fn audit(traj: &Trajectory) -> Result<ConjectureReport> {
    let sys = &traj.system;
    let diags = traj.diagnostics();
    let stats = |values: &mut dyn Iterator<Item = f64>| -> (f64, f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut count = 0usize;
        for v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            count += 1;
        }
        let mean = sum / count as f64;
        (mean, min, max)
    };
    let (mu_mean, mu_min, mu_max) = stats(&mut diags.iter().map(|d| d.measure));
    let mu_drift = (mu_max - mu_min) / mu_mean.abs().max(1.0);
    let (b_mean, b_min, b_max) = stats(&mut diags.iter().map(|d| d.b_constant));
    let b_drift = (b_max - b_min) / b_mean.abs().max(1.0);
    let angular = diags.iter().map(|d| d.angular_momentum).sum::<f64>() / diags.len() as f64;
    let sundman_gap = b_mean - angular * angular;
    let category = categorize_orbit(&diags[0], sys)?;

    let frames = to_fujiwara(traj)?;
    let homography_score = frames
        .iter()
        .map(|f| f.shape_speed(sys))
        .fold(0.0, f64::max);

    // The condition analysis presumes a constant measure; a drifting orbit
    // is classified and returned without it.
    let constant_measure = mu_drift <= MU_DRIFT_TOL;
    let choice = epsilon_rule(angular);
    let mut signs = vec![choice.epsilon];
    if choice.evaluate_both {
        signs.push(-choice.epsilon);
    }
    let mut condition_residuals = Vec::new();
    for &epsilon in &signs {
        let mut values = Vec::new();
        if constant_measure {
            for (frame, diag) in frames.iter().zip(diags.iter()) {
                let inputs = ConditionInputs {
                    frame: frame.clone(),
                    inertia_phys: diag.inertia,
                    b_constant: b_mean,
                    angular_momentum: angular,
                    epsilon,
                };
                if let Ok(residual) = condition_residual(&inputs, sys, mu_mean) {
                    values.push((frame.tau, residual));
                }
            }
        }
        condition_residuals.push(ResidualSeries { epsilon, values });
    }

    let events = if constant_measure {
        event_finder(&frames, sys)
    } else {
        EventScan {
            events: Vec::new(),
            zero_channels: [false; 3],
        }
    };

    let verdict = if !constant_measure {
        Verdict::NotConstantMeasure
    } else if sundman_gap.abs() <= HOMOGRAPHIC_GAP_TOL * b_mean.abs().max(1.0)
        && homography_score <= HOMOGRAPHY_SCORE_TOL
    {
        Verdict::Homographic
    } else {
        Verdict::NonHomographicCandidateRejected
    };

    Ok(ConjectureReport {
        mu_mean,
        mu_drift,
        b_mean,
        b_drift,
        angular_momentum: angular,
        sundman_gap,
        category,
        homography_score,
        condition_residuals,
        events,
        verdict,
    })
}

/// Asymptotics of an escaping constant-measure run.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticsReport {
    /// Fictitious time at which the escape completes, estimated by quadrature.
    pub tau_infinity: f64,
    /// Measured `d rho / d tau` over the late samples (reported, not asserted).
    pub rho_slope: f64,
    /// Fitted exponent `p` in `sqrt(I) ~ c / (tau_inf - tau)^p`.
    pub growth_exponent: f64,
}

/// Estimate `tau_infinity` and the inertia growth exponent for `H >= 0`.
///
/// The tail `int dI / (I sqrt(8HI + 8 mu sqrt(I) - 4B))` is evaluated by
/// quadrature after the substitution `I = I_end / v^4`, which makes the
/// integrand smooth on `(0, 1]` in both energy regimes.
pub fn asymptotics_check(traj: &Trajectory) -> Result<AsymptoticsReport> {
    let sys = &traj.system;
    if sys.exponent() != 1.0 {
        return Err(Error::InvalidInput(format!(
            "asymptotics formulas are for exponent 1, got {}",
            sys.exponent()
        )));
    }
    let diags = traj.diagnostics();
    let inertia0 = diags[0].inertia;
    let inertia_end = diags.last().unwrap().inertia;
    if inertia_end < 100.0 * inertia0 {
        return Err(Error::NotAsymptotic {
            growth: inertia_end / inertia0,
        });
    }
    let energy = diags.iter().map(|d| d.energy).sum::<f64>() / diags.len() as f64;
    if energy < -1e-8 * diags[0].potential.abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "asymptotics require H >= 0, got H = {energy}"
        )));
    }
    let energy = energy.max(0.0);
    let mu = diags.iter().map(|d| d.measure).sum::<f64>() / diags.len() as f64;
    let b = diags.iter().map(|d| d.b_constant).sum::<f64>() / diags.len() as f64;

    let sqrt_ie = inertia_end.sqrt();
    let h_term = 8.0 * energy * inertia_end;
    let tail = if h_term > 1e-10 * 8.0 * mu * sqrt_ie {
        numeric::simpson(
            |v| {
                let d = h_term + 8.0 * mu * sqrt_ie * v * v - 4.0 * b * v.powi(4);
                4.0 * v / d.sqrt()
            },
            0.0,
            1.0,
            4096,
        )
    } else {
        numeric::simpson(
            |v| 4.0 / (8.0 * mu * sqrt_ie - 4.0 * b * v * v).sqrt(),
            0.0,
            1.0,
            4096,
        )
    };
    let tau_end = traj.last().tau;
    let tau_infinity = tau_end + tail;

    // Fit log sqrt(I) against -log(tau_inf - tau) over the asymptotic regime.
    let mut fit_points = Vec::new();
    for (sample, diag) in traj.samples.iter().zip(diags.iter()) {
        let remaining = tau_infinity - sample.tau;
        if diag.inertia >= 100.0 * inertia0 && remaining > 0.0 {
            fit_points.push((-remaining.ln(), 0.5 * diag.inertia.ln()));
        }
    }
    if fit_points.len() < 8 {
        return Err(Error::NotAsymptotic {
            growth: inertia_end / inertia0,
        });
    }
    let growth_exponent = numeric::linear_slope(&fit_points);

    let frames = to_fujiwara(traj)?;
    let tail_start = frames.len() * 3 / 4;
    let rho_points: Vec<(f64, f64)> = frames[tail_start..]
        .iter()
        .map(|f| (f.tau, f.shape().rho))
        .collect();
    let rho_slope = if rho_points.len() >= 2 {
        numeric::linear_slope(&rho_points)
    } else {
        0.0
    };

    Ok(AsymptoticsReport {
        tau_infinity,
        rho_slope,
        growth_exponent,
    })
}

/// Convenience: the level of the equal-mass critical path through the
/// rectilinear configuration, computed from the collinear solver.
pub fn rectilinear_level(sys: &MassSystem) -> Result<f64> {
    Ok(euler_collinear(sys, 2)?.mu_c)
}
