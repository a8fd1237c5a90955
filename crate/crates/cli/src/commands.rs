//! Command implementations. Exit codes form the contract:
//! 0 ok, 2 parse/input, 3 integration failure, 4 empty result,
//! 5 acceptance breach.

use std::path::{Path, PathBuf};

use serde_json::json;
use tribody_core::central_config::{
    critical_measures, critical_path_contour, equilateral_configs, euler_collinear, ShapeChart,
};
use tribody_core::contour::Window;
use tribody_core::fujiwara::frame_from_positions;
use tribody_core::integrate::{integrate, Termination, Trajectory};
use tribody_core::numeric::fit2;
use tribody_core::phi::{phi_of_inertia, PhiProfile};
use tribody_core::saari::{
    self, equilateral_limit, series_fit_critical_path, series_limits_on_path,
};
use tribody_core::system::{scalar_diagnostics, MassSystem};
use tribody_core::Error as CoreError;

use crate::output::{atomic_write, fmt, Csv};
use crate::scenario::{parse_scenario, PresetName, Scenario};

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

pub type CmdResult = Result<Vec<PathBuf>, CliError>;

/// Global options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Options {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub tol: TolOverrides,
}

/// Named tolerance overrides from repeated `--tol KEY=VALUE` flags.
#[derive(Debug, Clone, Default)]
pub struct TolOverrides {
    /// Integrator relative tolerance.
    pub rel: Option<f64>,
    /// Integrator absolute tolerance.
    pub abs: Option<f64>,
    /// Series gate on quadratic coefficients.
    pub quad: Option<f64>,
    /// Series gate on quartic coefficients.
    pub quartic: Option<f64>,
    /// Series gate on extrapolated limits.
    pub limit: Option<f64>,
}

impl TolOverrides {
    pub fn parse(flags: &[String]) -> Result<Self, CliError> {
        let mut out = Self::default();
        for flag in flags {
            let (key, value) = flag
                .split_once('=')
                .ok_or_else(|| CliError::parse(format!("--tol {flag}: expected KEY=VALUE")))?;
            let value: f64 = value
                .parse()
                .map_err(|e| CliError::parse(format!("--tol {key}: {e}")))?;
            match key {
                "rel" => out.rel = Some(value),
                "abs" => out.abs = Some(value),
                "quad" => out.quad = Some(value),
                "quartic" => out.quartic = Some(value),
                "limit" => out.limit = Some(value),
                _ => {
                    return Err(CliError::parse(format!(
                        "--tol {key}: unknown key (rel, abs, quad, quartic, limit)"
                    )))
                }
            }
        }
        Ok(out)
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn run_scenario(
    scenario: &Scenario,
    opts: &Options,
) -> Result<(MassSystem, Trajectory), CliError> {
    let sys = scenario.system().map_err(CliError::parse)?;
    if sys.n() != 3 {
        return Err(CliError::parse(format!(
            "masses: the command line drives exactly 3 bodies, got {}",
            sys.n()
        )));
    }
    let state = scenario.initial_state(&sys).map_err(CliError::parse)?;
    let mut controls = scenario.controls();
    if let Some(rel) = opts.tol.rel {
        controls.rel_tol = rel;
    }
    if let Some(abs) = opts.tol.abs {
        controls.abs_tol = abs;
    }
    let traj = integrate(&state, &sys, &controls).map_err(|e| match e {
        CoreError::ToleranceFailure { .. } => CliError {
            code: 3,
            message: e.to_string(),
        },
        other => CliError::parse(other.to_string()),
    })?;
    if traj.termination == Termination::ToleranceFailure {
        return Err(CliError {
            code: 3,
            message: format!(
                "integration failed: step-size underflow at t = {}",
                traj.last().phase.time
            ),
        });
    }
    Ok((sys, traj))
}

fn scenario_metadata(csv: &mut Csv, scenario: &Scenario, sys: &MassSystem, opts: &Options) {
    csv.comment(&format!("preset = {}", scenario.initial.preset.label()));
    csv.comment(&format!(
        "masses = [{}]",
        scenario
            .masses
            .iter()
            .map(|m| fmt(*m))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    csv.comment(&format!("exponent = {}", fmt(scenario.exponent)));
    csv.comment(&format!("seed = {}", opts.seed));
    if scenario.initial.preset != PresetName::Custom {
        // Presets carry their analytic diagnostics into the header.
        if let Ok(state) = scenario.initial_state(sys) {
            if let Ok(d) = scalar_diagnostics(&state, sys) {
                csv.comment(&format!("expected_mu = {}", fmt(d.measure)));
                csv.comment(&format!("expected_C = {}", fmt(d.angular_momentum)));
                csv.comment(&format!("expected_H = {}", fmt(d.energy)));
            }
        }
    }
}

pub fn cmd_simulate(scenario_path: &Path, opts: &Options) -> CmdResult {
    let scenario = load_scenario(scenario_path)?;
    let (sys, traj) = run_scenario(&scenario, opts)?;

    let mut csv = Csv::new();
    scenario_metadata(&mut csv, &scenario, &sys, opts);
    csv.comment(&format!("termination = {}", traj.termination.label()));
    csv.header(&[
        "t", "tau", "theta", "q1x", "q1y", "q2x", "q2y", "q3x", "q3y", "p1x", "p1y", "p2x",
        "p2y", "p3x", "p3y", "I", "dIdt", "U", "T", "H", "C", "mu", "B",
    ]);
    let stride = scenario.output.stride;
    let last = traj.samples.len() - 1;
    let diags = traj.diagnostics();
    for (i, (sample, diag)) in traj.samples.iter().zip(diags.iter()).enumerate() {
        if i % stride != 0 && i != last {
            continue;
        }
        let mut fields = vec![fmt(sample.phase.time), fmt(sample.tau), fmt(sample.theta)];
        for q in &sample.phase.positions {
            fields.push(fmt(q.re));
            fields.push(fmt(q.im));
        }
        for p in &sample.phase.momenta {
            fields.push(fmt(p.re));
            fields.push(fmt(p.im));
        }
        fields.extend([
            fmt(diag.inertia),
            fmt(diag.inertia_rate),
            fmt(diag.potential),
            fmt(diag.kinetic),
            fmt(diag.energy),
            fmt(diag.angular_momentum),
            fmt(diag.measure),
            fmt(diag.b_constant),
        ]);
        csv.row(&fields);
    }
    let path = opts.out_dir.join("trajectory.csv");
    atomic_write(&path, &csv.finish()).map_err(|e| CliError::parse(e.to_string()))?;
    Ok(vec![path])
}

pub fn cmd_audit(scenario_path: &Path, opts: &Options) -> CmdResult {
    let scenario = load_scenario(scenario_path)?;
    let (_, traj) = run_scenario(&scenario, opts)?;
    let report = saari::audit(&traj).map_err(|e| CliError::parse(e.to_string()))?;

    let events: Vec<_> = report
        .events
        .events
        .iter()
        .map(|e| {
            json!({
                "tau0": e.tau0,
                "pair": format!("{}{}", e.pair.0, e.pair.1),
                "class": e.class.label(),
            })
        })
        .collect();
    let residuals = &report.condition_residuals[0];
    let document = json!({
        "mu_mean": report.mu_mean,
        "mu_drift": report.mu_drift,
        "B_mean": report.b_mean,
        "B_drift": report.b_drift,
        "C": report.angular_momentum,
        "sundman_gap": report.sundman_gap,
        "category": report.category.label(),
        "homography_score": report.homography_score,
        "events": events,
        "condition_residuals": {
            "epsilon": residuals.epsilon,
            "values": residuals.values.iter().map(|(_, v)| *v).collect::<Vec<f64>>(),
        },
        "verdict": report.verdict.label(),
    });
    let path = opts.out_dir.join("report.json");
    let text = serde_json::to_string_pretty(&document).expect("serializable");
    atomic_write(&path, &text).map_err(|e| CliError::parse(e.to_string()))?;
    Ok(vec![path])
}

pub struct CriticalPathArgs {
    pub masses: Vec<f64>,
    pub exponent: f64,
    /// `None` selects every critical level automatically.
    pub level: Option<f64>,
    pub window: Window,
    pub grid_n: usize,
}

pub fn cmd_critical_path(args: &CriticalPathArgs, opts: &Options) -> CmdResult {
    let sys = MassSystem::new(&args.masses, args.exponent).map_err(|e| CliError::parse(e.to_string()))?;
    let chart = ShapeChart::new(sys.clone()).map_err(|e| CliError::parse(e.to_string()))?;

    let levels: Vec<(String, f64)> = match args.level {
        Some(level) => vec![("critical_path.csv".to_string(), level)],
        None => {
            let cm = critical_measures(&sys).map_err(|e| CliError::parse(e.to_string()))?;
            // Distinct critical values only; equal masses collapse to one.
            let mut levels: Vec<f64> = Vec::new();
            for mu_c in cm.rectilinear {
                if !levels.iter().any(|&l| (l - mu_c).abs() <= 1e-9 * mu_c) {
                    levels.push(mu_c);
                }
            }
            levels
                .into_iter()
                .enumerate()
                .map(|(i, l)| (format!("critical_path_{}.csv", i + 1), l))
                .collect()
        }
    };

    let mut written = Vec::new();
    for (name, level) in levels {
        let contour = match critical_path_contour(&chart, level, args.window, args.grid_n) {
            Ok(c) => c,
            Err(CoreError::EmptyContour { .. }) if args.level.is_some() => {
                return Err(CliError {
                    code: 4,
                    message: format!("no contour for level {level} inside the window"),
                });
            }
            Err(e) => return Err(CliError::parse(e.to_string())),
        };
        let mut csv = Csv::new();
        csv.comment(&format!("level = {}", fmt(level)));
        csv.comment(&format!("grid_n = {}", args.grid_n));
        csv.comment(&format!("seed = {}", opts.seed));
        csv.header(&["polyline_id", "x", "y", "mu"]);
        for (id, polyline) in contour.polylines.iter().enumerate() {
            for &(x, y) in polyline {
                let mu = chart.mu(x, y).map_err(|e| CliError::parse(e.to_string()))?;
                csv.row(&[id.to_string(), fmt(x), fmt(y), fmt(mu)]);
            }
        }
        let path = opts.out_dir.join(&name);
        atomic_write(&path, &csv.finish()).map_err(|e| CliError::parse(e.to_string()))?;
        written.push(path);
    }
    Ok(written)
}

pub struct PhiProfileArgs {
    pub energy: f64,
    pub measure: f64,
    pub exponent: f64,
    pub b_constant: f64,
    pub i_range: (f64, f64),
    pub samples: usize,
}

pub fn cmd_phi_profile(args: &PhiProfileArgs, opts: &Options) -> CmdResult {
    if args.exponent == 2.0 {
        return Err(CliError::parse(
            "exponent = 2 is degenerate for the inertia first integral",
        ));
    }
    let mut csv = Csv::new();
    csv.comment(&format!("energy = {}", fmt(args.energy)));
    csv.comment(&format!("measure = {}", fmt(args.measure)));
    csv.comment(&format!("exponent = {}", fmt(args.exponent)));
    csv.comment(&format!("b_constant = {}", fmt(args.b_constant)));
    csv.comment(&format!("seed = {}", opts.seed));
    match PhiProfile::solve(args.energy, args.measure, args.exponent, args.b_constant) {
        Ok(profile) => {
            if let Some(i_min) = profile.i_min {
                csv.comment(&format!("root_i_min = {}", fmt(i_min)));
            }
            if let Some(i_max) = profile.i_max {
                csv.comment(&format!("root_i_max = {}", fmt(i_max)));
            }
        }
        Err(e) => csv.comment(&format!("roots = none ({e})")),
    }
    csv.header(&["I", "phi"]);
    let (lo, hi) = args.i_range;
    for i in 0..args.samples {
        let inertia = lo + (hi - lo) * i as f64 / (args.samples - 1) as f64;
        if inertia <= 0.0 {
            continue;
        }
        let phi = phi_of_inertia(inertia, args.energy, args.measure, args.exponent)
            .map_err(|e| CliError::parse(e.to_string()))?;
        csv.row(&[fmt(inertia), fmt(phi)]);
    }
    let path = opts.out_dir.join("phi_profile.csv");
    atomic_write(&path, &csv.finish()).map_err(|e| CliError::parse(e.to_string()))?;
    Ok(vec![path])
}

pub struct SeriesCheckArgs {
    pub max_x: f64,
    pub grid_n: usize,
}

pub fn cmd_series_check(args: &SeriesCheckArgs, opts: &Options) -> CmdResult {
    let quad_tol = opts.tol.quad.unwrap_or(0.01);
    let quartic_tol = opts.tol.quartic.unwrap_or(0.05);
    let limit_tol = opts.tol.limit.unwrap_or(0.005);

    let sys = MassSystem::equal_unit(1.0);
    let chart = ShapeChart::new(sys.clone()).map_err(|e| CliError::parse(e.to_string()))?;
    let level = saari::rectilinear_level(&sys).map_err(|e| CliError::parse(e.to_string()))?;
    let y_half = (3.0 * args.max_x).max(0.05);
    let contour = critical_path_contour(
        &chart,
        level,
        Window::new(-args.max_x, args.max_x, -y_half, y_half),
        args.grid_n,
    )
    .map_err(|e| CliError::parse(e.to_string()))?;

    let fit = series_fit_critical_path(&contour, args.max_x)
        .map_err(|e| CliError::parse(e.to_string()))?;
    let c2_expected = saari::PATH_Y2_QUADRATIC;
    let c4_expected = saari::PATH_Y2_QUARTIC;

    let rho_points: Vec<(f64, f64)> = contour
        .points()
        .filter(|&(x, _)| x != 0.0 && x.abs() <= args.max_x)
        .map(|(x, y)| {
            let frame = frame_from_positions(&chart.positions(x, y), &sys).unwrap();
            let rho = frame.shape().rho;
            (x, rho * rho)
        })
        .collect();
    let (rho2_fit, _, _) = fit2(&rho_points, |x| x * x, |x| x.powi(4));
    let rho2_expected = saari::PATH_RHO2_QUADRATIC;

    let limit_samples =
        series_limits_on_path(&chart, &[1e-3]).map_err(|e| CliError::parse(e.to_string()))?;
    let limit_fit = limit_samples[0].f1_over_rho4_plus_f2_over_rho2;
    let limit_expected = saari::path_condition_limit();

    let radii = saari::default_radius_ladder();
    let mut eq_limits = Vec::new();
    for i in 0..8 {
        let angle = i as f64 * std::f64::consts::PI / 4.0 + 0.1;
        eq_limits.push(
            equilateral_limit(&sys, angle, &radii).map_err(|e| CliError::parse(e.to_string()))?,
        );
    }
    let eq_expected = saari::equilateral_limit_equal_masses(1.0);
    let eq_fit = eq_limits.iter().sum::<f64>() / eq_limits.len() as f64;
    let eq_rel_err = eq_limits
        .iter()
        .map(|l| (l - eq_expected).abs() / eq_expected)
        .fold(0.0, f64::max);

    let rel = |fit: f64, expected: f64| (fit - expected).abs() / expected.abs();
    let entries = [
        ("c2", fit.c2, c2_expected, rel(fit.c2, c2_expected), quad_tol),
        ("c4", fit.c4, c4_expected, rel(fit.c4, c4_expected), quartic_tol),
        (
            "rho2_c2",
            rho2_fit,
            rho2_expected,
            rel(rho2_fit, rho2_expected),
            quad_tol,
        ),
        (
            "limit_fOverRho",
            limit_fit,
            limit_expected,
            rel(limit_fit, limit_expected),
            limit_tol,
        ),
        ("equilateral_limit", eq_fit, eq_expected, eq_rel_err, limit_tol),
    ];

    let mut document = serde_json::Map::new();
    let mut breaches = Vec::new();
    for (name, fitted, expected, rel_err, tol) in entries {
        document.insert(
            name.to_string(),
            json!({ "fit": fitted, "expected": expected, "rel_err": rel_err }),
        );
        if !(rel_err <= tol) {
            breaches.push(format!("{name}: rel_err {rel_err:.4} > {tol}"));
        }
    }
    let path = opts.out_dir.join("series_check.json");
    let text = serde_json::to_string_pretty(&serde_json::Value::Object(document))
        .expect("serializable");
    atomic_write(&path, &text).map_err(|e| CliError::parse(e.to_string()))?;

    if breaches.is_empty() {
        Ok(vec![path])
    } else {
        Err(CliError {
            code: 5,
            message: breaches.join("; "),
        })
    }
}

pub struct CentralConfigArgs {
    pub masses: Vec<f64>,
    pub exponent: f64,
}

pub fn cmd_central_configs(args: &CentralConfigArgs, opts: &Options) -> CmdResult {
    let sys = MassSystem::new(&args.masses, args.exponent)
        .map_err(|e| CliError::parse(e.to_string()))?;
    let mut configs = equilateral_configs(&sys).to_vec();
    for middle in 1..=3 {
        configs.push(euler_collinear(&sys, middle).map_err(|e| CliError::parse(e.to_string()))?);
    }
    let list: Vec<_> = configs
        .iter()
        .map(|c| {
            json!({
                "kind": c.kind.label(),
                "shape": c.shape.iter().map(|q| vec![q.re, q.im]).collect::<Vec<_>>(),
                "mu_c": c.mu_c,
                "rho_check": c.rho_check,
            })
        })
        .collect();
    let path = opts.out_dir.join("central_configs.json");
    let text =
        serde_json::to_string_pretty(&json!({ "configurations": list })).expect("serializable");
    atomic_write(&path, &text).map_err(|e| CliError::parse(e.to_string()))?;
    Ok(vec![path])
}
