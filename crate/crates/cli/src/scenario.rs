//! Scenario files: flat `key = value` lines with dotted section prefixes and
//! JSON-literal values.
//!
//! ```text
//! # ten rotations of the triangular relative equilibrium
//! masses = [1.0, 1.0, 1.0]
//! exponent = 1.0
//! initial.preset = "lagrange_circular"
//! initial.side = 1.0
//! integrator.t_end = 36.28
//! output.stride = 10
//! ```

use serde::Deserialize;
use serde_json::Value;
use tribody_core::integrate::IntegrationControls;
use tribody_core::presets;
use tribody_core::system::{reduce_to_barycenter, MassSystem, PhaseState};
use tribody_core::Planar;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub masses: Vec<f64>,
    pub exponent: f64,
    pub initial: InitialSpec,
    #[serde(default)]
    pub integrator: IntegratorSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub preset: PresetName,
    /// Triangle side for the equilateral presets.
    #[serde(default = "default_side")]
    pub side: f64,
    /// Multiplier on the relative-equilibrium angular velocity.
    #[serde(default = "default_one")]
    pub omega_scale: f64,
    /// Middle mass (1-based) for the collinear preset.
    #[serde(default = "default_middle")]
    pub middle_index: usize,
    #[serde(default)]
    pub positions: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub momenta: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetName {
    LagrangeCircular,
    EulerCollinearSpin,
    EquilateralFreefall,
    Custom,
}

impl PresetName {
    pub fn label(self) -> &'static str {
        match self {
            PresetName::LagrangeCircular => "lagrange_circular",
            PresetName::EulerCollinearSpin => "euler_collinear_spin",
            PresetName::EquilateralFreefall => "equilateral_freefall",
            PresetName::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_max_step")]
    pub max_step: f64,
}

impl Default for IntegratorSpec {
    fn default() -> Self {
        Self {
            t_end: default_t_end(),
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            max_step: default_max_step(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Keep every `stride`-th integration sample.
    #[serde(default = "default_one_usize")]
    pub stride: usize,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            stride: default_one_usize(),
        }
    }
}

fn default_side() -> f64 {
    1.0
}
fn default_one() -> f64 {
    1.0
}
fn default_middle() -> usize {
    2
}
fn default_t_end() -> f64 {
    10.0
}
fn default_rel_tol() -> f64 {
    1e-12
}
fn default_abs_tol() -> f64 {
    1e-14
}
fn default_max_step() -> f64 {
    f64::INFINITY
}
fn default_one_usize() -> usize {
    1
}

/// Parse the `key = value` format into a scenario.
///
/// Errors carry the offending line or field by name.
pub fn parse_scenario(text: &str) -> Result<Scenario, String> {
    let mut root = serde_json::Map::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value_text) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got `{line}`", lineno + 1))?;
        let key = key.trim();
        let value: Value = serde_json::from_str(value_text.trim())
            .map_err(|e| format!("line {}: bad value for `{key}`: {e}", lineno + 1))?;
        insert_dotted(&mut root, key, value)
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
    }
    let scenario: Scenario = serde_json::from_value(Value::Object(root))
        .map_err(|e| format!("scenario: {e}"))?;
    validate(&scenario)?;
    Ok(scenario)
}

fn insert_dotted(
    map: &mut serde_json::Map<String, Value>,
    key: &str,
    value: Value,
) -> Result<(), String> {
    match key.split_once('.') {
        None => {
            map.insert(key.to_string(), value);
            Ok(())
        }
        Some((head, rest)) => {
            let entry = map
                .entry(head.to_string())
                .or_insert_with(|| Value::Object(serde_json::Map::new()));
            match entry {
                Value::Object(inner) => insert_dotted(inner, rest, value),
                _ => Err(format!("`{head}` is both a value and a section")),
            }
        }
    }
}

fn validate(s: &Scenario) -> Result<(), String> {
    if s.masses.len() < 3 {
        return Err(format!("masses: need at least 3, got {}", s.masses.len()));
    }
    for (k, &m) in s.masses.iter().enumerate() {
        if !(m > 0.0) {
            return Err(format!("masses[{k}] = {m}: mass must be positive"));
        }
    }
    if !(s.exponent > 0.0) {
        return Err(format!("exponent = {}: must be positive", s.exponent));
    }
    if !(s.initial.side > 0.0) {
        return Err(format!("initial.side = {}: must be positive", s.initial.side));
    }
    if !(1..=s.masses.len()).contains(&s.initial.middle_index) {
        return Err(format!(
            "initial.middle_index = {}: out of range",
            s.initial.middle_index
        ));
    }
    if !(s.integrator.rel_tol > 0.0) || !(s.integrator.abs_tol > 0.0) {
        return Err("integrator tolerances must be positive".into());
    }
    if s.output.stride == 0 {
        return Err("output.stride = 0: must be at least 1".into());
    }
    if s.initial.preset == PresetName::Custom {
        let n = s.masses.len();
        match (&s.initial.positions, &s.initial.momenta) {
            (Some(q), Some(p)) if q.len() == n && p.len() == n => {}
            _ => {
                return Err(format!(
                    "initial.positions/initial.momenta: custom preset needs {n} entries each"
                ))
            }
        }
    }
    Ok(())
}

impl Scenario {
    pub fn system(&self) -> Result<MassSystem, String> {
        MassSystem::new(&self.masses, self.exponent).map_err(|e| e.to_string())
    }

    /// Construct the initial state for the scenario's preset.
    pub fn initial_state(&self, sys: &MassSystem) -> Result<PhaseState, String> {
        let state = match self.initial.preset {
            PresetName::LagrangeCircular => {
                let mut state =
                    presets::lagrange_relative_equilibrium(sys, self.initial.side)
                        .map_err(|e| e.to_string())?;
                if self.initial.omega_scale != 1.0 {
                    for p in state.momenta.iter_mut() {
                        *p *= self.initial.omega_scale;
                    }
                }
                state
            }
            PresetName::EulerCollinearSpin => {
                presets::euler_collinear_spin(sys, self.initial.middle_index)
                    .map_err(|e| e.to_string())?
            }
            PresetName::EquilateralFreefall => {
                presets::equilateral_freefall(sys, self.initial.side).map_err(|e| e.to_string())?
            }
            PresetName::Custom => {
                let positions = self
                    .initial
                    .positions
                    .as_ref()
                    .expect("validated")
                    .iter()
                    .map(|&[x, y]| Planar::new(x, y))
                    .collect();
                let momenta = self
                    .initial
                    .momenta
                    .as_ref()
                    .expect("validated")
                    .iter()
                    .map(|&[x, y]| Planar::new(x, y))
                    .collect();
                reduce_to_barycenter(&PhaseState::new(positions, momenta, 0.0), sys)
            }
        };
        Ok(state)
    }

    pub fn controls(&self) -> IntegrationControls {
        let mut controls = IntegrationControls::to(self.integrator.t_end);
        controls.rel_tol = self.integrator.rel_tol;
        controls.abs_tol = self.integrator.abs_tol;
        controls.max_step = self.integrator.max_step;
        controls
    }
}
