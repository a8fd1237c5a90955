//! The five central configurations of the planar three-body problem, their
//! critical configurational-measure values, and level sets of the measure
//! over the pinned shape chart.
//!
//! The chart pins `q1 = (-1, 0)`, `q2 = (1, 0)` and sweeps the free vertex
//! `(x, y)`; the measure is invariant under translation, rotation, and
//! scaling, so this loses no shapes away from the pinned binary collision.

use crate::contour::{extract_level_set, CriticalPath, Window};
use crate::error::Error;
use crate::fujiwara::frame_from_positions;
use crate::geom::{planar, Planar};
use crate::numeric::{bisect_newton, geometric_brackets};
use crate::system::{
    moment_of_inertia_pair_form, pair_distances, potential_energy_unchecked, MassSystem,
};
use crate::Result;

/// Guard radius around the pinned vertices on the chart.
pub const CHART_GUARD_RADIUS: f64 = 1e-3;

/// The shape chart with two pinned bodies.
#[derive(Debug, Clone)]
pub struct ShapeChart {
    sys: MassSystem,
}

impl ShapeChart {
    pub fn new(sys: MassSystem) -> Result<Self> {
        if sys.n() != 3 {
            return Err(Error::InvalidInput(format!(
                "shape chart requires exactly 3 bodies, got {}",
                sys.n()
            )));
        }
        Ok(Self { sys })
    }

    pub fn system(&self) -> &MassSystem {
        &self.sys
    }

    /// Chart positions `(-1,0), (1,0), (x,y)`.
    pub fn positions(&self, x: f64, y: f64) -> [Planar; 3] {
        [planar(-1.0, 0.0), planar(1.0, 0.0), planar(x, y)]
    }

    /// Configurational measure `mu(x, y) = U I^(a/2)` at a chart point.
    pub fn mu(&self, x: f64, y: f64) -> Result<f64> {
        for (vx, vy) in [(-1.0, 0.0), (1.0, 0.0)] {
            let d2 = (x - vx) * (x - vx) + (y - vy) * (y - vy);
            if d2 < 1e-24 {
                return Err(Error::CollisionSingularity {
                    j: if vx < 0.0 { 0 } else { 1 },
                    k: 2,
                    r: d2.sqrt(),
                    threshold: 1e-12,
                });
            }
        }
        let q = self.positions(x, y);
        let u = potential_energy_unchecked(&q, &self.sys);
        let inertia = moment_of_inertia_pair_form(&q, &self.sys);
        Ok(u * inertia.powf(self.sys.exponent() / 2.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralConfigKind {
    EquilateralPlus,
    EquilateralMinus,
    /// Rectilinear class k: mass k sits in the middle.
    Rectilinear1,
    Rectilinear2,
    Rectilinear3,
}

impl CentralConfigKind {
    pub fn label(self) -> &'static str {
        match self {
            CentralConfigKind::EquilateralPlus => "EquilateralPlus",
            CentralConfigKind::EquilateralMinus => "EquilateralMinus",
            CentralConfigKind::Rectilinear1 => "Rectilinear1",
            CentralConfigKind::Rectilinear2 => "Rectilinear2",
            CentralConfigKind::Rectilinear3 => "Rectilinear3",
        }
    }

    fn rectilinear(middle_index: usize) -> Self {
        match middle_index {
            1 => CentralConfigKind::Rectilinear1,
            2 => CentralConfigKind::Rectilinear2,
            3 => CentralConfigKind::Rectilinear3,
            _ => unreachable!(),
        }
    }
}

/// One solved central configuration, normalized to `I = 1` about the barycenter.
#[derive(Debug, Clone)]
pub struct CentralConfigResult {
    pub kind: CentralConfigKind,
    pub shape: [Planar; 3],
    pub mu_c: f64,
    /// Residual magnitude at the output; vanishes at a true solution.
    pub rho_check: f64,
}

fn normalized_result(kind: CentralConfigKind, positions: &[Planar; 3], sys: &MassSystem) -> CentralConfigResult {
    let frame = frame_from_positions(positions, sys).expect("non-degenerate configuration");
    let shape = frame.shape();
    CentralConfigResult {
        kind,
        shape: [frame.coords[0], frame.coords[1], frame.coords[2]],
        mu_c: shape.measure,
        rho_check: shape.rho,
    }
}

/// Both equilateral central configurations (one per orientation).
pub fn equilateral_configs(sys: &MassSystem) -> [CentralConfigResult; 2] {
    let h = 3f64.sqrt() / 2.0;
    let plus = [planar(0.0, 0.0), planar(1.0, 0.0), planar(0.5, h)];
    let minus = [planar(0.0, 0.0), planar(1.0, 0.0), planar(0.5, -h)];
    [
        normalized_result(CentralConfigKind::EquilateralPlus, &plus, sys),
        normalized_result(CentralConfigKind::EquilateralMinus, &minus, sys),
    ]
}

/// Solve the rectilinear central configuration with the named middle mass.
///
/// The free parameter is the distance ratio `s = r(mid,right) / r(left,mid)`;
/// the configuration is central exactly when the per-body accelerations are
/// an affine function of position along the line, which gives a scalar
/// residual with a single sign change on `(0, inf)` for `a > 0`.
pub fn euler_collinear(sys: &MassSystem, middle_index: usize) -> Result<CentralConfigResult> {
    if sys.n() != 3 || !(1..=3).contains(&middle_index) {
        return Err(Error::InvalidInput(format!(
            "euler_collinear: need 3 bodies and middle index in 1..=3, got middle {middle_index}"
        )));
    }
    // Ordering along the line for middle mass k: (m_(k-1), m_k, m_(k+1)) cyclically.
    let mid = middle_index - 1;
    let left = (mid + 2) % 3;
    let right = (mid + 1) % 3;
    let a = sys.exponent();
    let (m_left, m_mid, m_right) = (sys.mass(left), sys.mass(mid), sys.mass(right));

    let residual = |s: f64| {
        // Bodies at 0, 1, 1 + s; accelerations along the axis.
        let r_lm = 1.0f64;
        let r_mr = s;
        let r_lr = 1.0 + s;
        let acc_left = m_mid / r_lm.powf(a + 1.0) + m_right / r_lr.powf(a + 1.0);
        let acc_mid = -m_left / r_lm.powf(a + 1.0) + m_right / r_mr.powf(a + 1.0);
        let acc_right = -m_left / r_lr.powf(a + 1.0) - m_mid / r_mr.powf(a + 1.0);
        (acc_mid - acc_left) * r_lr - (acc_right - acc_left) * r_lm
    };

    let brackets = geometric_brackets(residual, 1e-6, 1e6, 1201);
    let (lo, hi) = *brackets.first().ok_or(Error::RootNotBracketed {
        lo: 1e-6,
        hi: 1e6,
    })?;
    let s = if lo == hi {
        lo
    } else {
        bisect_newton(residual, lo, hi, 0.0, 1e-15)
    };

    let mut positions = [Planar::new(0.0, 0.0); 3];
    positions[left] = planar(0.0, 0.0);
    positions[mid] = planar(1.0, 0.0);
    positions[right] = planar(1.0 + s, 0.0);
    Ok(normalized_result(
        CentralConfigKind::rectilinear(middle_index),
        &positions,
        sys,
    ))
}

/// The critical values of the configurational measure.
#[derive(Debug, Clone, Copy)]
pub struct CriticalMeasures {
    /// `mu_c^(k)` at the rectilinear configuration with mass k in the middle.
    pub rectilinear: [f64; 3],
    /// Measure of the equilateral configurations, always the global minimum.
    pub equilateral: f64,
}

pub fn critical_measures(sys: &MassSystem) -> Result<CriticalMeasures> {
    let mut rectilinear = [0.0; 3];
    for k in 1..=3 {
        rectilinear[k - 1] = euler_collinear(sys, k)?.mu_c;
    }
    Ok(CriticalMeasures {
        rectilinear,
        equilateral: equilateral_configs(sys)[0].mu_c,
    })
}

/// Extract the level set `mu(x, y) = level` over the window.
pub fn critical_path_contour(
    chart: &ShapeChart,
    level: f64,
    window: Window,
    grid_n: usize,
) -> Result<CriticalPath> {
    if !(level > 0.0) {
        return Err(Error::InvalidInput(format!(
            "contour level must be positive, got {level}"
        )));
    }
    let field = |x: f64, y: f64| chart.mu(x, y).unwrap_or(f64::NAN);
    extract_level_set(
        field,
        level,
        window,
        grid_n,
        &[
            (-1.0, 0.0, CHART_GUARD_RADIUS),
            (1.0, 0.0, CHART_GUARD_RADIUS),
        ],
    )
}

/// Shape classes distinguished by the audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    Equilateral,
    /// Collinear and central: the rectilinear central configuration.
    RectilinearCC,
    OtherCollinear,
    Isosceles,
    Generic,
}

impl ShapeClass {
    pub fn label(self) -> &'static str {
        match self {
            ShapeClass::Equilateral => "Equilateral",
            ShapeClass::RectilinearCC => "RectilinearCC",
            ShapeClass::OtherCollinear => "OtherCollinear",
            ShapeClass::Isosceles => "Isosceles",
            ShapeClass::Generic => "Generic",
        }
    }
}

/// A classified shape with the raw quantities behind the call, so callers
/// can re-threshold.
#[derive(Debug, Clone, Copy)]
pub struct ShapeClassification {
    pub class: ShapeClass,
    pub delta: f64,
    pub rho: f64,
    /// Pairwise distance gaps `|r_jk - r_kl|` over the three cyclic pairs.
    pub gaps: [f64; 3],
}

pub const SHAPE_CLASS_TOL: f64 = 1e-9;

/// Classify a three-body shape at the default thresholds.
pub fn classify_shape(positions: &[Planar], sys: &MassSystem) -> Result<ShapeClassification> {
    classify_shape_with_tol(positions, sys, SHAPE_CLASS_TOL)
}

/// Classification with an explicit threshold on `|Delta|`, `rho`, and the gaps.
pub fn classify_shape_with_tol(
    positions: &[Planar],
    sys: &MassSystem,
    tol: f64,
) -> Result<ShapeClassification> {
    let frame = frame_from_positions(positions, sys)?;
    let shape = frame.shape();
    let r = pair_distances(&frame.coords);
    let gaps = [
        (r[0] - r[1]).abs(),
        (r[1] - r[2]).abs(),
        (r[2] - r[0]).abs(),
    ];
    let class = if shape.delta.abs() <= tol {
        if shape.rho <= tol {
            ShapeClass::RectilinearCC
        } else {
            ShapeClass::OtherCollinear
        }
    } else if gaps.iter().all(|&g| g <= tol) {
        ShapeClass::Equilateral
    } else if gaps.iter().any(|&g| g <= tol) {
        ShapeClass::Isosceles
    } else {
        ShapeClass::Generic
    };
    Ok(ShapeClassification {
        class,
        delta: shape.delta,
        rho: shape.rho,
        gaps,
    })
}
