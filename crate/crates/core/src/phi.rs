//! The moment-of-inertia first integral: `Phi(I) = -4HI - 4 mu I^((2-a)/2)`,
//! its turning points `Phi(I) = -2B`, and the orbit categories that follow
//! from the signs of `B` and `H` for exponents below 2.

use crate::error::Error;
use crate::system::{MassSystem, ScalarDiagnostics};
use crate::{numeric, Result};

/// `Phi(I) = -4HI - 4 mu I^((2-a)/2)`; undefined at a = 2.
pub fn phi_of_inertia(inertia: f64, energy: f64, mu: f64, exponent: f64) -> Result<f64> {
    if exponent == 2.0 {
        return Err(Error::DegenerateExponent { a: exponent });
    }
    Ok(-4.0 * energy * inertia - 4.0 * mu * inertia.powf((2.0 - exponent) / 2.0))
}

/// Turning points of the inertia evolution for fixed `(H, mu, a, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiProfile {
    pub energy: f64,
    pub mu: f64,
    pub exponent: f64,
    pub b_constant: f64,
    pub i_min: Option<f64>,
    pub i_max: Option<f64>,
}

/// Relative scan width for root bracketing, in units of the reference inertia.
const SCAN_LO: f64 = 1e-12;
const SCAN_HI: f64 = 1e12;

impl PhiProfile {
    /// Solve `Phi(I) = -2B` for the inertia turning points.
    ///
    /// For `H < 0, B > 0` both roots are returned (equal at a double root);
    /// for `H >= 0, B > 0` only the lower one exists; for `B = 0, a < 2` the
    /// lower turning point is the total collision `I = 0`.
    pub fn solve(energy: f64, mu: f64, exponent: f64, b_constant: f64) -> Result<Self> {
        if exponent == 2.0 {
            return Err(Error::DegenerateExponent { a: exponent });
        }
        if b_constant < 0.0 {
            return Err(Error::InvalidInput(format!(
                "B = {b_constant}: the first-integral constant cannot be negative"
            )));
        }
        let a = exponent;
        let residual = |i: f64| {
            -4.0 * energy * i - 4.0 * mu * i.powf((2.0 - a) / 2.0) + 2.0 * b_constant
        };

        let mut profile = Self {
            energy,
            mu,
            exponent,
            b_constant,
            i_min: None,
            i_max: None,
        };

        if b_constant == 0.0 && a < 2.0 {
            profile.i_min = Some(0.0);
            if energy < 0.0 {
                // Phi = 0 at I = (mu / -H)^(2/a) besides the origin.
                profile.i_max = Some((mu / -energy).powf(2.0 / a));
            }
            return Ok(profile);
        }

        let mut roots: Vec<f64> = numeric::geometric_brackets(residual, SCAN_LO, SCAN_HI, 481)
            .into_iter()
            .map(|(lo, hi)| {
                if lo == hi {
                    lo
                } else {
                    numeric::bisect_newton(residual, lo, hi, 0.0, 1e-13 * b_constant.max(1.0))
                }
            })
            .collect();
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * y.abs());

        match roots.len() {
            0 => {
                // A double root hides from the sign scan: check the interior
                // minimum of the residual directly (H < 0, 0 < a < 2).
                if energy < 0.0 && a < 2.0 {
                    let i_star = ((2.0 - a) * mu / (-2.0 * energy)).powf(2.0 / a);
                    let f_star = residual(i_star);
                    if f_star.abs() <= 1e-9 * b_constant.max(1.0) {
                        profile.i_min = Some(i_star);
                        profile.i_max = Some(i_star);
                        return Ok(profile);
                    }
                }
                Err(Error::NoRoot {
                    lo: SCAN_LO,
                    hi: SCAN_HI,
                })
            }
            _ => {
                profile.i_min = Some(roots[0]);
                if energy < 0.0 {
                    profile.i_max = Some(*roots.last().unwrap());
                }
                Ok(profile)
            }
        }
    }

    pub fn phi(&self, inertia: f64) -> Result<f64> {
        phi_of_inertia(inertia, self.energy, self.mu, self.exponent)
    }
}

/// Orbit categories for constant-measure motion with `0 < a < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitCategory {
    /// `B = 0`: total collision forward or backward in time.
    TotalCollision,
    /// `B > 0, H >= 0`: the system disperses, `I -> infinity`.
    Unbounded,
    /// `B > 0, H < 0`: `I` oscillates between the two turning points.
    Oscillatory,
}

impl OrbitCategory {
    pub fn label(self) -> &'static str {
        match self {
            OrbitCategory::TotalCollision => "A_TotalCollision",
            OrbitCategory::Unbounded => "B_Unbounded",
            OrbitCategory::Oscillatory => "C_Oscillatory",
        }
    }
}

/// Classify a constant-measure orbit from one diagnostic sample.
pub fn categorize_orbit(diag: &ScalarDiagnostics, sys: &MassSystem) -> Result<OrbitCategory> {
    if sys.exponent() >= 2.0 {
        return Err(Error::DegenerateExponent { a: sys.exponent() });
    }
    let b_scale = 2.0 * diag.inertia * diag.kinetic;
    if diag.b_constant.abs() <= 1e-9 * b_scale.max(1.0) {
        Ok(OrbitCategory::TotalCollision)
    } else if diag.energy >= 0.0 {
        Ok(OrbitCategory::Unbounded)
    } else {
        Ok(OrbitCategory::Oscillatory)
    }
}
