//! Error conditions shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A pair distance fell below the resolvable threshold.
    #[error("collision singularity: r({j},{k}) = {r:.3e} below threshold {threshold:.3e}")]
    CollisionSingularity {
        j: usize,
        k: usize,
        r: f64,
        threshold: f64,
    },

    /// The first-integral machinery is undefined at exponent 2.
    #[error("degenerate exponent a = {a}: the moment-of-inertia first integral requires a != 2")]
    DegenerateExponent { a: f64 },

    /// No sign change of Phi(I) + 2B inside the scanned bracket.
    #[error("no root of Phi(I) = -2B bracketed in [{lo:.3e}, {hi:.3e}]")]
    NoRoot { lo: f64, hi: f64 },

    /// A shape transform was asked for at I <= 0.
    #[error("zero or negative moment of inertia I = {inertia:.3e}; input state is corrupt")]
    ZeroInertia { inertia: f64 },

    /// The pair-product route produced rho^2 < 0, signalling an inconsistent measure input.
    #[error("rho^2 = {rho2:.3e} < 0 from the pair products; measure input is inconsistent")]
    NegativeRhoSquared { rho2: f64 },

    /// B < C^2 beyond tolerance.
    #[error("Sundman violation: B = {b:.6e} < C^2 = {c2:.6e}")]
    SundmanViolation { b: f64, c2: f64 },

    /// An inverse-similarity precondition failed.
    #[error("similarity precondition violated: {0}")]
    PreconditionViolated(String),

    /// All pair differences vanish; no similarity factor exists.
    #[error("degenerate shape: all pair differences vanish")]
    DegenerateShape,

    /// The requested quantity is undefined at a central configuration.
    #[error("central configuration (rho = {rho:.3e}): candidate momenta are undefined")]
    CentralConfiguration { rho: f64 },

    /// The collinear scan found no sign change.
    #[error("root not bracketed: no sign change in the collinear scan over [{lo:.1e}, {hi:.1e}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    /// No cell of the contour grid crosses the level.
    #[error("empty contour: no cell crossing for level {level:.6e} inside the window")]
    EmptyContour { level: f64 },

    /// Too few points for the requested fit.
    #[error("insufficient points for the series fit: found {found}, need {needed}")]
    InsufficientPoints { found: usize, needed: usize },

    /// The trajectory never left the initial size regime.
    #[error("not asymptotic: I grew only by factor {growth:.3e} (need >= 100)")]
    NotAsymptotic { growth: f64 },

    /// Step-size underflow in the adaptive controller.
    #[error("tolerance failure: step size underflow at t = {t:.6e}")]
    ToleranceFailure { t: f64 },

    /// Construction-time validation failure.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
