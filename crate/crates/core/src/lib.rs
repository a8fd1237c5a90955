//! Planar three-body dynamics laboratory.
//!
//! The crate covers the full pipeline from homogeneous-potential equations of
//! motion through shape-coordinate diagnostics: adaptive integration with
//! fictitious-time quadratures, Fujiwara shape coordinates and momenta,
//! central-configuration solvers, configurational-measure level sets, and the
//! orbit audits built on top of them.

pub mod central_config;
pub mod contour;
pub mod error;
pub mod fujiwara;
pub mod geom;
pub mod integrate;
pub mod numeric;
pub mod phi;
pub mod presets;
pub mod saari;
pub mod system;

pub use central_config::{CentralConfigKind, CentralConfigResult, CriticalMeasures, ShapeChart};
pub use contour::CriticalPath;
pub use error::Error;
pub use fujiwara::FujiwaraFrame;
pub use geom::Planar;
pub use integrate::{AugmentedState, IntegrationControls, Termination, Trajectory};
pub use phi::{OrbitCategory, PhiProfile};
pub use saari::ConjectureReport;
pub use system::{MassSystem, PhaseState, ScalarDiagnostics};

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;
