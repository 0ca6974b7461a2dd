//! Steady-state entanglement of a driven hybrid opto-magno-mechanical system:
//! one optical cavity and two microwave cavities share a mechanical
//! resonator, and each microwave cavity hosts a YIG sphere whose Kittel mode
//! is driven directly.
//!
//! The pipeline is
//! [`model::solve_steady_state`] → [`model::build_drift`] /
//! [`model::build_diffusion`] → [`gaussian::is_stable`] →
//! [`gaussian::solve_lyapunov`] → [`gaussian::log_negativity`], wrapped for
//! single points and parameter grids by [`sweep`].
//!
//! All frequencies and rates are angular (rad/s); temperatures are in kelvin.

pub mod calibration;
pub mod error;
pub mod gaussian;
pub mod model;
pub mod physics;
pub mod sweep;

pub use error::{Error, Result};
pub use gaussian::{BipartiteCm, CovarianceMatrix, EntanglementResult};
pub use model::{DetuningMode, LinearizedSystem, Mode, SteadyState, SystemConfig};
pub use sweep::{
    run_point, run_sweep, PointResult, PointStatus, SweepAxis, SweepResult, SweepSpec,
};
