//! Physical parameterization of the six-mode system and its linearization
//! about the semiclassical steady state.

mod config;
mod linear;
mod steady_state;

pub use config::{
    Couplings, DetuningMode, Drives, MicrowaveDrive, Mode, ModeParams, OpticalDrive, SystemConfig,
    CALIBRATED_CAVITY_MECHANICAL_COUPLING,
};
pub use linear::{
    build_diffusion, build_drift, effective_couplings, linearize, EffectiveCouplings,
    LinearizedSystem,
};
pub use steady_state::{
    solve_steady_state, CavityDetunings, SteadyState, PICARD_DAMPING, PICARD_MAX_ITERATIONS,
    PICARD_TOLERANCE,
};
