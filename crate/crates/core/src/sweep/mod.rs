//! Single-point and grid evaluation of the full pipeline, producing
//! stability-masked entanglement maps.

mod grid;
mod param;
mod strip;

pub use grid::{
    fingerprint, run_point, run_stability_map, run_sweep, run_sweep_serial, Execution, PointResult,
    PointStatus, Provenance, Scale, SweepAxis, SweepResult, SweepSpec,
};
pub use param::{Parameter, Quantity};
pub use strip::{
    unstable_strip_width, unstable_strip_width_at, unstable_strip_width_near,
    unstable_strip_width_within,
};
