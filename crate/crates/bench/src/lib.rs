//! Fixtures for the criterion benchmarks.

use omm_core::model::linearize;
use omm_core::sweep::Parameter;
use omm_core::{LinearizedSystem, Mode, SweepAxis, SweepSpec, SystemConfig};

/// Drift and diffusion at the default operating point.
pub fn default_linearization() -> LinearizedSystem {
    linearize(&SystemConfig::default_point())
        .expect("default point linearizes")
        .1
}

/// A 1-D optical detuning sweep over the red sideband with `count` points.
pub fn sideband_sweep(count: usize) -> SweepSpec {
    let base = SystemConfig::default_point();
    let wb = base.mode(Mode::Mechanical).frequency;
    SweepSpec {
        base,
        axes: vec![SweepAxis::linear(
            vec![Parameter::CavityDetuning {
                cavity: 0,
                effective: true,
            }],
            0.0,
            2.0 * wb,
            count,
        )],
        pairs: vec![(Mode::Magnon1, Mode::Magnon2)],
    }
}
