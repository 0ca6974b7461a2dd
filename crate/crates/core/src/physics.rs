//! Physical constants and closed-form helpers that sit outside the linearized
//! dynamics: thermal occupation, Kittel-mode tuning, vacuum optomechanical
//! coupling and the cavity–magnon supermode splitting.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact).
pub const K_B: f64 = 1.380_649e-23;
/// Gyromagnetic ratio of the YIG Kittel mode, rad/(s·T) (γ/2π = 28 GHz/T).
pub const GYROMAGNETIC_RATIO: f64 = TAU * 28.0e9;

/// Mean thermal occupation `1 / (exp(ħω / k_B T) - 1)` of a bosonic mode at
/// angular frequency `omega` and temperature `temperature` (kelvin).
pub fn bose_einstein(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain {
            quantity: "mode frequency",
            value: omega,
        });
    }
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::Domain {
            quantity: "temperature",
            value: temperature,
        });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega / (K_B * temperature);
    // expm1 overflows to +inf for optical modes at millikelvin, giving 0.
    Ok(1.0 / x.exp_m1())
}

/// Kittel-mode angular frequency `γB` for a bias field in tesla.
pub fn magnon_frequency_from_field(field: f64) -> Result<f64> {
    if !(field >= 0.0 && field.is_finite()) {
        return Err(Error::Domain {
            quantity: "bias field",
            value: field,
        });
    }
    Ok(GYROMAGNETIC_RATIO * field)
}

/// Bias field in tesla that tunes the Kittel mode to `omega`.
pub fn field_for_magnon_frequency(omega: f64) -> Result<f64> {
    if !(omega >= 0.0 && omega.is_finite()) {
        return Err(Error::Domain {
            quantity: "magnon frequency",
            value: omega,
        });
    }
    Ok(omega / GYROMAGNETIC_RATIO)
}

/// Vacuum optomechanical coupling `g0 = ω_cav x_zpf / L`.
pub fn vacuum_optomech_coupling(omega_cav: f64, x_zpf: f64, length: f64) -> Result<f64> {
    for (quantity, value) in [
        ("cavity frequency", omega_cav),
        ("zero-point amplitude", x_zpf),
        ("cavity length", length),
    ] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Domain { quantity, value });
        }
    }
    Ok(omega_cav * x_zpf / length)
}

/// Supermode frequencies `(ω + g, ω - g)` of a resonant cavity–magnon pair.
pub fn supermode_frequencies(omega: f64, coupling: f64) -> (f64, f64) {
    (omega + coupling, omega - coupling)
}
