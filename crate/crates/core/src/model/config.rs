use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six bosonic modes, in the quadrature ordering of the drift matrix:
/// `(X_a, Y_a, X_b, Y_b, X_A1, Y_A1, X_m1, Y_m1, X_A2, Y_A2, X_m2, Y_m2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// Optical cavity `a`.
    Optical,
    /// Mechanical resonator `b`.
    Mechanical,
    /// Microwave cavity `A1`.
    Cavity1,
    /// Kittel magnon `m1`.
    Magnon1,
    /// Microwave cavity `A2`.
    Cavity2,
    /// Kittel magnon `m2`.
    Magnon2,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::Optical,
        Mode::Mechanical,
        Mode::Cavity1,
        Mode::Magnon1,
        Mode::Cavity2,
        Mode::Magnon2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Optical => "a",
            Mode::Mechanical => "b",
            Mode::Cavity1 => "A1",
            Mode::Magnon1 => "m1",
            Mode::Cavity2 => "A2",
            Mode::Magnon2 => "m2",
        }
    }

    /// Mirror image under exchange of the two microwave subsystems.
    pub fn swapped(self) -> Mode {
        match self {
            Mode::Cavity1 => Mode::Cavity2,
            Mode::Cavity2 => Mode::Cavity1,
            Mode::Magnon1 => Mode::Magnon2,
            Mode::Magnon2 => Mode::Magnon1,
            other => other,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.label() == s.trim())
            .ok_or_else(|| {
                Error::Argument(format!(
                    "unknown mode `{s}` (expected one of a, b, A1, m1, A2, m2)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeParams {
    /// Eigenfrequency, rad/s.
    pub frequency: f64,
    /// Amplitude decay rate, rad/s.
    pub decay: f64,
}

/// Whether the stored cavity detunings already include the static mechanical
/// shift (`Effective`, Δ̃) or are measured from the bare resonance (`Bare`, Δ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetuningMode {
    Effective,
    Bare,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalDrive {
    /// Drive strength Ω₀, rad/s.
    pub rabi: f64,
    /// Detuning of the optical cavity from the drive, rad/s.
    pub detuning: f64,
}

/// A microwave tone driving one YIG sphere. The same tone sets both the
/// detuning of the host cavity and the detuning of the magnon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MicrowaveDrive {
    pub rabi: f64,
    pub cavity_detuning: f64,
    pub magnon_detuning: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Drives {
    pub mode: DetuningMode,
    pub optical: OpticalDrive,
    pub microwave: [MicrowaveDrive; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    /// Single-photon radiation-pressure coupling of the optical cavity, g_ab.
    pub optomechanical: f64,
    /// Microwave cavity–mechanics couplings g_A1b, g_A2b.
    pub cavity_mechanical: [f64; 2],
    /// Magnetic-dipole magnon–cavity couplings g_1, g_2.
    pub magnon_cavity: [f64; 2],
}

/// Frozen output of `calibration::calibrate_cavity_mechanical_coupling` on the
/// default parameter set, rad/s (10^-0.875).
pub const CALIBRATED_CAVITY_MECHANICAL_COUPLING: f64 = 0.133_352_143_216_332_4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Indexed by [`Mode::index`].
    pub modes: [ModeParams; 6],
    pub drives: Drives,
    pub couplings: Couplings,
    /// Bath temperature, kelvin.
    pub temperature: f64,
}

impl SystemConfig {
    /// The experimentally motivated parameter set: a 370 THz optical cavity,
    /// 10 GHz microwave cavities and magnons, a 10 MHz mechanical resonator,
    /// g_ab = 1.2 κ_b, the red-sideband optical drive and resonant microwave
    /// drives, at 10 mK.
    pub fn default_point() -> Self {
        let omega_b = TAU * 10e6;
        let kappa_b = TAU * 100.0;
        let mw = |frequency| ModeParams {
            frequency,
            decay: 0.1 * omega_b,
        };
        SystemConfig {
            modes: [
                ModeParams {
                    frequency: TAU * 370e12,
                    decay: 0.4 * omega_b,
                },
                ModeParams {
                    frequency: omega_b,
                    decay: kappa_b,
                },
                mw(TAU * 10e9),
                mw(TAU * 10e9),
                mw(TAU * 10e9),
                mw(TAU * 10e9),
            ],
            drives: Drives {
                mode: DetuningMode::Effective,
                optical: OpticalDrive {
                    rabi: 1.43e12,
                    detuning: omega_b,
                },
                microwave: [MicrowaveDrive {
                    rabi: 7.13e14,
                    cavity_detuning: 0.0,
                    magnon_detuning: 0.0,
                }; 2],
            },
            couplings: Couplings {
                optomechanical: 1.2 * kappa_b,
                cavity_mechanical: [CALIBRATED_CAVITY_MECHANICAL_COUPLING; 2],
                magnon_cavity: [TAU * 1.7e6; 2],
            },
            temperature: 0.01,
        }
    }

    pub fn mode(&self, mode: Mode) -> &ModeParams {
        &self.modes[mode.index()]
    }

    pub fn mode_mut(&mut self, mode: Mode) -> &mut ModeParams {
        &mut self.modes[mode.index()]
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        for mode in Mode::ALL {
            let p = self.mode(mode);
            if !(p.frequency > 0.0 && p.frequency.is_finite()) {
                return bad(format!(
                    "eigenfrequency of {mode} must be positive, got {}",
                    p.frequency
                ));
            }
            if !(p.decay > 0.0 && p.decay.is_finite()) {
                return bad(format!("decay of {mode} must be positive, got {}", p.decay));
            }
        }
        let rabis = [
            self.drives.optical.rabi,
            self.drives.microwave[0].rabi,
            self.drives.microwave[1].rabi,
        ];
        if rabis.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
            return bad(format!(
                "drive strengths must be non-negative, got {rabis:?}"
            ));
        }
        let detunings = [
            self.drives.optical.detuning,
            self.drives.microwave[0].cavity_detuning,
            self.drives.microwave[0].magnon_detuning,
            self.drives.microwave[1].cavity_detuning,
            self.drives.microwave[1].magnon_detuning,
        ];
        if detunings.iter().any(|d| !d.is_finite()) {
            return bad("detunings must be finite".into());
        }
        let c = &self.couplings;
        let couplings = [
            c.optomechanical,
            c.cavity_mechanical[0],
            c.cavity_mechanical[1],
            c.magnon_cavity[0],
            c.magnon_cavity[1],
        ];
        if couplings.iter().any(|g| !(*g >= 0.0 && g.is_finite())) {
            return bad(format!("couplings must be non-negative, got {couplings:?}"));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return bad(format!(
                "temperature must be non-negative, got {}",
                self.temperature
            ));
        }
        Ok(())
    }

    /// The same system with microwave subsystems 1 and 2 exchanged.
    pub fn swapped_subsystems(&self) -> SystemConfig {
        let mut out = self.clone();
        out.modes.swap(Mode::Cavity1.index(), Mode::Cavity2.index());
        out.modes.swap(Mode::Magnon1.index(), Mode::Magnon2.index());
        out.drives.microwave.swap(0, 1);
        out.couplings.cavity_mechanical.swap(0, 1);
        out.couplings.magnon_cavity.swap(0, 1);
        out
    }
}
