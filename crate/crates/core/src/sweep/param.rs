use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DetuningMode, Mode, SystemConfig};

/// A scalar field of [`SystemConfig`] addressable by name. The names double as
/// configuration-file keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Parameter {
    Frequency(Mode),
    Decay(Mode),
    /// 0 = optical drive, 1 and 2 = microwave drives.
    Rabi(usize),
    /// Cavity detuning: 0 = optical, 1 and 2 = microwave cavities.
    CavityDetuning {
        cavity: usize,
        effective: bool,
    },
    MagnonDetuning(usize),
    Optomechanical,
    CavityMechanical(usize),
    MagnonCavity(usize),
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Angular frequency or rate, rad/s.
    Rate,
    /// Kelvin.
    Temperature,
}

const CAVITY_LABELS: [&str; 3] = ["a", "A1", "A2"];

impl Parameter {
    pub fn all() -> Vec<Parameter> {
        let mut out = Vec::new();
        out.extend(Mode::ALL.map(Parameter::Frequency));
        out.extend(Mode::ALL.map(Parameter::Decay));
        out.extend((0..3).map(Parameter::Rabi));
        for effective in [true, false] {
            out.extend((0..3).map(|cavity| Parameter::CavityDetuning { cavity, effective }));
        }
        out.extend((1..=2).map(Parameter::MagnonDetuning));
        out.push(Parameter::Optomechanical);
        out.extend((1..=2).map(Parameter::CavityMechanical));
        out.extend((1..=2).map(Parameter::MagnonCavity));
        out.push(Parameter::Temperature);
        out
    }

    pub fn name(&self) -> String {
        match *self {
            Parameter::Frequency(m) => format!("omega_{}", m.label()),
            Parameter::Decay(m) => format!("kappa_{}", m.label()),
            Parameter::Rabi(i) => format!("Omega_{i}"),
            Parameter::CavityDetuning {
                cavity,
                effective: true,
            } => format!("Delta_eff_{}", CAVITY_LABELS[cavity]),
            Parameter::CavityDetuning {
                cavity,
                effective: false,
            } => format!("Delta_{}", CAVITY_LABELS[cavity]),
            Parameter::MagnonDetuning(i) => format!("Delta_m{i}"),
            Parameter::Optomechanical => "g_ab".into(),
            Parameter::CavityMechanical(i) => format!("g_A{i}b"),
            Parameter::MagnonCavity(i) => format!("g_{i}"),
            Parameter::Temperature => "temperature".into(),
        }
    }

    pub fn quantity(&self) -> Quantity {
        match self {
            Parameter::Temperature => Quantity::Temperature,
            _ => Quantity::Rate,
        }
    }

    /// Detuning parameters exist in only one of the two detuning conventions.
    pub fn required_mode(&self) -> Option<DetuningMode> {
        match self {
            Parameter::CavityDetuning {
                effective: true, ..
            } => Some(DetuningMode::Effective),
            Parameter::CavityDetuning {
                effective: false, ..
            } => Some(DetuningMode::Bare),
            _ => None,
        }
    }

    pub fn get(&self, cfg: &SystemConfig) -> f64 {
        match *self {
            Parameter::Frequency(m) => cfg.mode(m).frequency,
            Parameter::Decay(m) => cfg.mode(m).decay,
            Parameter::Rabi(0) => cfg.drives.optical.rabi,
            Parameter::Rabi(i) => cfg.drives.microwave[i - 1].rabi,
            Parameter::CavityDetuning { cavity: 0, .. } => cfg.drives.optical.detuning,
            Parameter::CavityDetuning { cavity, .. } => {
                cfg.drives.microwave[cavity - 1].cavity_detuning
            }
            Parameter::MagnonDetuning(i) => cfg.drives.microwave[i - 1].magnon_detuning,
            Parameter::Optomechanical => cfg.couplings.optomechanical,
            Parameter::CavityMechanical(i) => cfg.couplings.cavity_mechanical[i - 1],
            Parameter::MagnonCavity(i) => cfg.couplings.magnon_cavity[i - 1],
            Parameter::Temperature => cfg.temperature,
        }
    }

    pub fn check_applicable(&self, cfg: &SystemConfig) -> Result<()> {
        match self.required_mode() {
            Some(mode) if mode != cfg.drives.mode => Err(Error::Sweep(format!(
                "parameter `{}` needs {:?} detunings but the configuration uses {:?}",
                self.name(),
                mode,
                cfg.drives.mode
            ))),
            _ => Ok(()),
        }
    }

    pub fn set(&self, cfg: &mut SystemConfig, value: f64) -> Result<()> {
        self.check_applicable(cfg)?;
        let slot = match *self {
            Parameter::Frequency(m) => &mut cfg.mode_mut(m).frequency,
            Parameter::Decay(m) => &mut cfg.mode_mut(m).decay,
            Parameter::Rabi(0) => &mut cfg.drives.optical.rabi,
            Parameter::Rabi(i) => &mut cfg.drives.microwave[i - 1].rabi,
            Parameter::CavityDetuning { cavity: 0, .. } => &mut cfg.drives.optical.detuning,
            Parameter::CavityDetuning { cavity, .. } => {
                &mut cfg.drives.microwave[cavity - 1].cavity_detuning
            }
            Parameter::MagnonDetuning(i) => &mut cfg.drives.microwave[i - 1].magnon_detuning,
            Parameter::Optomechanical => &mut cfg.couplings.optomechanical,
            Parameter::CavityMechanical(i) => &mut cfg.couplings.cavity_mechanical[i - 1],
            Parameter::MagnonCavity(i) => &mut cfg.couplings.magnon_cavity[i - 1],
            Parameter::Temperature => &mut cfg.temperature,
        };
        *slot = value;
        Ok(())
    }

    /// The corresponding parameter of the other microwave subsystem.
    pub fn swapped(&self) -> Parameter {
        let other = |i: usize| 3 - i;
        match *self {
            Parameter::Frequency(m) => Parameter::Frequency(m.swapped()),
            Parameter::Decay(m) => Parameter::Decay(m.swapped()),
            Parameter::Rabi(i) if i > 0 => Parameter::Rabi(other(i)),
            Parameter::CavityDetuning { cavity, effective } if cavity > 0 => {
                Parameter::CavityDetuning {
                    cavity: other(cavity),
                    effective,
                }
            }
            Parameter::MagnonDetuning(i) => Parameter::MagnonDetuning(other(i)),
            Parameter::CavityMechanical(i) => Parameter::CavityMechanical(other(i)),
            Parameter::MagnonCavity(i) => Parameter::MagnonCavity(other(i)),
            p => p,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Parameter::all()
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Sweep(format!("unknown parameter `{s}`")))
    }
}

impl From<Parameter> for String {
    fn from(p: Parameter) -> String {
        p.name()
    }
}

impl TryFrom<String> for Parameter {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
