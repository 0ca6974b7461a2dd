use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{DetuningMode, SystemConfig};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Damping of the bare-detuning fixed point: `x ← (1 - λ) x + λ F(x)`.
pub const PICARD_DAMPING: f64 = 0.5;
pub const PICARD_TOLERANCE: f64 = 1e-12;
pub const PICARD_MAX_ITERATIONS: usize = 10_000;

/// Detunings of the three radiation-pressure-coupled cavities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityDetunings {
    pub optical: f64,
    pub cavity: [f64; 2],
}

/// Semiclassical mean fields of the driven system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    pub optical: Complex64,
    pub mechanical: Complex64,
    pub cavity: [Complex64; 2],
    pub magnon: [Complex64; 2],
    /// Δ̃, shifted by the static mechanical displacement.
    pub effective_detuning: CavityDetunings,
    /// Δ, measured from the bare resonances.
    pub bare_detuning: CavityDetunings,
}

#[derive(Debug, Clone, Copy)]
struct Amplitudes {
    optical: Complex64,
    mechanical: Complex64,
    cavity: [Complex64; 2],
    magnon: [Complex64; 2],
}

impl Amplitudes {
    fn as_array(&self) -> [Complex64; 6] {
        [
            self.optical,
            self.mechanical,
            self.cavity[0],
            self.magnon[0],
            self.cavity[1],
            self.magnon[1],
        ]
    }
}

fn checked_div(num: Complex64, den: Complex64, which: &'static str) -> Result<Complex64> {
    if den.norm() == 0.0 {
        return Err(Error::Singular(which));
    }
    Ok(num / den)
}

/// Cavity and magnon amplitudes for fixed effective detunings.
fn driven_fields(
    cfg: &SystemConfig,
    eff: &CavityDetunings,
) -> Result<(Complex64, [Complex64; 2], [Complex64; 2])> {
    let kappa_a = cfg.modes[0].decay;
    let optical = checked_div(
        cfg.drives.optical.rabi.into(),
        Complex64::new(kappa_a, eff.optical),
        "optical",
    )?;

    let mut cavity = [Complex64::default(); 2];
    let mut magnon = [Complex64::default(); 2];
    for i in 0..2 {
        let drive = &cfg.drives.microwave[i];
        let kappa_c = cfg.modes[2 + 2 * i].decay;
        let kappa_m = cfg.modes[3 + 2 * i].decay;
        let g = cfg.couplings.magnon_cavity[i];
        let cav = Complex64::new(kappa_c, eff.cavity[i]);
        let mag = Complex64::new(kappa_m, drive.magnon_detuning);
        magnon[i] = checked_div(cav * drive.rabi, g * g + mag * cav, "magnon")?;
        cavity[i] = checked_div(
            g * magnon[i],
            Complex64::new(-eff.cavity[i], kappa_c),
            "microwave cavity",
        )?;
    }
    Ok((optical, cavity, magnon))
}

/// Mechanical amplitude from the radiation-pressure forces of all three cavities.
fn mechanical_field(cfg: &SystemConfig, optical: Complex64, cavity: &[Complex64; 2]) -> Complex64 {
    let c = &cfg.couplings;
    let force = c.optomechanical * optical.norm_sqr()
        + c.cavity_mechanical[0] * cavity[0].norm_sqr()
        + c.cavity_mechanical[1] * cavity[1].norm_sqr();
    let b = &cfg.modes[1];
    force / Complex64::new(b.frequency, -b.decay)
}

/// `Δ̃ = Δ - g (⟨b⟩ + ⟨b⟩*)` for each radiation-pressure-coupled cavity.
fn shift(
    cfg: &SystemConfig,
    base: &CavityDetunings,
    mechanical: Complex64,
    sign: f64,
) -> CavityDetunings {
    let x = 2.0 * mechanical.re * sign;
    let c = &cfg.couplings;
    CavityDetunings {
        optical: base.optical - c.optomechanical * x,
        cavity: [
            base.cavity[0] - c.cavity_mechanical[0] * x,
            base.cavity[1] - c.cavity_mechanical[1] * x,
        ],
    }
}

fn stored_detunings(cfg: &SystemConfig) -> CavityDetunings {
    CavityDetunings {
        optical: cfg.drives.optical.detuning,
        cavity: [
            cfg.drives.microwave[0].cavity_detuning,
            cfg.drives.microwave[1].cavity_detuning,
        ],
    }
}

/// Solves for the semiclassical steady state.
///
/// With [`DetuningMode::Effective`] the stored cavity detunings are taken as
/// Δ̃ and every amplitude follows in closed form; the bare detunings are then
/// reconstructed from the mechanical displacement. With [`DetuningMode::Bare`]
/// Δ̃ depends on ⟨b⟩, so the amplitudes are found by damped Picard iteration
/// seeded at Δ̃ = Δ (i.e. ⟨b⟩ = 0).
pub fn solve_steady_state(cfg: &SystemConfig) -> Result<SteadyState> {
    cfg.validate()?;
    match cfg.drives.mode {
        DetuningMode::Effective => {
            let eff = stored_detunings(cfg);
            let (optical, cavity, magnon) = driven_fields(cfg, &eff)?;
            let mechanical = mechanical_field(cfg, optical, &cavity);
            Ok(SteadyState {
                optical,
                mechanical,
                cavity,
                magnon,
                effective_detuning: eff,
                bare_detuning: shift(cfg, &eff, mechanical, -1.0),
            })
        }
        DetuningMode::Bare => solve_bare(cfg),
    }
}

fn solve_bare(cfg: &SystemConfig) -> Result<SteadyState> {
    let bare = stored_detunings(cfg);
    let (optical, cavity, magnon) = driven_fields(cfg, &bare)?;
    let mut x = Amplitudes {
        optical,
        mechanical: Complex64::default(),
        cavity,
        magnon,
    };

    let mut change = f64::INFINITY;
    let mut iterations = 0;
    while iterations < PICARD_MAX_ITERATIONS {
        iterations += 1;
        let eff = shift(cfg, &bare, x.mechanical, 1.0);
        let (optical, cavity, magnon) = driven_fields(cfg, &eff)?;
        let mechanical = mechanical_field(cfg, x.optical, &x.cavity);
        let target = Amplitudes {
            optical,
            mechanical,
            cavity,
            magnon,
        };

        let blend =
            |old: Complex64, new: Complex64| old * (1.0 - PICARD_DAMPING) + new * PICARD_DAMPING;
        let next = Amplitudes {
            optical: blend(x.optical, target.optical),
            mechanical: blend(x.mechanical, target.mechanical),
            cavity: [
                blend(x.cavity[0], target.cavity[0]),
                blend(x.cavity[1], target.cavity[1]),
            ],
            magnon: [
                blend(x.magnon[0], target.magnon[0]),
                blend(x.magnon[1], target.magnon[1]),
            ],
        };
        change = max_relative_change(&x.as_array(), &next.as_array());
        x = next;
        if !change.is_finite() {
            break;
        }
        if change <= PICARD_TOLERANCE {
            // Finish on the exact map so the returned fields satisfy the
            // stationary equations to rounding.
            let eff = shift(cfg, &bare, x.mechanical, 1.0);
            let (optical, cavity, magnon) = driven_fields(cfg, &eff)?;
            return Ok(SteadyState {
                optical,
                mechanical: x.mechanical,
                cavity,
                magnon,
                effective_detuning: eff,
                bare_detuning: bare,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations,
        residual: change,
    })
}

fn max_relative_change(old: &[Complex64; 6], new: &[Complex64; 6]) -> f64 {
    old.iter()
        .zip(new)
        .map(|(o, n)| {
            let diff = (n - o).norm();
            if !n.re.is_finite() || !n.im.is_finite() {
                f64::INFINITY
            } else if diff == 0.0 {
                0.0
            } else {
                diff / n.norm().max(o.norm())
            }
        })
        .fold(0.0, f64::max)
}

impl SteadyState {
    /// Relative residuals of the six stationary mean-field equations, in the
    /// order `(a, b, m1, m2, A1, A2)`. Each residual is normalized by the sum
    /// of magnitudes of the terms in its equation, so the undriven state
    /// reports zeros.
    pub fn residuals(&self, cfg: &SystemConfig) -> [f64; 6] {
        let c = &cfg.couplings;
        let x_b = self.mechanical + self.mechanical.conj();
        let rel = |terms: &[Complex64]| {
            let sum: Complex64 = terms.iter().sum();
            let scale: f64 = terms.iter().map(|t| t.norm()).sum();
            if scale == 0.0 {
                0.0
            } else {
                sum.norm() / scale
            }
        };

        let ka = cfg.modes[0].decay;
        let r_a = rel(&[
            -Complex64::new(ka, self.bare_detuning.optical) * self.optical,
            I * c.optomechanical * x_b * self.optical,
            cfg.drives.optical.rabi.into(),
        ]);

        let mech = &cfg.modes[1];
        let r_b = rel(&[
            -Complex64::new(mech.decay, mech.frequency) * self.mechanical,
            I * c.optomechanical * self.optical.norm_sqr(),
            I * c.cavity_mechanical[0] * self.cavity[0].norm_sqr(),
            I * c.cavity_mechanical[1] * self.cavity[1].norm_sqr(),
        ]);

        let mut r_m = [0.0; 2];
        let mut r_c = [0.0; 2];
        for i in 0..2 {
            let drive = &cfg.drives.microwave[i];
            let kc = cfg.modes[2 + 2 * i].decay;
            let km = cfg.modes[3 + 2 * i].decay;
            let g = c.magnon_cavity[i];
            r_m[i] = rel(&[
                -Complex64::new(km, drive.magnon_detuning) * self.magnon[i],
                -I * g * self.cavity[i],
                drive.rabi.into(),
            ]);
            r_c[i] = rel(&[
                -Complex64::new(kc, self.bare_detuning.cavity[i]) * self.cavity[i],
                I * c.cavity_mechanical[i] * x_b * self.cavity[i],
                -I * g * self.magnon[i],
            ]);
        }
        [r_a, r_b, r_m[0], r_m[1], r_c[0], r_c[1]]
    }

    pub fn max_residual(&self, cfg: &SystemConfig) -> f64 {
        self.residuals(cfg).into_iter().fold(0.0, f64::max)
    }
}
