use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{Mode, SystemConfig};
use super::steady_state::{solve_steady_state, SteadyState};
use crate::error::Result;
use crate::physics::bose_einstein;

/// Linearized radiation-pressure couplings `G = g ⟨O⟩`; the real part is Gᴿ,
/// the imaginary part Gᴵ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveCouplings {
    pub optomechanical: Complex64,
    pub cavity_mechanical: [Complex64; 2],
}

pub fn effective_couplings(cfg: &SystemConfig, ss: &SteadyState) -> EffectiveCouplings {
    let c = &cfg.couplings;
    EffectiveCouplings {
        optomechanical: ss.optical * c.optomechanical,
        cavity_mechanical: [
            ss.cavity[0] * c.cavity_mechanical[0],
            ss.cavity[1] * c.cavity_mechanical[1],
        ],
    }
}

/// Drift and diffusion of the quadrature fluctuations, `u̇ = A u + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedSystem {
    pub drift: DMatrix<f64>,
    pub diffusion: DMatrix<f64>,
}

/// Free rotation and damping of one mode: `[[-κ, Δ], [-Δ, -κ]]`.
fn set_block(a: &mut DMatrix<f64>, mode: Mode, decay: f64, detuning: f64) {
    let k = 2 * mode.index();
    a[(k, k)] = -decay;
    a[(k, k + 1)] = detuning;
    a[(k + 1, k)] = -detuning;
    a[(k + 1, k + 1)] = -decay;
}

/// The 12×12 drift matrix of the quadrature fluctuations around `ss`.
pub fn build_drift(cfg: &SystemConfig, ss: &SteadyState) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(12, 12);
    let eff = &ss.effective_detuning;
    let mech = cfg.mode(Mode::Mechanical);

    set_block(
        &mut a,
        Mode::Optical,
        cfg.mode(Mode::Optical).decay,
        eff.optical,
    );
    set_block(&mut a, Mode::Mechanical, mech.decay, mech.frequency);

    let g = effective_couplings(cfg, ss);
    let (xb, yb) = (2, 3);

    // optical cavity <-> mechanics
    a[(0, xb)] = -2.0 * g.optomechanical.im;
    a[(1, xb)] = 2.0 * g.optomechanical.re;
    a[(yb, 0)] = 2.0 * g.optomechanical.re;
    a[(yb, 1)] = 2.0 * g.optomechanical.im;

    for (i, (cavity, magnon)) in [
        (Mode::Cavity1, Mode::Magnon1),
        (Mode::Cavity2, Mode::Magnon2),
    ]
    .into_iter()
    .enumerate()
    {
        let drive = &cfg.drives.microwave[i];
        set_block(&mut a, cavity, cfg.mode(cavity).decay, eff.cavity[i]);
        set_block(
            &mut a,
            magnon,
            cfg.mode(magnon).decay,
            drive.magnon_detuning,
        );

        let (xc, yc) = (2 * cavity.index(), 2 * cavity.index() + 1);
        let (xm, ym) = (2 * magnon.index(), 2 * magnon.index() + 1);
        let gc = g.cavity_mechanical[i];
        a[(xc, xb)] = -2.0 * gc.im;
        a[(yc, xb)] = 2.0 * gc.re;
        a[(yb, xc)] = 2.0 * gc.re;
        a[(yb, yc)] = 2.0 * gc.im;

        let gm = cfg.couplings.magnon_cavity[i];
        a[(xc, ym)] = gm;
        a[(yc, xm)] = -gm;
        a[(xm, yc)] = gm;
        a[(ym, xc)] = -gm;
    }
    a
}

/// Diagonal diffusion matrix `κ_j (2 N_j + 1)`, each entry repeated for the
/// two quadratures of mode `j`.
pub fn build_diffusion(cfg: &SystemConfig) -> Result<DMatrix<f64>> {
    let mut diag = Vec::with_capacity(12);
    for mode in Mode::ALL {
        let p = cfg.mode(mode);
        let n = bose_einstein(p.frequency, cfg.temperature)?;
        let d = p.decay * (2.0 * n + 1.0);
        diag.extend([d, d]);
    }
    Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
}

/// Steady state plus its drift and diffusion matrices.
pub fn linearize(cfg: &SystemConfig) -> Result<(SteadyState, LinearizedSystem)> {
    let ss = solve_steady_state(cfg)?;
    let drift = build_drift(cfg, &ss);
    let diffusion = build_diffusion(cfg)?;
    Ok((ss, LinearizedSystem { drift, diffusion }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn effective_couplings_are_scaled_amplitudes() {
        let cfg = SystemConfig::default_point();
        let ss = solve_steady_state(&cfg).unwrap();
        let g = effective_couplings(&cfg, &ss);
        assert_eq!(
            g.optomechanical.re,
            cfg.couplings.optomechanical * ss.optical.re
        );
        assert_eq!(
            g.optomechanical.im,
            cfg.couplings.optomechanical * ss.optical.im
        );
        for i in 0..2 {
            assert_eq!(
                g.cavity_mechanical[i].re,
                cfg.couplings.cavity_mechanical[i] * ss.cavity[i].re
            );
            assert_eq!(
                g.cavity_mechanical[i].im,
                cfg.couplings.cavity_mechanical[i] * ss.cavity[i].im
            );
        }
    }

    #[test]
    fn real_amplitude_has_no_quadrature_coupling() {
        let mut cfg = SystemConfig::default_point();
        cfg.drives.optical.detuning = 0.0;
        let ss = solve_steady_state(&cfg).unwrap();
        assert_eq!(ss.optical.im, 0.0);
        assert_eq!(effective_couplings(&cfg, &ss).optomechanical.im, 0.0);

        cfg.couplings.optomechanical = 0.0;
        let ss = solve_steady_state(&cfg).unwrap();
        assert_eq!(
            effective_couplings(&cfg, &ss).optomechanical,
            Complex64::default()
        );
    }

    #[test]
    fn first_row_matches_optical_equation() {
        let cfg = SystemConfig::default_point();
        let ss = solve_steady_state(&cfg).unwrap();
        let a = build_drift(&cfg, &ss);
        let g = effective_couplings(&cfg, &ss);
        let mut expected = vec![0.0; 12];
        expected[0] = -cfg.mode(Mode::Optical).decay;
        expected[1] = ss.effective_detuning.optical;
        expected[2] = -2.0 * g.optomechanical.im;
        assert_eq!(a.row(0).iter().copied().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn uncoupled_system_is_block_diagonal() {
        let mut cfg = SystemConfig::default_point();
        cfg.couplings.optomechanical = 0.0;
        cfg.couplings.cavity_mechanical = [0.0; 2];
        cfg.couplings.magnon_cavity = [0.0; 2];
        cfg.drives.optical.detuning = 0.0;
        let ss = solve_steady_state(&cfg).unwrap();
        let a = build_drift(&cfg, &ss);
        for r in 0..12 {
            for c in 0..12 {
                if r / 2 != c / 2 {
                    assert_eq!(a[(r, c)], 0.0, "({r},{c})");
                }
            }
        }
        for mode in Mode::ALL {
            let k = 2 * mode.index();
            let kappa = cfg.mode(mode).decay;
            let omega = if mode == Mode::Mechanical {
                cfg.mode(mode).frequency
            } else {
                0.0
            };
            assert_eq!(a[(k, k)], -kappa);
            assert_eq!(a[(k + 1, k + 1)], -kappa);
            assert_eq!(a[(k, k + 1)], omega);
            assert_eq!(a[(k + 1, k)], -omega);
        }
    }

    #[test]
    fn drift_sparsity_pattern() {
        // Structural nonzeros of the linearized dynamics; everything else must
        // be exactly zero at every operating point.
        let allowed: &[(usize, usize)] = &[
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (1, 2),
            (2, 2),
            (2, 3),
            (3, 0),
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (3, 5),
            (3, 8),
            (3, 9),
            (4, 2),
            (4, 4),
            (4, 5),
            (4, 7),
            (5, 2),
            (5, 4),
            (5, 5),
            (5, 6),
            (6, 5),
            (6, 6),
            (6, 7),
            (7, 4),
            (7, 6),
            (7, 7),
            (8, 2),
            (8, 8),
            (8, 9),
            (8, 11),
            (9, 2),
            (9, 8),
            (9, 9),
            (9, 10),
            (10, 9),
            (10, 10),
            (10, 11),
            (11, 8),
            (11, 10),
            (11, 11),
        ];
        let mut cfg = SystemConfig::default_point();
        cfg.drives.microwave[0].cavity_detuning = 1.0e6;
        cfg.drives.microwave[1].magnon_detuning = -2.0e6;
        let ss = solve_steady_state(&cfg).unwrap();
        let a = build_drift(&cfg, &ss);
        for r in 0..12 {
            for c in 0..12 {
                if !allowed.contains(&(r, c)) {
                    assert_eq!(a[(r, c)], 0.0, "({r},{c})");
                }
            }
        }
    }

    #[test]
    fn zero_temperature_diffusion_is_decay() {
        let mut cfg = SystemConfig::default_point();
        cfg.temperature = 0.0;
        let d = build_diffusion(&cfg).unwrap();
        for mode in Mode::ALL {
            let k = 2 * mode.index();
            assert_eq!(d[(k, k)], cfg.mode(mode).decay);
            assert_eq!(d[(k + 1, k + 1)], cfg.mode(mode).decay);
        }
        assert_eq!(d.iter().filter(|x| **x != 0.0).count(), 12);
    }

    #[test]
    fn millikelvin_diffusion() {
        let cfg = SystemConfig::default_point();
        let d = build_diffusion(&cfg).unwrap();
        let kb = cfg.mode(Mode::Mechanical).decay;
        let n_b = bose_einstein(TAU * 1e7, 0.01).unwrap();
        assert_eq!(d[(2, 2)], kb * (2.0 * n_b + 1.0));
        assert!((d[(2, 2)] / kb - (2.0 * 20.34 + 1.0)).abs() < 0.02);
        for mode in [
            Mode::Optical,
            Mode::Cavity1,
            Mode::Magnon1,
            Mode::Cavity2,
            Mode::Magnon2,
        ] {
            let k = 2 * mode.index();
            let kappa = cfg.mode(mode).decay;
            assert!((d[(k, k)] / kappa - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn diffusion_symmetric_under_subsystem_exchange() {
        let cfg = SystemConfig::default_point();
        let d = build_diffusion(&cfg).unwrap();
        let d_swapped = build_diffusion(&cfg.swapped_subsystems()).unwrap();
        assert_eq!(d, d_swapped);
    }

    #[test]
    fn diffusion_propagates_domain_errors() {
        let mut cfg = SystemConfig::default_point();
        cfg.temperature = -1.0;
        assert!(build_diffusion(&cfg).is_err());
    }
}
