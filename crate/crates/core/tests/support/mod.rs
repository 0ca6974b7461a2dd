//! Oracles shared by the integration and acceptance tests. Nothing here calls
//! into the drift or steady-state code it is used to check.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use omm_core::model::{DetuningMode, SteadyState};
use omm_core::{Mode, SystemConfig};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Deterministic part of the quantum Langevin equations in the drive frame,
/// with the noise dropped. Fields are ordered (a, b, A1, m1, A2, m2) and
/// detunings are bare.
pub fn langevin_field(cfg: &SystemConfig, bare: &[f64; 3], f: &[Complex64; 6]) -> [Complex64; 6] {
    let [a, b, c1, m1, c2, m2] = *f;
    let k = |i: usize| cfg.modes[i].decay;
    let cp = &cfg.couplings;
    let x = b + b.conj();
    let mw = &cfg.drives.microwave;

    let da = -(I * bare[0] + k(0)) * a + I * cp.optomechanical * a * x + cfg.drives.optical.rabi;
    let db = -(I * cfg.modes[1].frequency + k(1)) * b
        + I * (cp.optomechanical * a.norm_sqr()
            + cp.cavity_mechanical[0] * c1.norm_sqr()
            + cp.cavity_mechanical[1] * c2.norm_sqr());
    let dc1 = -(I * bare[1] + k(2)) * c1 + I * cp.cavity_mechanical[0] * c1 * x
        - I * cp.magnon_cavity[0] * m1;
    let dm1 = -(I * mw[0].magnon_detuning + k(3)) * m1 - I * cp.magnon_cavity[0] * c1 + mw[0].rabi;
    let dc2 = -(I * bare[2] + k(4)) * c2 + I * cp.cavity_mechanical[1] * c2 * x
        - I * cp.magnon_cavity[1] * m2;
    let dm2 = -(I * mw[1].magnon_detuning + k(5)) * m2 - I * cp.magnon_cavity[1] * c2 + mw[1].rabi;
    [da, db, dc1, dm1, dc2, dm2]
}

pub fn bare_detunings(ss: &SteadyState) -> [f64; 3] {
    let d = &ss.bare_detuning;
    [d.optical, d.cavity[0], d.cavity[1]]
}

pub fn fields(ss: &SteadyState) -> [Complex64; 6] {
    [
        ss.optical,
        ss.mechanical,
        ss.cavity[0],
        ss.magnon[0],
        ss.cavity[1],
        ss.magnon[1],
    ]
}

fn to_quadratures(f: &[Complex64; 6]) -> [f64; 12] {
    let mut u = [0.0; 12];
    for (i, z) in f.iter().enumerate() {
        u[2 * i] = std::f64::consts::SQRT_2 * z.re;
        u[2 * i + 1] = std::f64::consts::SQRT_2 * z.im;
    }
    u
}

fn from_quadratures(u: &[f64; 12]) -> [Complex64; 6] {
    std::array::from_fn(|i| Complex64::new(u[2 * i], u[2 * i + 1]) / std::f64::consts::SQRT_2)
}

/// Central-difference Jacobian of the Langevin field in quadrature
/// coordinates. The field is at most quadratic, so the central difference is
/// exact up to rounding. The step is set by the largest amplitude so that the
/// cancelling drive and detuning terms lose as little as possible.
pub fn numerical_drift(cfg: &SystemConfig, ss: &SteadyState) -> DMatrix<f64> {
    let bare = bare_detunings(ss);
    let u0 = to_quadratures(&fields(ss));
    let h = u0.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let mut jac = DMatrix::zeros(12, 12);
    for col in 0..12 {
        let mut up = u0;
        let mut down = u0;
        up[col] += h;
        down[col] -= h;
        let fu = to_quadratures(&langevin_field(cfg, &bare, &from_quadratures(&up)));
        let fd = to_quadratures(&langevin_field(cfg, &bare, &from_quadratures(&down)));
        for row in 0..12 {
            jac[(row, col)] = (fu[row] - fd[row]) / (2.0 * h);
        }
    }
    jac
}

/// Largest entrywise deviation, relative to the largest entry of `reference`.
pub fn max_relative_deviation(a: &DMatrix<f64>, reference: &DMatrix<f64>) -> f64 {
    let scale = reference.amax();
    (a - reference).amax() / scale
}

/// Configurations scattered around the default operating point.
pub struct ConfigSampler {
    rng: StdRng,
}

impl ConfigSampler {
    pub fn new(seed: u64) -> Self {
        ConfigSampler {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (self.rng.random_range(lo.ln()..hi.ln())).exp()
    }

    pub fn sample(&mut self) -> SystemConfig {
        let mut cfg = SystemConfig::default_point();
        let wb = cfg.mode(Mode::Mechanical).frequency;
        let kb = cfg.mode(Mode::Mechanical).decay;
        for i in [0, 2, 3, 4, 5] {
            cfg.modes[i].decay *= self.log_uniform(0.5, 2.0);
        }
        cfg.drives.mode = DetuningMode::Effective;
        cfg.drives.optical.detuning = self.rng.random_range(-2.0..2.0) * wb;
        for d in cfg.drives.microwave.iter_mut() {
            d.cavity_detuning = self.rng.random_range(-1.0..1.0) * wb;
            d.magnon_detuning = self.rng.random_range(-1.0..1.0) * wb;
            d.rabi *= self.log_uniform(0.5, 2.0);
        }
        cfg.drives.optical.rabi *= self.log_uniform(0.5, 2.0);
        cfg.couplings.optomechanical = self.rng.random_range(0.2..1.5) * kb;
        for i in 0..2 {
            cfg.couplings.cavity_mechanical[i] = self.log_uniform(1e-2, 1.0);
            cfg.couplings.magnon_cavity[i] *= self.log_uniform(0.5, 2.0);
        }
        cfg.temperature = self.rng.random_range(0.0..0.2);
        cfg
    }
}
