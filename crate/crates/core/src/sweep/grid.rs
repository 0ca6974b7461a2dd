use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::param::Parameter;
use crate::error::{Error, Result};
use crate::gaussian::{
    bipartite_cm, is_stable, log_negativity, lyapunov_residual, solve_lyapunov,
    symplectic_eigenvalues, CovarianceDiagnostics,
};
use crate::model::{linearize, Mode, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scale {
    Linear,
    Log,
}

/// One grid axis. Every listed parameter is set to the axis value, which is
/// how tied detunings such as `Δ̃_A1 = Δ̃_A2 = Δ_m1 = Δ_m2` are swept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub parameters: Vec<Parameter>,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepAxis {
    pub fn linear(parameters: Vec<Parameter>, start: f64, stop: f64, count: usize) -> Self {
        SweepAxis {
            parameters,
            start,
            stop,
            count,
            scale: Scale::Linear,
        }
    }

    pub fn log(parameters: Vec<Parameter>, start: f64, stop: f64, count: usize) -> Self {
        SweepAxis {
            parameters,
            start,
            stop,
            count,
            scale: Scale::Log,
        }
    }

    /// Column label: the first parameter's name.
    pub fn label(&self) -> String {
        self.parameters
            .first()
            .map(|p| p.name())
            .unwrap_or_default()
    }

    pub fn validate(&self) -> Result<()> {
        if self.parameters.is_empty() {
            return Err(Error::Sweep("axis has no parameters".into()));
        }
        if self.count < 2 {
            return Err(Error::Sweep(format!(
                "axis `{}` needs at least 2 points, got {}",
                self.label(),
                self.count
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start == self.stop {
            return Err(Error::Sweep(format!(
                "axis `{}` has a degenerate range [{}, {}]",
                self.label(),
                self.start,
                self.stop
            )));
        }
        if self.scale == Scale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::Sweep(format!(
                "log axis `{}` needs positive endpoints",
                self.label()
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    return self.stop;
                }
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: SystemConfig,
    pub axes: Vec<SweepAxis>,
    /// Ordered mode pairs for which E_N is reported.
    pub pairs: Vec<(Mode, Mode)>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::Sweep("no mode pairs requested".into()));
        }
        validate_pairs(&self.pairs)?;
        validate_axes(&self.base, &self.axes)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn validate_pairs(pairs: &[(Mode, Mode)]) -> Result<()> {
    for (a, b) in pairs {
        if a == b {
            return Err(Error::Sweep(format!("pair ({a}, {b}) repeats a mode")));
        }
    }
    Ok(())
}

fn validate_axes(base: &SystemConfig, axes: &[SweepAxis]) -> Result<()> {
    base.validate()?;
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::Sweep(format!(
            "expected one or two axes, got {}",
            axes.len()
        )));
    }
    let mut seen = Vec::new();
    for axis in axes {
        axis.validate()?;
        for p in &axis.parameters {
            p.check_applicable(base)?;
            if seen.contains(p) {
                return Err(Error::Sweep(format!(
                    "parameter `{p}` appears on more than one axis"
                )));
            }
            seen.push(*p);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Stable,
    Unstable,
    /// The pipeline could not produce a state (no steady state, singular
    /// solve). Distinct from a dynamically unstable point.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub coordinates: Vec<f64>,
    pub status: PointStatus,
    /// One value per requested pair; present iff `status` is `Stable`.
    pub e_n: Option<Vec<f64>>,
    pub diagnostics: Option<CovarianceDiagnostics>,
    pub error: Option<String>,
}

impl PointResult {
    fn failed(e: Error) -> Self {
        PointResult {
            coordinates: Vec::new(),
            status: PointStatus::Failed,
            e_n: None,
            diagnostics: None,
            error: Some(e.to_string()),
        }
    }

    fn unstable() -> Self {
        PointResult {
            coordinates: Vec::new(),
            status: PointStatus::Unstable,
            e_n: None,
            diagnostics: None,
            error: None,
        }
    }
}

/// Runs the whole pipeline at one configuration. With an empty `pairs` list
/// only stability is decided and the Lyapunov solve is skipped.
pub fn run_point(cfg: &SystemConfig, pairs: &[(Mode, Mode)]) -> PointResult {
    match evaluate(cfg, pairs) {
        Ok(result) => result,
        Err(e) => PointResult::failed(e),
    }
}

fn evaluate(cfg: &SystemConfig, pairs: &[(Mode, Mode)]) -> Result<PointResult> {
    validate_pairs(pairs)?;
    let (_, sys) = linearize(cfg)?;
    if !is_stable(&sys.drift)? {
        return Ok(PointResult::unstable());
    }
    if pairs.is_empty() {
        return Ok(PointResult {
            coordinates: Vec::new(),
            status: PointStatus::Stable,
            e_n: Some(Vec::new()),
            diagnostics: None,
            error: None,
        });
    }
    let v = solve_lyapunov(&sys.drift, &sys.diffusion)?;
    let diagnostics = CovarianceDiagnostics {
        lyapunov_residual: lyapunov_residual(&sys.drift, v.matrix(), &sys.diffusion),
        min_symplectic_eig: symplectic_eigenvalues(&v)[0],
    };
    let e_n = pairs
        .iter()
        .map(|&(s1, s2)| bipartite_cm(&v, s1, s2).map(|c| log_negativity(&c).e_n))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointResult {
        coordinates: Vec::new(),
        status: PointStatus::Stable,
        e_n: Some(e_n),
        diagnostics: Some(diagnostics),
        error: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Fingerprint of [`SystemConfig::default_point`] in this build.
    pub default_fingerprint: String,
    /// Fingerprint of the sweep's base configuration.
    pub config_fingerprint: String,
    pub version: String,
}

impl Provenance {
    pub fn for_base(base: &SystemConfig) -> Self {
        Provenance {
            default_fingerprint: fingerprint(&SystemConfig::default_point()),
            config_fingerprint: fingerprint(base),
            version: concat!("omm-core ", env!("CARGO_PKG_VERSION")).to_string(),
        }
    }
}

/// First 16 hex digits of the SHA-256 of the configuration's debug form
/// (which prints every float in shortest round-trip notation).
pub fn fingerprint(cfg: &SystemConfig) -> String {
    let digest = Sha256::digest(format!("{cfg:?}").as_bytes());
    hex::encode(&digest[..8])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Row-major over the axes: the last axis varies fastest.
    pub points: Vec<PointResult>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.spec.shape()
    }

    pub fn axis_values(&self, axis: usize) -> Vec<f64> {
        self.spec.axes[axis].values()
    }

    /// E_N of `pair_index` at every point, `None` where not stable.
    pub fn series(&self, pair_index: usize) -> Vec<Option<f64>> {
        self.points
            .iter()
            .map(|p| p.e_n.as_ref().map(|v| v[pair_index]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    /// On the current rayon pool.
    #[default]
    Parallel,
}

/// Configuration and coordinates of every grid point, row-major.
fn grid_points(base: &SystemConfig, axes: &[SweepAxis]) -> Result<Vec<(Vec<f64>, SystemConfig)>> {
    let values: Vec<Vec<f64>> = axes.iter().map(SweepAxis::values).collect();
    let total: usize = values.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut coords = vec![0.0; axes.len()];
        for k in (0..axes.len()).rev() {
            coords[k] = values[k][rem % values[k].len()];
            rem /= values[k].len();
        }
        let mut cfg = base.clone();
        for (axis, &x) in axes.iter().zip(&coords) {
            for p in &axis.parameters {
                p.set(&mut cfg, x)?;
            }
        }
        out.push((coords, cfg));
    }
    Ok(out)
}

fn evaluate_grid(
    base: &SystemConfig,
    axes: &[SweepAxis],
    pairs: &[(Mode, Mode)],
    exec: Execution,
) -> Result<Vec<PointResult>> {
    let grid = grid_points(base, axes)?;
    let eval = |(coords, cfg): &(Vec<f64>, SystemConfig)| {
        let mut r = run_point(cfg, pairs);
        r.coordinates = coords.clone();
        r
    };
    Ok(match exec {
        Execution::Serial => grid.iter().map(eval).collect(),
        Execution::Parallel => grid.par_iter().map(eval).collect(),
    })
}

fn run_with(spec: &SweepSpec, exec: Execution) -> Result<SweepResult> {
    spec.validate()?;
    let points = evaluate_grid(&spec.base, &spec.axes, &spec.pairs, exec)?;
    Ok(SweepResult {
        spec: spec.clone(),
        points,
        provenance: Provenance::for_base(&spec.base),
    })
}

/// Evaluates every grid point of `spec`, in parallel on the current rayon
/// pool. Results are gathered by index, so they do not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_with(spec, Execution::Parallel)
}

pub fn run_sweep_serial(spec: &SweepSpec) -> Result<SweepResult> {
    run_with(spec, Execution::Serial)
}

/// Stability only: no pairs, no Lyapunov solves.
pub fn run_stability_map(
    base: &SystemConfig,
    axes: Vec<SweepAxis>,
    exec: Execution,
) -> Result<SweepResult> {
    validate_axes(base, &axes)?;
    let points = evaluate_grid(base, &axes, &[], exec)?;
    let spec = SweepSpec {
        base: base.clone(),
        axes,
        pairs: Vec::new(),
    };
    Ok(SweepResult {
        provenance: Provenance::for_base(base),
        spec,
        points,
    })
}
