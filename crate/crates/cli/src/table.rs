//! Result tables: comma-separated with `#` footer lines, or JSON.

use std::fmt::Write as _;

use omm_core::sweep::{unstable_strip_width_near, unstable_strip_width_within, Provenance, Scale};
use omm_core::{Mode, PointResult, PointStatus, SweepAxis, SweepResult};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A rendered table. Every row has as many cells as the header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Provenance and summary lines, written after the rows with a `# `
    /// prefix.
    pub footer: Vec<String>,
}

pub fn pair_column(pair: (Mode, Mode)) -> String {
    format!("EN_{}_{}", pair.0, pair.1)
}

fn number(x: f64) -> String {
    format!("{x}")
}

impl Table {
    /// One row per point, in the order given.
    pub fn from_points(
        axes: &[SweepAxis],
        points: &[PointResult],
        pairs: &[(Mode, Mode)],
        provenance: &Provenance,
        diagnostics: bool,
    ) -> Table {
        let mut header: Vec<String> = axes.iter().map(SweepAxis::label).collect();
        header.extend(["status".into(), "stable".into()]);
        header.extend(pairs.iter().map(|&p| pair_column(p)));
        if diagnostics {
            header.extend(["lyapunov_residual".into(), "min_symplectic_eig".into()]);
        }

        let rows = points
            .iter()
            .map(|p| {
                let mut row: Vec<String> = p.coordinates.iter().copied().map(number).collect();
                let (status, stable) = match p.status {
                    PointStatus::Stable => ("stable", "1"),
                    PointStatus::Unstable => ("unstable", "0"),
                    PointStatus::Failed => ("failed", ""),
                };
                row.push(status.into());
                row.push(stable.into());
                for k in 0..pairs.len() {
                    row.push(p.e_n.as_ref().map(|v| number(v[k])).unwrap_or_default());
                }
                if diagnostics {
                    let d = p.diagnostics.as_ref();
                    row.push(d.map(|d| number(d.lyapunov_residual)).unwrap_or_default());
                    row.push(d.map(|d| number(d.min_symplectic_eig)).unwrap_or_default());
                }
                row
            })
            .collect();

        let mut footer = vec![
            format!("version = {}", provenance.version),
            format!("default_fingerprint = {}", provenance.default_fingerprint),
            format!("config_fingerprint = {}", provenance.config_fingerprint),
        ];
        for (k, axis) in axes.iter().enumerate() {
            let names: Vec<String> = axis.parameters.iter().map(|p| p.name()).collect();
            let scale = match axis.scale {
                Scale::Linear => "linear",
                Scale::Log => "log",
            };
            footer.push(format!(
                "axis {k} = {} from {} to {}, {} points, {scale}",
                names.join(" = "),
                axis.start,
                axis.stop,
                axis.count
            ));
        }
        let failed = points
            .iter()
            .filter(|p| p.status == PointStatus::Failed)
            .count();
        footer.push(format!("failed_points = {failed}"));
        for p in points.iter().filter(|p| p.status == PointStatus::Failed) {
            if let Some(e) = &p.error {
                let at: Vec<String> = p.coordinates.iter().copied().map(number).collect();
                footer.push(format!("failed at ({}): {e}", at.join(", ")));
            }
        }
        Table {
            header,
            rows,
            footer,
        }
    }

    pub fn from_sweep(result: &SweepResult) -> Table {
        let diagnostics = !result.spec.pairs.is_empty();
        let mut t = Table::from_points(
            &result.spec.axes,
            &result.points,
            &result.spec.pairs,
            &result.provenance,
            diagnostics,
        );
        t.footer.extend(strip_summary(result));
        t
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for line in &self.footer {
            let _ = writeln!(out, "# {line}");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Widths of the unstable band along the first axis of a 2-D map, restricted
/// to its non-negative half: the largest over all lines, and on the line
/// nearest zero of the second axis.
fn strip_summary(result: &SweepResult) -> Vec<String> {
    if result.spec.axes.len() != 2 || result.spec.axes[0].scale != Scale::Linear {
        return Vec::new();
    }
    let (x, y) = (result.spec.axes[0].label(), result.spec.axes[1].label());
    let widest = unstable_strip_width_within(result, 0, 0.0, f64::INFINITY);
    let central = unstable_strip_width_near(result, 0, 0.0, 0.0, f64::INFINITY);
    match (widest, central) {
        (Ok(widest), Ok((at, central))) => vec![
            format!("strip_width[{x} >= 0, {y} = {at}] = {central}"),
            format!("strip_width[{x} >= 0, widest line] = {widest}"),
        ],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use omm_core::sweep::{run_stability_map, Execution, Parameter};
    use omm_core::{run_point, SystemConfig};

    fn provenance() -> Provenance {
        Provenance::for_base(&SystemConfig::default_point())
    }

    #[test]
    fn single_point_row() {
        let mut p = run_point(
            &SystemConfig::default_point(),
            &[(Mode::Magnon1, Mode::Magnon2)],
        );
        p.coordinates = vec![];
        let t = Table::from_points(
            &[],
            &[p.clone()],
            &[(Mode::Magnon1, Mode::Magnon2)],
            &provenance(),
            true,
        );
        assert_eq!(
            t.header,
            [
                "status",
                "stable",
                "EN_m1_m2",
                "lyapunov_residual",
                "min_symplectic_eig"
            ]
        );
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][0], "stable");
        let e_n: f64 = t.rows[0][2].parse().unwrap();
        assert_eq!(e_n, p.e_n.unwrap()[0]);
    }

    #[test]
    fn unstable_rows_have_empty_pair_cells() {
        let mut cfg = SystemConfig::default_point();
        let kb = cfg.mode(Mode::Mechanical).decay;
        cfg.couplings.optomechanical = 1.4 * kb;
        cfg.drives.optical.detuning = 0.3 * cfg.mode(Mode::Mechanical).frequency;
        let p = run_point(&cfg, &[(Mode::Magnon1, Mode::Magnon2)]);
        let t = Table::from_points(
            &[],
            &[p],
            &[(Mode::Magnon1, Mode::Magnon2)],
            &provenance(),
            true,
        );
        assert_eq!(t.rows[0], ["unstable", "0", "", "", ""]);
    }

    #[test]
    fn csv_layout_and_strip_footer() {
        let wb = SystemConfig::default_point()
            .mode(Mode::Mechanical)
            .frequency;
        let axes = vec![
            SweepAxis::linear(
                vec![Parameter::CavityDetuning {
                    cavity: 0,
                    effective: true,
                }],
                -wb,
                wb,
                3,
            ),
            SweepAxis::linear(vec![Parameter::MagnonDetuning(1)], -wb, wb, 2),
        ];
        let r = run_stability_map(&SystemConfig::default_point(), axes, Execution::Serial).unwrap();
        let t = Table::from_sweep(&r);
        assert!(!t.header.iter().any(|h| h == "lyapunov_residual"));
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "Delta_eff_a,Delta_m1,status,stable");
        assert_eq!(lines.iter().filter(|l| !l.starts_with('#')).count(), 7);
        assert!(lines
            .iter()
            .all(|l| l.starts_with('#') || l.split(',').count() == 4));
        assert!(csv.contains("# strip_width[Delta_eff_a >= 0, Delta_m1 = -62831853.071795866] = "));
        assert!(csv.contains("# failed_points = 0"));
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1 + 0.2, 1e-300, 6.283185307179586e7, -0.0] {
            let back: f64 = number(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn json_output_parses() {
        let p = run_point(&SystemConfig::default_point(), &[]);
        let t = Table::from_points(&[], &[p], &[], &provenance(), false);
        let v: serde_json::Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v["header"][0], "status");
        assert_eq!(v["rows"][0][0], "stable");
    }
}
