use super::grid::{PointStatus, Scale, SweepResult};
use crate::error::{Error, Result};

fn check(result: &SweepResult, axis: usize) -> Result<()> {
    if result.spec.axes.len() != 2 {
        return Err(Error::Argument(format!(
            "strip width needs a 2-D sweep, got {} axes",
            result.spec.axes.len()
        )));
    }
    if axis > 1 {
        return Err(Error::Argument(format!("axis index {axis} out of range")));
    }
    if result.spec.axes[axis].scale != Scale::Linear {
        return Err(Error::Argument(
            "strip width is measured on linear axes only".into(),
        ));
    }
    Ok(())
}

/// Width of the longest contiguous run of unstable cells along `axis` on the
/// line where the other axis sits at `other_index`, counting only cells whose
/// coordinate lies in `[lo, hi]`. Width is the number of cells times the grid
/// spacing.
pub fn unstable_strip_width_at(
    result: &SweepResult,
    axis: usize,
    other_index: usize,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    check(result, axis)?;
    let shape = result.shape();
    let other = 1 - axis;
    if other_index >= shape[other] {
        return Err(Error::Argument(format!(
            "index {other_index} out of range for axis {other}"
        )));
    }
    let values = result.axis_values(axis);
    let spacing = (values[1] - values[0]).abs();
    let flat = |k: usize| {
        if axis == 0 {
            k * shape[1] + other_index
        } else {
            other_index * shape[1] + k
        }
    };

    let (mut best, mut run) = (0usize, 0usize);
    for (k, &x) in values.iter().enumerate() {
        let unstable = result.points[flat(k)].status == PointStatus::Unstable;
        if unstable && x >= lo && x <= hi {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    Ok(best as f64 * spacing)
}

/// Largest strip width along `axis` over all positions of the other axis,
/// restricted to coordinates in `[lo, hi]`.
pub fn unstable_strip_width_within(
    result: &SweepResult,
    axis: usize,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    check(result, axis)?;
    let n_other = result.shape()[1 - axis];
    (0..n_other).try_fold(0.0f64, |acc, j| {
        Ok(acc.max(unstable_strip_width_at(result, axis, j, lo, hi)?))
    })
}

/// Strip width on the line whose other-axis coordinate is closest to
/// `other_value` (the first such line on a tie). Returns that coordinate and
/// the width.
pub fn unstable_strip_width_near(
    result: &SweepResult,
    axis: usize,
    other_value: f64,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64)> {
    check(result, axis)?;
    let others = result.axis_values(1 - axis);
    let (index, &at) = others
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| {
            (*x - other_value)
                .abs()
                .total_cmp(&(*y - other_value).abs())
        })
        .expect("axes have at least two points");
    Ok((at, unstable_strip_width_at(result, axis, index, lo, hi)?))
}

/// Largest width of a contiguous unstable band along `axis`; 0 when every
/// cell is stable.
pub fn unstable_strip_width(result: &SweepResult, axis: usize) -> Result<f64> {
    unstable_strip_width_within(result, axis, f64::NEG_INFINITY, f64::INFINITY)
}
