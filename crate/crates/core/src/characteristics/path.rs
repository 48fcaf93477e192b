//! Forward tracing of `dX/dt = V(w(t, X))` through stored velocity frames.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{invalid_arg, invalid_config, Error, Result};
use crate::fv::{FieldFrame, Grid1D, SolutionRecord};
use crate::model::VelocityLaw;

/// A traced characteristic with the solution sampled along it.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicPath {
    pub start: f64,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
    pub epsilon: f64,
}

impl CharacteristicPath {
    pub fn final_position(&self) -> f64 {
        *self.positions.last().expect("paths are never empty")
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().expect("paths are never empty")
    }

    /// `char_y<start>_eps<epsilon>.csv`.
    pub fn file_name(&self) -> String {
        // + 0.0 turns -0 into 0
        format!("char_y{}_eps{}.csv", self.start + 0.0, self.epsilon)
    }

    /// CSV with header `t,x,u`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,u\n");
        for ((t, x), u) in self.times.iter().zip(&self.positions).zip(&self.values) {
            let _ = writeln!(out, "{t},{x},{u}");
        }
        out
    }

    pub fn write_csv(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_csv()).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

/// Speed field built from the stored frames: linear in `x` between
/// interface samples and linear in `t` between frames.
struct FrameField<'a> {
    grid: Grid1D,
    frames: &'a [FieldFrame],
    law: VelocityLaw,
}

impl FrameField<'_> {
    fn w(&self, frame: &FieldFrame, x: f64) -> Option<f64> {
        let dx = self.grid.dx();
        let x0 = self.grid.interface(frame.first_cell);
        let last = frame.w.len() - 1;
        let s = (x - x0) / dx;
        if !(s >= -1e-9) || s > last as f64 + 1e-9 {
            return None;
        }
        let k = (s.floor().max(0.0) as usize).min(last.saturating_sub(1));
        if last == 0 {
            return Some(frame.w[0]);
        }
        let theta = (s - k as f64).clamp(0.0, 1.0);
        if theta == 0.0 {
            return Some(frame.w[k]);
        }
        Some(frame.w[k] + theta * (frame.w[k + 1] - frame.w[k]))
    }

    /// Speed at `(t, x)` for `t` in the bracket `[frames[i].time, frames[i+1].time]`.
    fn speed(&self, i: usize, t: f64, x: f64) -> Result<f64> {
        let a = &self.frames[i];
        let b = &self.frames[i + 1];
        let outside = || invalid_config!("characteristic reached x = {x}, outside the stored field window");
        let wa = self.w(a, x).ok_or_else(outside)?;
        let wb = self.w(b, x).ok_or_else(outside)?;
        let theta = ((t - a.time) / (b.time - a.time)).clamp(0.0, 1.0);
        Ok(self.law.eval(wa + theta * (wb - wa)))
    }

    fn value(&self, frame: &FieldFrame, x: f64) -> Result<f64> {
        self.grid
            .cell_containing(x)
            .and_then(|c| c.checked_sub(frame.first_cell))
            .and_then(|k| frame.u.get(k).copied())
            .ok_or_else(|| invalid_config!("no stored value at x = {x}"))
    }
}

/// Integrates the characteristic through `(0, y)` up to `t_end`.
///
/// Uses classical RK4 between consecutive stored frames, split into
/// substeps no longer than one cell width. Positions are reported at every
/// frame time up to `t_end` and at `t_end` itself; values are read from the
/// cell containing the position.
pub fn trace_characteristic(record: &SolutionRecord, y: f64, t_end: f64) -> Result<CharacteristicPath> {
    let grid = record.config.grid;
    if !(y >= grid.x_min() && y <= grid.x_max()) {
        return Err(invalid_arg!(
            "start {y} outside the domain [{}, {}]",
            grid.x_min(),
            grid.x_max()
        ));
    }
    if !(t_end >= 0.0 && t_end <= record.config.t_final + 1e-12) {
        return Err(invalid_arg!(
            "t_end = {t_end} outside [0, {}]",
            record.config.t_final
        ));
    }
    let frames = &record.w_fields;
    if frames.first().map(|f| f.time) != Some(0.0) {
        return Err(invalid_config!("record holds no velocity frame at t = 0"));
    }
    let last = frames.last().expect("checked above").time;
    if last < t_end - 1e-12 {
        return Err(invalid_config!(
            "velocity frames stop at t = {last}, before t_end = {t_end}"
        ));
    }

    let field = FrameField {
        grid,
        frames,
        law: record.config.velocity,
    };
    let h_max = grid.dx();
    let mut times = vec![0.0];
    let mut positions = vec![y];
    let mut values = vec![field.value(&frames[0], y)?];
    let mut x = y;

    for i in 0..frames.len() - 1 {
        let (t0, t1) = (frames[i].time, frames[i + 1].time);
        if t0 >= t_end {
            break;
        }
        let stop = t1.min(t_end);
        let n_sub = ((stop - t0) / h_max).ceil().max(1.0) as usize;
        let h = (stop - t0) / n_sub as f64;
        for s in 0..n_sub {
            let t = t0 + s as f64 * h;
            let k1 = field.speed(i, t, x)?;
            let k2 = field.speed(i, t + 0.5 * h, x + 0.5 * h * k1)?;
            let k3 = field.speed(i, t + 0.5 * h, x + 0.5 * h * k2)?;
            let k4 = field.speed(i, t + h, x + h * k3)?;
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        let value = if stop == t1 {
            field.value(&frames[i + 1], x)?
        } else {
            let theta = (stop - t0) / (t1 - t0);
            let va = field.value(&frames[i], x)?;
            let vb = field.value(&frames[i + 1], x)?;
            va + theta * (vb - va)
        };
        times.push(stop);
        positions.push(x);
        values.push(value);
    }

    Ok(CharacteristicPath {
        start: y,
        times,
        positions,
        values,
        epsilon: record.config.epsilon(),
    })
}

/// Traces several characteristics in parallel; the output follows the
/// order of `starts`.
pub fn trace_characteristics(
    record: &SolutionRecord,
    starts: &[f64],
    t_end: f64,
) -> Result<Vec<CharacteristicPath>> {
    starts
        .par_iter()
        .map(|&y| trace_characteristic(record, y, t_end))
        .collect()
}
