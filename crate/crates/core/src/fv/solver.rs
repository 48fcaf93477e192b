//! Time marching for the nonlocal equation and its local limit.

use std::path::{Path, PathBuf};

use super::scheme::{godunov_update, lax_friedrichs_update, upwind_update, NonlocalOperator};
use super::{cfl_dt_with, GridFunction, Scheme, SolverConfig};
use crate::error::{Error, Result};

/// Which equation produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Nonlocal,
    Local,
    Picard,
}

/// Velocity data at one stored time, restricted to the configured window.
///
/// `w[k]` is the downstream average at interface `first_cell + k` and
/// `u[k]` the value of cell `first_cell + k`; `w` has one more entry than `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldFrame {
    pub time: f64,
    pub first_cell: usize,
    pub w: Vec<f64>,
    pub u: Vec<f64>,
}

/// Snapshots at the output times plus the stored velocity frames.
#[derive(Clone, Debug)]
pub struct SolutionRecord {
    pub kind: RecordKind,
    pub config: SolverConfig,
    pub snapshots: Vec<GridFunction>,
    pub w_fields: Vec<FieldFrame>,
    /// Number of time steps taken.
    pub steps: usize,
}

impl SolutionRecord {
    /// Snapshot stored at time `t` (to within `1e-12`).
    pub fn snapshot_at(&self, t: f64) -> Option<&GridFunction> {
        self.snapshots
            .iter()
            .find(|s| (s.time - t).abs() <= 1e-12 * t.abs().max(1.0))
    }

    pub fn initial(&self) -> &GridFunction {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &GridFunction {
        self.snapshots.last().expect("records hold at least one snapshot")
    }

    /// Epsilon used in file names; the local limit is written as `0`.
    pub fn file_epsilon(&self) -> f64 {
        match self.kind {
            RecordKind::Local => 0.0,
            _ => self.config.epsilon(),
        }
    }

    /// `u_t<time>_eps<epsilon>.csv`.
    pub fn snapshot_file_name(&self, snapshot: &GridFunction) -> String {
        format!("u_t{}_eps{}.csv", snapshot.time, self.file_epsilon())
    }

    /// Writes one CSV per snapshot into `dir` and returns the paths.
    pub fn write_snapshots(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        self.snapshots
            .iter()
            .map(|s| {
                let path = dir.join(self.snapshot_file_name(s));
                std::fs::write(&path, s.to_csv()).map_err(|e| Error::io(&path, e))?;
                Ok(path)
            })
            .collect()
    }
}

/// Snaps a step onto the next output time when it would overshoot it.
fn clip_step(t: f64, dt: f64, target: f64) -> (f64, f64) {
    if t + dt >= target - 1e-9 * dt {
        (target - t, target)
    } else {
        (dt, t + dt)
    }
}

fn check_finite(u: &[f64], time: f64) -> Result<()> {
    match u.iter().position(|v| !v.is_finite()) {
        Some(cell) => Err(Error::NumericalBlowup { cell, time }),
        None => Ok(()),
    }
}

/// Marches the nonlocal equation from the exact cell averages of the datum
/// to `t_final` with the configured scheme.
pub fn solve_nonlocal(config: &SolverConfig) -> Result<SolutionRecord> {
    config.validate()?;
    let grid = config.grid;
    let n = grid.n_cells();
    let dx = grid.dx();
    let law = config.velocity;
    let times = config.snapshot_times();
    let (c0, c1) = config.frame_cells();
    let mut op = NonlocalOperator::new(&config.kernel, dx)?;

    let mut u = grid.project(&config.datum);
    let mut next = vec![0.0; n];
    let mut w = Vec::with_capacity(n + 2);
    let mut t = 0.0;
    let mut next_out = 0usize;
    let mut steps = 0usize;
    let mut snapshots = Vec::with_capacity(times.len());
    let mut frames = Vec::new();

    loop {
        // w at interfaces 0..=n, shifted by one for the Lax-Friedrichs layout
        let offset = match config.scheme {
            Scheme::Upwind => {
                op.interfaces(&u, config.right_ghost_value, &mut w);
                0
            }
            Scheme::LaxFriedrichs => {
                op.interfaces_with_left_ghost(
                    &u,
                    config.left_ghost_value,
                    config.right_ghost_value,
                    &mut w,
                );
                1
            }
        };
        let w_int = &w[offset..];

        let at_output = next_out < times.len() && t == times[next_out];
        if at_output {
            snapshots.push(GridFunction {
                grid,
                values: u.clone(),
                time: t,
            });
            next_out += 1;
        }
        if at_output || steps % config.field_stride == 0 {
            frames.push(FieldFrame {
                time: t,
                first_cell: c0,
                w: w_int[c0..=c1].to_vec(),
                u: u[c0..c1].to_vec(),
            });
        }
        if next_out >= times.len() {
            break;
        }

        let dt = cfl_dt_with(&law, w_int, dx, config.cfl);
        let (dt, t_new) = clip_step(t, dt, times[next_out]);
        let lambda = dt / dx;
        match config.scheme {
            Scheme::Upwind => {
                upwind_update(&u, w_int, lambda, &law, config.left_ghost_value, &mut next)
            }
            Scheme::LaxFriedrichs => lax_friedrichs_update(
                &u,
                &w,
                lambda,
                &law,
                config.left_ghost_value,
                config.right_ghost_value,
                &mut next,
            ),
        }
        check_finite(&next, t_new)?;
        std::mem::swap(&mut u, &mut next);
        t = t_new;
        steps += 1;
    }

    Ok(SolutionRecord {
        kind: RecordKind::Nonlocal,
        config: config.clone(),
        snapshots,
        w_fields: frames,
        steps,
    })
}

/// Godunov scheme for the local equation `u_t + (u (1 - u))_x = 0`.
/// `epsilon`, the kernel and the frame settings are ignored.
pub fn solve_local(config: &SolverConfig) -> Result<SolutionRecord> {
    config.validate()?;
    let grid = config.grid;
    let dx = grid.dx();
    let times = config.snapshot_times();
    let mut u = grid.project(&config.datum);
    let mut next = vec![0.0; u.len()];
    let mut t = 0.0;
    let mut next_out = 0usize;
    let mut steps = 0usize;
    let mut snapshots = Vec::with_capacity(times.len());

    loop {
        if next_out < times.len() && t == times[next_out] {
            snapshots.push(GridFunction {
                grid,
                values: u.clone(),
                time: t,
            });
            next_out += 1;
        }
        if next_out >= times.len() {
            break;
        }
        let max_speed = u
            .iter()
            .map(|&v| (1.0 - 2.0 * v).abs())
            .fold(1.0f64, f64::max);
        let (dt, t_new) = clip_step(t, config.cfl * dx / max_speed, times[next_out]);
        godunov_update(
            &u,
            dt / dx,
            config.left_ghost_value,
            config.right_ghost_value,
            &mut next,
        );
        check_finite(&next, t_new)?;
        std::mem::swap(&mut u, &mut next);
        t = t_new;
        steps += 1;
    }

    Ok(SolutionRecord {
        kind: RecordKind::Local,
        config: config.clone(),
        snapshots,
        w_fields: Vec::new(),
        steps,
    })
}
