use std::fmt;
use std::str::FromStr;

use super::Grid1D;
use crate::error::{invalid_arg, invalid_config, Error, Result};
use crate::model::{KernelSpec, PiecewiseConstant1D, VelocityLaw};

/// Numerical flux used by the nonlocal solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `F_{i+1/2} = u_i V(w_{i+1/2})`.
    #[default]
    Upwind,
    /// Centered flux with unit numerical viscosity.
    LaxFriedrichs,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Upwind => "upwind",
            Scheme::LaxFriedrichs => "lax-friedrichs",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "upwind" => Ok(Scheme::Upwind),
            "lax-friedrichs" | "lax_friedrichs" | "lxf" => Ok(Scheme::LaxFriedrichs),
            other => Err(invalid_arg!("unknown scheme {other:?}")),
        }
    }
}

/// Everything a solver run needs. Build with [`SolverConfig::new`] and
/// adjust the public fields; [`validate`](Self::validate) is called by
/// every solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub grid: Grid1D,
    pub kernel: KernelSpec,
    pub velocity: VelocityLaw,
    pub cfl: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    pub datum: PiecewiseConstant1D,
    pub left_ghost_value: f64,
    pub right_ghost_value: f64,
    /// Snapshot times; `0` and `t_final` are always added.
    pub output_times: Vec<f64>,
    /// A velocity frame is stored every `field_stride` steps (and at every
    /// output time).
    pub field_stride: usize,
    /// Spatial window of the stored velocity frames; `None` stores the whole grid.
    pub field_window: Option<(f64, f64)>,
}

impl SolverConfig {
    /// Defaults: indicator kernel, `V(u) = 1 - u`, CFL 0.9, upwind, ghosts
    /// `0` on the left and `1` on the right, frames at every step.
    pub fn new(grid: Grid1D, epsilon: f64, datum: PiecewiseConstant1D, t_final: f64) -> Result<Self> {
        let cfg = Self {
            grid,
            kernel: KernelSpec::indicator(epsilon)?,
            velocity: VelocityLaw::default(),
            cfl: 0.9,
            t_final,
            scheme: Scheme::Upwind,
            datum,
            left_ghost_value: 0.0,
            right_ghost_value: 1.0,
            output_times: Vec::new(),
            field_stride: 1,
            field_window: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn epsilon(&self) -> f64 {
        self.kernel.epsilon()
    }

    /// `M = epsilon / dx`, required to be a positive integer.
    pub fn cells_per_epsilon(&self) -> Result<usize> {
        cells_per_epsilon(self.epsilon(), self.grid.dx())
    }

    pub fn validate(&self) -> Result<()> {
        self.cells_per_epsilon()?;
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(invalid_config!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(invalid_config!("t_final must be nonnegative, got {}", self.t_final));
        }
        for &t in &self.output_times {
            if !(t >= 0.0 && t <= self.t_final) {
                return Err(invalid_config!(
                    "output time {t} outside [0, {}]",
                    self.t_final
                ));
            }
        }
        if !self.left_ghost_value.is_finite() || !self.right_ghost_value.is_finite() {
            return Err(invalid_config!("ghost values must be finite"));
        }
        if self.field_stride == 0 {
            return Err(invalid_config!("field_stride must be at least 1"));
        }
        if let Some((a, b)) = self.field_window {
            if !(a < b) {
                return Err(invalid_config!("field window needs a < b, got [{a}, {b}]"));
            }
        }
        Ok(())
    }

    /// Sorted, deduplicated output times with `0` and `t_final` included.
    pub fn snapshot_times(&self) -> Vec<f64> {
        let mut times = self.output_times.clone();
        times.push(0.0);
        times.push(self.t_final);
        times.sort_by(f64::total_cmp);
        times.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
        times
    }

    /// Index range of the cells whose frames are stored.
    pub(crate) fn frame_cells(&self) -> (usize, usize) {
        let n = self.grid.n_cells();
        match self.field_window {
            None => (0, n),
            Some((a, b)) => {
                let dx = self.grid.dx();
                let lo = ((a - self.grid.x_min()) / dx).floor().max(0.0) as usize;
                let hi = ((b - self.grid.x_min()) / dx).ceil().max(0.0) as usize;
                (lo.min(n), hi.min(n).max(lo.min(n)))
            }
        }
    }
}

pub(crate) fn cells_per_epsilon(epsilon: f64, dx: f64) -> Result<usize> {
    let ratio = epsilon / dx;
    let m = ratio.round();
    if m < 1.0 || (ratio - m).abs() > 1e-9 * m {
        return Err(invalid_config!(
            "epsilon = {epsilon} is not a positive integer multiple of dx = {dx}"
        ));
    }
    Ok(m as usize)
}
