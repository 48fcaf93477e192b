//! Finite-volume discretisation on uniform grids.

mod config;
mod grid;
mod scheme;
mod solver;

pub(crate) use config::cells_per_epsilon;
pub use config::{Scheme, SolverConfig};
pub use grid::{Grid1D, GridFunction};
pub use scheme::{
    cfl_dt, cfl_dt_with, compute_w, godunov_flux_local, step_upwind, NonlocalOperator, SPEED_FLOOR,
};
pub use solver::{solve_local, solve_nonlocal, FieldFrame, RecordKind, SolutionRecord};
