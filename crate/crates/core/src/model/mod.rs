//! Kernels, the speed law and exact piecewise-constant initial data.

mod data;
mod kernel;
mod piecewise;
mod velocity;

pub use data::{
    block_height, block_interval, build_bar_u, build_u0, default_truncation, gap_interval,
    u0_total_variation,
};
pub use kernel::KernelSpec;
pub use piecewise::{cell_average, eval_piecewise, PiecewiseConstant1D};
pub use velocity::{velocity, VelocityLaw};
