//! Initial data: the single-block mechanism datum and the blow-up datum.

use super::PiecewiseConstant1D;
use crate::error::{invalid_arg, Result};

/// `1/2` on `[-h, -h/2)`, `1` on `[0, +inf[`, `0` elsewhere.
pub fn build_bar_u(h: f64) -> Result<PiecewiseConstant1D> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(invalid_arg!("block width h must be positive, got {h}"));
    }
    PiecewiseConstant1D::new(vec![-h, -0.5 * h, 0.0], vec![0.5, 0.0], 0.0, 1.0)
}

/// Support `[-4^-k, -4^-k / 2)` of block `k` of the blow-up datum.
pub fn block_interval(k: u32) -> (f64, f64) {
    let a = 0.25f64.powi(k as i32);
    (-a, -0.5 * a)
}

/// Gap `[-4^-k / 2, -4^-(k+1))` between block `k` and block `k + 1`.
pub fn gap_interval(k: u32) -> (f64, f64) {
    let a = 0.25f64.powi(k as i32);
    (-0.5 * a, -0.25 * a)
}

/// Height `2^-k` of block `k`.
pub fn block_height(k: u32) -> f64 {
    0.5f64.powi(k as i32)
}

/// The step on `[0, +inf[` plus the blocks `2^-k 1_[-4^-k, -4^-k/2)` for
/// `k = 0..=truncation`.
pub fn build_u0(truncation: u32) -> PiecewiseConstant1D {
    let mut breakpoints = Vec::with_capacity(2 * truncation as usize + 3);
    let mut values = Vec::with_capacity(2 * truncation as usize + 2);
    for k in 0..=truncation {
        let (a, b) = block_interval(k);
        breakpoints.push(a);
        breakpoints.push(b);
        values.push(block_height(k));
        values.push(0.0);
    }
    breakpoints.push(0.0);
    PiecewiseConstant1D::new(breakpoints, values, 0.0, 1.0)
        .expect("blow-up datum layout is valid by construction")
}

/// Exact total variation `1 + 2 sum_{k<=K} 2^-k` of [`build_u0`]`(K)`.
pub fn u0_total_variation(truncation: u32) -> f64 {
    1.0 + 2.0 * (0..=truncation).map(block_height).sum::<f64>()
}

/// Truncation `ceil(log4(1/dx)) + 2`, enough for every block wider than a cell.
pub fn default_truncation(dx: f64) -> u32 {
    assert!(dx > 0.0, "dx must be positive");
    let mut k = 0u32;
    // smallest k with 4^-k <= dx
    while 0.25f64.powi(k as i32) > dx {
        k += 1;
    }
    k + 2
}
