//! Single-block demonstration: a half-height block at distance below
//! `epsilon` from a jam grows, the gap stays empty and the total variation
//! rises above its initial value `2`.

use std::fmt;

use crate::analysis::{check_plateau, total_variation, VerifyReport};
use crate::characteristics::{material_rhs, trace_characteristic, trace_characteristics};
use crate::error::{invalid_arg, Result};
use crate::fv::{cells_per_epsilon, solve_nonlocal, Grid1D, SolverConfig};
use crate::model::build_bar_u;

/// Tolerance for vacuum cells.
pub const VACUUM_TOL: f64 = 1e-6;
/// Allowed relative error of the initial growth rate.
pub const SLOPE_REL_TOL: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct MechanismReport {
    pub h: f64,
    pub epsilon: f64,
    pub tau: f64,
    pub dx: f64,
    pub tv_initial: f64,
    pub tv_tau: f64,
    pub plateau: VerifyReport,
    pub vacuum: VerifyReport,
    /// Growth rate of the block value along its midpoint characteristic
    /// over the first step, and the expected `1/(4 eps)`.
    pub slope: f64,
    pub expected_slope: f64,
}

impl MechanismReport {
    pub fn slope_rel_error(&self) -> f64 {
        (self.slope - self.expected_slope).abs() / self.expected_slope
    }

    pub fn tv_grows(&self) -> bool {
        self.tv_tau > 2.0
    }

    pub fn passed(&self) -> bool {
        self.tv_grows()
            && self.plateau.passed
            && self.vacuum.passed
            && self.slope_rel_error() <= SLOPE_REL_TOL
    }
}

impl fmt::Display for MechanismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{} total variation: {} at t = 0, {} at t = {}",
            flag(self.tv_grows()),
            self.tv_initial,
            self.tv_tau,
            self.tau
        )?;
        writeln!(f, "{}", self.plateau)?;
        writeln!(f, "{}", self.vacuum)?;
        write!(
            f,
            "{} initial growth: {} (expected {}, relative error {:.2e})",
            flag(self.slope_rel_error() <= SLOPE_REL_TOL),
            self.slope,
            self.expected_slope,
            self.slope_rel_error()
        )
    }
}

/// Largest `dx = h / (200 m)` with `epsilon / dx` an integer.
fn mechanism_dx(h: f64, epsilon: f64) -> Result<f64> {
    for m in 1..=1000 {
        let dx = h / (200.0 * m as f64);
        if cells_per_epsilon(epsilon, dx).is_ok() {
            return Ok(dx);
        }
    }
    Err(invalid_arg!("no grid with dx <= h/200 fits both h = {h} and epsilon = {epsilon}"))
}

/// Runs the block datum of width `h` and checks the plateau, the vacuum
/// left of zero away from the block, the initial growth rate and the total
/// variation at `tau`. Requires `epsilon > h`.
pub fn run_mechanism_demo(h: f64, epsilon: f64, tau: f64) -> Result<MechanismReport> {
    if !(h > 0.0) || !(epsilon > h) {
        return Err(invalid_arg!("need 0 < h < epsilon, got h = {h}, epsilon = {epsilon}"));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(invalid_arg!("tau must be positive, got {tau}"));
    }
    let dx = mechanism_dx(h, epsilon)?;
    let grid = Grid1D::with_spacing(-1.5, 1.0, dx)?;
    let mut cfg = SolverConfig::new(grid, epsilon, build_bar_u(h)?, tau)?;
    cfg.field_window = Some((-h - 2.0 * dx, 2.0 * dx));
    let record = solve_nonlocal(&cfg)?;

    let plateau = check_plateau(&record, 1e-12);

    let mid = trace_characteristic(&record, -0.75 * h, tau)?;
    let slope = (mid.values[1] - mid.values[0]) / (mid.times[1] - mid.times[0]);
    let expected_slope = material_rhs(0.5, 1.0, epsilon);

    let edges = trace_characteristics(&record, &[-h, -0.5 * h], tau)?;
    let band = 5.0 * (dx * tau).sqrt() + 2.0 * dx;
    let (lo, hi) = (edges[0].final_position() - band, edges[1].final_position() + band);
    let last = record.last();
    let mut worst = 0.0f64;
    let mut at = None;
    for (i, &v) in last.values.iter().enumerate() {
        let (a, b) = (grid.interface(i), grid.interface(i + 1));
        let vacuum = b <= 0.0 && (b <= lo || a >= hi);
        if vacuum && v.abs() > worst {
            worst = v.abs();
            at = Some(crate::analysis::Location { index: i, time: tau });
        }
    }
    let vacuum = VerifyReport::new("vacuum", worst, at, VACUUM_TOL);

    Ok(MechanismReport {
        h,
        epsilon,
        tau,
        dx,
        tv_initial: total_variation(record.initial()),
        tv_tau: total_variation(last),
        plateau,
        vacuum,
        slope,
        expected_slope,
    })
}
