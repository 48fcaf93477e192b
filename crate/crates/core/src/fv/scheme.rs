//! Discrete downstream average, time-step restriction and the one-step
//! update formulas of the finite-volume schemes.

use super::config::cells_per_epsilon;
use super::GridFunction;
use crate::error::{invalid_arg, Result};
use crate::model::{KernelSpec, VelocityLaw};

/// Smallest speed used in the time-step formula.
pub const SPEED_FLOOR: f64 = 1e-12;

/// Slack allowed when checking speeds and Courant numbers.
const CHECK_SLACK: f64 = 1e-12;

/// Discrete convolution `w = u * eta_eps` at grid interfaces.
///
/// For the indicator kernel the value at an interface is the mean of the
/// next `M = eps / dx` cells, evaluated with compensated suffix sums so that
/// a window lying in a constant integer-valued region is exact.
#[derive(Clone, Debug)]
pub struct NonlocalOperator {
    reach: usize,
    weights: Option<Vec<f64>>,
    hi: Vec<f64>,
    lo: Vec<f64>,
    ext: Vec<f64>,
}

impl NonlocalOperator {
    pub fn new(kernel: &KernelSpec, dx: f64) -> Result<Self> {
        let m = cells_per_epsilon(kernel.epsilon(), dx)?;
        let (reach, weights) = if kernel.is_uniform_indicator() {
            (m, None)
        } else {
            let w = kernel.cell_weights(dx);
            (w.len(), Some(w))
        };
        Ok(Self {
            reach,
            weights,
            hi: Vec::new(),
            lo: Vec::new(),
            ext: Vec::new(),
        })
    }

    /// Number of cells ahead of an interface that enter its average.
    pub fn reach(&self) -> usize {
        self.reach
    }

    /// Fills `out[j]` (length `n + 1`) with `w` at interface `j`, using
    /// `right_ghost` for cells beyond the grid.
    pub fn interfaces(&mut self, u: &[f64], right_ghost: f64, out: &mut Vec<f64>) {
        self.ext.clear();
        self.ext.extend_from_slice(u);
        self.ext.extend(std::iter::repeat(right_ghost).take(self.reach));
        self.window(u.len() + 1, out);
    }

    /// Like [`interfaces`](Self::interfaces) but also covers interface
    /// `-1` (the left edge of the left ghost cell); `out` has length `n + 2`
    /// and `out[j + 1]` is interface `j`.
    pub fn interfaces_with_left_ghost(
        &mut self,
        u: &[f64],
        left_ghost: f64,
        right_ghost: f64,
        out: &mut Vec<f64>,
    ) {
        self.ext.clear();
        self.ext.push(left_ghost);
        self.ext.extend_from_slice(u);
        self.ext.extend(std::iter::repeat(right_ghost).take(self.reach));
        self.window(u.len() + 2, out);
    }

    fn window(&mut self, count: usize, out: &mut Vec<f64>) {
        out.clear();
        match &self.weights {
            Some(weights) => {
                out.extend((0..count).map(|j| {
                    weights
                        .iter()
                        .zip(&self.ext[j..])
                        .map(|(g, v)| g * v)
                        .sum::<f64>()
                }));
            }
            None => {
                let len = self.ext.len();
                self.hi.clear();
                self.hi.resize(len + 1, 0.0);
                self.lo.clear();
                self.lo.resize(len + 1, 0.0);
                // Neumaier-compensated suffix sums
                let (mut s, mut c) = (0.0f64, 0.0f64);
                for k in (0..len).rev() {
                    let x = self.ext[k];
                    let t = s + x;
                    if s.abs() >= x.abs() {
                        c += (s - t) + x;
                    } else {
                        c += (x - t) + s;
                    }
                    s = t;
                    self.hi[k] = s;
                    self.lo[k] = c;
                }
                let m = self.reach;
                let mf = m as f64;
                out.extend((0..count).map(|j| {
                    let sum = (self.hi[j] - self.hi[j + m]) + (self.lo[j] - self.lo[j + m]);
                    sum / mf
                }));
            }
        }
    }
}

/// `w` at every interface of `u`'s grid, cells beyond the right boundary
/// taking the value `right_ghost`.
///
/// Fails when `epsilon` is not an integer multiple of the grid spacing.
pub fn compute_w(u: &GridFunction, kernel: &KernelSpec, right_ghost: f64) -> Result<Vec<f64>> {
    let mut op = NonlocalOperator::new(kernel, u.grid.dx())?;
    let mut out = Vec::new();
    op.interfaces(&u.values, right_ghost, &mut out);
    Ok(out)
}

/// Largest stable step for the default law `V(u) = 1 - u`.
pub fn cfl_dt(w: &[f64], dx: f64, cfl: f64) -> f64 {
    cfl_dt_with(&VelocityLaw::default(), w, dx, cfl)
}

/// `cfl dx / max(max_i V(w_i), floor)`, capped at `cfl dx`.
pub fn cfl_dt_with(law: &VelocityLaw, w: &[f64], dx: f64, cfl: f64) -> f64 {
    let max_speed = w
        .iter()
        .map(|&wi| law.eval(wi).abs())
        .fold(0.0f64, f64::max)
        .max(SPEED_FLOOR);
    (cfl * dx / max_speed).min(cfl * dx)
}

/// Upwind update `u_i - dt/dx (F_{i+1/2} - F_{i-1/2})` with
/// `F_{i+1/2} = u_i V(w_{i+1/2})` and inflow `left_ghost * V(w_{-1/2})`.
///
/// Fails when a speed is negative or the Courant number exceeds one.
pub fn step_upwind(
    u: &GridFunction,
    w: &[f64],
    dt: f64,
    law: &VelocityLaw,
    left_ghost: f64,
) -> Result<GridFunction> {
    let n = u.values.len();
    if w.len() != n + 1 {
        return Err(invalid_arg!("expected {} interface values, got {}", n + 1, w.len()));
    }
    if !(dt >= 0.0) {
        return Err(invalid_arg!("dt must be nonnegative, got {dt}"));
    }
    let dx = u.grid.dx();
    for (j, &wj) in w.iter().enumerate() {
        let s = law.eval(wj);
        if s < -CHECK_SLACK {
            return Err(invalid_arg!("negative speed {s} at interface {j}"));
        }
        if s * dt / dx > 1.0 + CHECK_SLACK {
            return Err(invalid_arg!(
                "CFL violation at interface {j}: speed {s}, dt {dt}, dx {dx}"
            ));
        }
    }
    let mut out = vec![0.0; n];
    upwind_update(&u.values, w, dt / dx, law, left_ghost, &mut out);
    Ok(GridFunction {
        grid: u.grid,
        values: out,
        time: u.time + dt,
    })
}

pub(crate) fn upwind_update(
    u: &[f64],
    w: &[f64],
    lambda: f64,
    law: &VelocityLaw,
    left_ghost: f64,
    out: &mut [f64],
) {
    let n = u.len();
    let mut flux_in = left_ghost * law.eval(w[0]);
    for i in 0..n {
        let flux_out = u[i] * law.eval(w[i + 1]);
        out[i] = u[i] - lambda * (flux_out - flux_in);
        flux_in = flux_out;
    }
}

/// Lax-Friedrichs-type update with cell speeds `c_i = V(w_{i-1/2})` and
/// `F_{i+1/2} = (u_i c_i + u_{i+1} c_{i+1}) / 2 + (u_i - u_{i+1}) / 2`.
///
/// `w_ext` comes from
/// [`NonlocalOperator::interfaces_with_left_ghost`] (length `n + 2`).
pub(crate) fn lax_friedrichs_update(
    u: &[f64],
    w_ext: &[f64],
    lambda: f64,
    law: &VelocityLaw,
    left_ghost: f64,
    right_ghost: f64,
    out: &mut [f64],
) {
    const VISCOSITY: f64 = 1.0;
    let n = u.len();
    let cell = |i: isize| -> (f64, f64) {
        // (u_i, c_i) for i in -1..=n
        let ui = if i < 0 {
            left_ghost
        } else if i as usize >= n {
            right_ghost
        } else {
            u[i as usize]
        };
        (ui, law.eval(w_ext[(i + 1) as usize]))
    };
    let flux = |i: isize| -> f64 {
        let (ua, ca) = cell(i);
        let (ub, cb) = cell(i + 1);
        0.5 * (ua * ca + ub * cb) + 0.5 * VISCOSITY * (ua - ub)
    };
    let mut flux_in = flux(-1);
    for i in 0..n {
        let flux_out = flux(i as isize);
        out[i] = u[i] - lambda * (flux_out - flux_in);
        flux_in = flux_out;
    }
}

#[inline]
fn lwr_flux(u: f64) -> f64 {
    u * (1.0 - u)
}

/// Godunov flux for `f(u) = u (1 - u)`: the minimum of `f` over `[ul, ur]`
/// when `ul <= ur`, the maximum over `[ur, ul]` otherwise.
pub fn godunov_flux_local(ul: f64, ur: f64) -> f64 {
    if ul <= ur {
        lwr_flux(ul).min(lwr_flux(ur))
    } else if ur <= 0.5 && 0.5 <= ul {
        0.25
    } else {
        lwr_flux(ul).max(lwr_flux(ur))
    }
}

pub(crate) fn godunov_update(u: &[f64], lambda: f64, left_ghost: f64, right_ghost: f64, out: &mut [f64]) {
    let n = u.len();
    let mut flux_in = godunov_flux_local(left_ghost, u[0]);
    for i in 0..n {
        let right = if i + 1 < n { u[i + 1] } else { right_ghost };
        let flux_out = godunov_flux_local(u[i], right);
        out[i] = u[i] - lambda * (flux_out - flux_in);
        flux_in = flux_out;
    }
}
