//! Fixed-point construction of the nonlocal solution.
//!
//! Each iteration freezes the velocity field `V(w^(n))`, solves the linear
//! continuity equation `u_t + (V(w^(n)) u)_x = 0` along its characteristics
//! and recomputes `w^(n+1)` from the result. Over one time step every
//! interface and every cell center is moved with RK4; the cell value is
//! carried along the center characteristic by `d(ln u)/dt = -d_x V(w)`,
//! then the pieces between moved interfaces are averaged back onto the grid.

use crate::error::{invalid_arg, Error, Result};
use crate::fv::{FieldFrame, Grid1D, NonlocalOperator, RecordKind, SolutionRecord, SolverConfig};
use crate::model::VelocityLaw;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 50;

/// A converged fixed point with its residual history.
#[derive(Clone, Debug)]
pub struct PicardOutcome {
    pub record: SolutionRecord,
    /// Sup-norm change of `u` over all time levels, one entry per iteration.
    pub residuals: Vec<f64>,
}

impl PicardOutcome {
    pub fn iterations(&self) -> usize {
        self.residuals.len()
    }
}

/// Runs the iteration until the sup-norm change of `u` over every time
/// level is at most `tol`. Fails with [`Error::NotConverged`] after
/// `max_iter` iterations.
///
/// All time levels are held in memory, so the cost is
/// `O(levels * cells)` per iteration in both time and space.
pub fn solve_picard(config: &SolverConfig, tol: f64, max_iter: usize) -> Result<PicardOutcome> {
    config.validate()?;
    if !(tol > 0.0) {
        return Err(invalid_arg!("tolerance must be positive, got {tol}"));
    }
    if max_iter == 0 {
        return Err(invalid_arg!("max_iter must be at least 1"));
    }
    let grid = config.grid;
    let n = grid.n_cells();
    let law = config.velocity;
    let (levels, outputs) = time_levels(config);
    let mut op = NonlocalOperator::new(&config.kernel, grid.dx())?;

    let u0 = grid.project(&config.datum);
    let mut w0 = Vec::with_capacity(n + 1);
    op.interfaces(&u0, config.right_ghost_value, &mut w0);
    let mut u_levels = vec![u0; levels.len()];
    let mut w_levels = vec![w0; levels.len()];

    let mut transport = Transport::new(grid, law, config.left_ghost_value, config.right_ghost_value);
    let mut residuals = Vec::new();
    loop {
        let mut residual = 0.0f64;
        for s in 0..levels.len() - 1 {
            let dt = levels[s + 1] - levels[s];
            let (done, rest) = u_levels.split_at_mut(s + 1);
            let next = &mut rest[0];
            let before = std::mem::take(next);
            *next = transport.step(&done[s], &w_levels[s], &w_levels[s + 1], dt);
            if let Some(cell) = next.iter().position(|v| !v.is_finite()) {
                return Err(Error::NumericalBlowup {
                    cell,
                    time: levels[s + 1],
                });
            }
            for (a, b) in next.iter().zip(&before) {
                residual = residual.max((a - b).abs());
            }
        }
        for (w, u) in w_levels.iter_mut().zip(&u_levels) {
            op.interfaces(u, config.right_ghost_value, w);
        }
        residuals.push(residual);
        if residual <= tol {
            break;
        }
        if residuals.len() >= max_iter {
            return Err(Error::NotConverged { residuals });
        }
    }

    let (c0, c1) = config.frame_cells();
    let mut snapshots = Vec::with_capacity(outputs.len());
    let mut frames = Vec::new();
    for (s, &t) in levels.iter().enumerate() {
        let is_output = outputs.contains(&s);
        if is_output {
            snapshots.push(crate::fv::GridFunction {
                grid,
                values: u_levels[s].clone(),
                time: t,
            });
        }
        if is_output || s % config.field_stride == 0 {
            frames.push(FieldFrame {
                time: t,
                first_cell: c0,
                w: w_levels[s][c0..=c1].to_vec(),
                u: u_levels[s][c0..c1].to_vec(),
            });
        }
    }

    Ok(PicardOutcome {
        record: SolutionRecord {
            kind: RecordKind::Picard,
            config: config.clone(),
            snapshots,
            w_fields: frames,
            steps: levels.len() - 1,
        },
        residuals,
    })
}

/// Time levels spaced by `cfl dx / max|V|`, shortened to land on every
/// output time, and the indices of the output levels.
fn time_levels(config: &SolverConfig) -> (Vec<f64>, Vec<usize>) {
    let lo = config
        .datum
        .min_value()
        .min(config.left_ghost_value)
        .min(config.right_ghost_value);
    let hi = config
        .datum
        .max_value()
        .max(config.left_ghost_value)
        .max(config.right_ghost_value);
    let max_speed = config
        .velocity
        .eval(lo)
        .abs()
        .max(config.velocity.eval(hi).abs())
        .max(1.0);
    let dt = config.cfl * config.grid.dx() / max_speed;
    let times = config.snapshot_times();
    let mut levels = vec![0.0];
    let mut outputs = vec![0];
    for &target in &times[1..] {
        let mut t = *levels.last().expect("nonempty");
        while t < target {
            t = if t + dt >= target - 1e-9 * dt { target } else { t + dt };
            levels.push(t);
        }
        outputs.push(levels.len() - 1);
    }
    (levels, outputs)
}

/// One step of the frozen-field transport.
struct Transport {
    grid: Grid1D,
    law: VelocityLaw,
    left_ghost: f64,
    right_ghost: f64,
    edges: Vec<f64>,
}

impl Transport {
    fn new(grid: Grid1D, law: VelocityLaw, left_ghost: f64, right_ghost: f64) -> Self {
        Self {
            grid,
            law,
            left_ghost,
            right_ghost,
            edges: Vec::new(),
        }
    }

    /// `w` and its slope at `x`, linear between interfaces and constant
    /// outside the grid.
    fn sample(&self, w: &[f64], x: f64) -> (f64, f64) {
        let dx = self.grid.dx();
        let n = self.grid.n_cells();
        let s = (x - self.grid.x_min()) / dx;
        if s <= 0.0 {
            return (w[0], 0.0);
        }
        if s >= n as f64 {
            return (w[n], 0.0);
        }
        let k = (s.floor() as usize).min(n - 1);
        let theta = s - k as f64;
        let slope = (w[k + 1] - w[k]) / dx;
        (w[k] + theta * (w[k + 1] - w[k]), slope)
    }

    /// Speed and `d(ln u)/dt` at `(theta, x)`, theta the fraction of the step.
    fn rates(&self, wa: &[f64], wb: &[f64], theta: f64, x: f64) -> (f64, f64) {
        let (va, sa) = self.sample(wa, x);
        let (vb, sb) = self.sample(wb, x);
        let w = va + theta * (vb - va);
        let wx = sa + theta * (sb - sa);
        (self.law.eval(w), self.law.slope * wx)
    }

    /// RK4 for position and log-growth over one step.
    fn advance(&self, wa: &[f64], wb: &[f64], dt: f64, x: f64) -> (f64, f64) {
        let (s1, g1) = self.rates(wa, wb, 0.0, x);
        let (s2, g2) = self.rates(wa, wb, 0.5, x + 0.5 * dt * s1);
        let (s3, g3) = self.rates(wa, wb, 0.5, x + 0.5 * dt * s2);
        let (s4, g4) = self.rates(wa, wb, 1.0, x + dt * s3);
        (
            x + dt / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4),
            dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4),
        )
    }

    fn step(&mut self, u: &[f64], wa: &[f64], wb: &[f64], dt: f64) -> Vec<f64> {
        let grid = self.grid;
        let n = grid.n_cells();
        self.edges.clear();
        for j in 0..=n {
            let x = self.advance(wa, wb, dt, grid.interface(j)).0;
            self.edges.push(x);
        }
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let growth = self.advance(wa, wb, dt, grid.center(i)).1;
                u[i] * growth.exp()
            })
            .collect();
        self.remap(&values)
    }

    /// Cell averages of the function equal to `values[i]` on
    /// `[edges[i], edges[i+1])`, the left ghost before `edges[0]` and the
    /// right ghost after `edges[n]`.
    fn remap(&self, values: &[f64]) -> Vec<f64> {
        let grid = self.grid;
        let n = grid.n_cells();
        let edges = &self.edges;
        // piece p = 0 is the left inflow region, p = i + 1 carries values[i],
        // p = n + 1 is the region past the last edge
        let piece_end = |p: usize| if p <= n { edges[p] } else { f64::INFINITY };
        let piece_value = |p: usize| match p {
            0 => self.left_ghost,
            p if p <= n => values[p - 1],
            _ => self.right_ghost,
        };
        let mut out = Vec::with_capacity(n);
        let mut p = 0usize;
        for j in 0..n {
            let (a, b) = (grid.interface(j), grid.interface(j + 1));
            while piece_end(p) <= a {
                p += 1;
            }
            let mut mass = 0.0;
            let mut lo = a;
            let mut q = p;
            loop {
                let hi = piece_end(q).min(b);
                if hi > lo {
                    mass += piece_value(q) * (hi - lo);
                    lo = hi;
                }
                if piece_end(q) >= b {
                    break;
                }
                q += 1;
            }
            out.push(mass / (b - a));
        }
        out
    }
}
