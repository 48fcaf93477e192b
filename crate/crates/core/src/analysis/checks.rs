//! Pass/fail checks of the qualitative properties of computed solutions.

use std::fmt;

use crate::characteristics::CharacteristicPath;
use crate::error::{invalid_arg, Result};
use crate::fv::SolutionRecord;

/// Tolerance of [`check_max_principle`].
pub const MAX_PRINCIPLE_TOL: f64 = 1e-12;
/// Tolerance per adjacent pair in [`check_monotonicity`].
pub const MONOTONICITY_TOL: f64 = 1e-10;

/// Where the worst violation of a check occurred.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Location {
    /// Cell index, or path index for checks on characteristics.
    pub index: usize,
    pub time: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub name: String,
    pub passed: bool,
    pub worst_violation: f64,
    pub location: Option<Location>,
    pub tolerance: f64,
}

impl VerifyReport {
    /// `passed` is `worst <= tolerance`; NaN fails.
    pub fn new(name: impl Into<String>, worst: f64, location: Option<Location>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tolerance,
            worst_violation: worst,
            location,
            tolerance,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: worst {:.3e}, tolerance {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst_violation,
            self.tolerance
        )?;
        if let Some(loc) = self.location {
            write!(f, " (index {}, t = {})", loc.index, loc.time)?;
        }
        Ok(())
    }
}

/// Running maximum of a violation with its location.
#[derive(Default)]
struct Worst {
    value: f64,
    at: Option<Location>,
}

impl Worst {
    fn update(&mut self, v: f64, index: usize, time: f64) {
        if v > self.value || (v.is_nan() && !self.value.is_nan()) {
            self.value = v;
            self.at = Some(Location { index, time });
        }
    }
}

/// Every snapshot value lies in `[alpha, beta]` up to [`MAX_PRINCIPLE_TOL`].
pub fn check_max_principle(record: &SolutionRecord, alpha: f64, beta: f64) -> VerifyReport {
    let mut worst = Worst::default();
    for s in &record.snapshots {
        for (i, &v) in s.values.iter().enumerate() {
            let excess = if v.is_nan() { f64::NAN } else { (alpha - v).max(v - beta) };
            worst.update(excess, i, s.time);
        }
    }
    VerifyReport::new("max-principle", worst.value, worst.at, MAX_PRINCIPLE_TOL)
}

/// Largest decrease (for `sign = 1`) or increase (`sign = -1`) between
/// adjacent cells.
fn monotone_violation(values: &[f64], sign: f64) -> (f64, usize) {
    values
        .windows(2)
        .enumerate()
        .map(|(i, w)| (sign * (w[0] - w[1]), i))
        .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc })
}

/// Every snapshot is monotone in the direction of the initial one, up to
/// [`MONOTONICITY_TOL`] per adjacent pair. A constant initial snapshot
/// accepts either direction. Fails with an invalid-argument error when the
/// initial snapshot is not monotone.
pub fn check_monotonicity(record: &SolutionRecord) -> Result<VerifyReport> {
    let initial = &record.initial().values;
    let up = monotone_violation(initial, 1.0).0 <= MONOTONICITY_TOL;
    let down = monotone_violation(initial, -1.0).0 <= MONOTONICITY_TOL;
    if !up && !down {
        return Err(invalid_arg!("initial snapshot is not monotone"));
    }
    let mut worst = Worst::default();
    for s in &record.snapshots {
        let inc = monotone_violation(&s.values, 1.0);
        let dec = monotone_violation(&s.values, -1.0);
        let (v, i) = match (up, down) {
            (true, false) => inc,
            (false, true) => dec,
            _ => if inc.0 <= dec.0 { inc } else { dec },
        };
        worst.update(v, i, s.time);
    }
    Ok(VerifyReport::new("monotonicity", worst.value, worst.at, MONOTONICITY_TOL))
}

/// `|u - 1|` on the cells lying in `x >= 0`, over all snapshots.
pub fn check_plateau(record: &SolutionRecord, tolerance: f64) -> VerifyReport {
    let grid = record.config.grid;
    let mut worst = Worst::default();
    for s in &record.snapshots {
        for (i, &v) in s.values.iter().enumerate() {
            if grid.interface(i) >= 0.0 {
                worst.update((v - 1.0).abs(), i, s.time);
            }
        }
    }
    VerifyReport::new("plateau", worst.value, worst.at, tolerance)
}

/// Paths ordered by start never cross: `X(t, y1) <= X(t, y2) + tolerance`.
pub fn check_non_crossing(paths: &[CharacteristicPath], tolerance: f64) -> VerifyReport {
    let mut sorted: Vec<(usize, &CharacteristicPath)> = paths.iter().enumerate().collect();
    sorted.sort_by(|a, b| a.1.start.total_cmp(&b.1.start));
    let mut worst = Worst::default();
    for pair in sorted.windows(2) {
        let (_, p) = pair[0];
        let (j, q) = pair[1];
        for ((t, x), y) in p.times.iter().zip(&p.positions).zip(&q.positions) {
            worst.update(x - y, j, *t);
        }
    }
    VerifyReport::new("non-crossing", worst.value, worst.at, tolerance)
}

/// Each path stays in `[start, upper]`.
pub fn check_confinement(paths: &[CharacteristicPath], upper: f64, tolerance: f64) -> VerifyReport {
    let mut worst = Worst::default();
    for (j, p) in paths.iter().enumerate() {
        for (t, x) in p.times.iter().zip(&p.positions) {
            worst.update((p.start - x).max(x - upper), j, *t);
        }
    }
    VerifyReport::new("confinement", worst.value, worst.at, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fv::{solve_nonlocal, Grid1D, SolverConfig};
    use crate::model::{build_u0, PiecewiseConstant1D};

    fn run(datum: PiecewiseConstant1D, lg: f64, rg: f64) -> SolutionRecord {
        let grid = Grid1D::with_spacing(-1.5, 1.0, 1.0 / 64.0).unwrap();
        let mut c = SolverConfig::new(grid, 0.25, datum, 0.25).unwrap();
        c.left_ghost_value = lg;
        c.right_ghost_value = rg;
        solve_nonlocal(&c).unwrap()
    }

    #[test]
    fn max_principle_and_negative_control() {
        let mut rec = run(build_u0(4), 0.0, 1.0);
        let r = check_max_principle(&rec, 0.0, 1.0);
        assert!(r.passed, "{r}");
        rec.snapshots[1].values[7] = 1.5;
        let r = check_max_principle(&rec, 0.0, 1.0);
        assert!(!r.passed);
        assert_eq!(r.worst_violation, 0.5);
        assert_eq!(r.location.unwrap().index, 7);
    }

    #[test]
    fn constant_datum() {
        let rec = run(PiecewiseConstant1D::constant(0.4), 0.4, 0.4);
        let r = check_max_principle(&rec, 0.4, 0.4);
        assert!(r.passed && r.worst_violation <= 1e-15, "{r}");
        assert!(check_monotonicity(&rec).unwrap().passed);
    }

    #[test]
    fn monotonicity() {
        let rec = run(PiecewiseConstant1D::step(0.0, 0.0, 1.0), 0.0, 1.0);
        assert!(check_monotonicity(&rec).unwrap().passed);
        let rec = run(build_u0(4), 0.0, 1.0);
        assert!(check_monotonicity(&rec).is_err());
    }

    #[test]
    fn plateau_negative_control() {
        let rec = run(build_u0(4), 0.0, 1.0);
        assert_eq!(check_plateau(&rec, 0.0).worst_violation, 0.0);
        let rec = run(build_u0(4), 0.0, 0.0);
        assert!(!check_plateau(&rec, 5e-3).passed);
    }

    #[test]
    fn path_checks() {
        let path = |start: f64, xs: Vec<f64>| CharacteristicPath {
            start,
            times: (0..xs.len()).map(|i| i as f64).collect(),
            positions: xs,
            values: vec![0.0; 3],
            epsilon: 1.0,
        };
        let a = path(-1.0, vec![-1.0, -0.5, -0.2]);
        let b = path(-0.5, vec![-0.5, -0.4, -0.1]);
        assert!(check_non_crossing(&[b.clone(), a.clone()], 1e-8).passed);
        assert!(check_confinement(&[a.clone(), b.clone()], 0.0, 0.0).passed);
        let c = path(-0.9, vec![-0.9, -0.6, -0.3]);
        assert!(!check_non_crossing(&[a, c], 1e-8).passed);
        let d = path(-0.9, vec![-0.9, -0.3, 0.1]);
        assert!(!check_confinement(&[d], 0.0, 1e-8).passed);
    }
}
