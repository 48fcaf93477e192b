//! The `(tau, j)` sweep comparing measured and reconstructed total
//! variation with the analytic lower bounds.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::manifest::{write_output, Manifest};
use super::simulate::{frame_stride, RunOutput};
use super::RunConfig;
use crate::analysis::{
    bounds_csv, reconstruct_tv_from_characteristics_with, total_variation, BoundReport,
    Reconstruction, DEFAULT_MIN_CELLS,
};
use crate::error::{invalid_config, Error, Result};
use crate::fv::{cells_per_epsilon, solve_nonlocal, Grid1D, Scheme, SolverConfig};
use crate::model::{build_u0, default_truncation};

/// Grid spacing used for `epsilon = 2^-j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RefinementRule {
    /// `dx = 2^-(4 ceil(j/2) + 5)`: the first three blocks inside
    /// `[-eps, 0]` span at least 64 cells each.
    ResolveBlocks,
    /// `dx = 2^-(j + c)`.
    Offset(u32),
    Fixed(f64),
}

impl Default for RefinementRule {
    fn default() -> Self {
        RefinementRule::ResolveBlocks
    }
}

impl RefinementRule {
    pub fn dx(&self, j: u32) -> f64 {
        match *self {
            RefinementRule::ResolveBlocks => 0.5f64.powi((4 * j.div_ceil(2) + 5) as i32),
            RefinementRule::Offset(c) => 0.5f64.powi((j + c) as i32),
            RefinementRule::Fixed(dx) => dx,
        }
    }
}

impl fmt::Display for RefinementRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinementRule::ResolveBlocks => write!(f, "resolve-blocks"),
            RefinementRule::Offset(c) => write!(f, "offset:{c}"),
            RefinementRule::Fixed(dx) => write!(f, "fixed:{dx}"),
        }
    }
}

/// Interval every sweep domain must contain, so that the measured
/// variation sees the whole datum and the jam in front of it.
pub const TV_WINDOW: (f64, f64) = (-1.25, 0.5);

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub taus: Vec<f64>,
    pub js: Vec<u32>,
    pub refinement: RefinementRule,
    pub scheme: Scheme,
    pub domain: (f64, f64),
    pub cfl: f64,
    /// Blocks narrower than this many cells are left out of the reconstruction.
    pub min_cells: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            taus: vec![0.2],
            js: (2..=6).collect(),
            refinement: RefinementRule::default(),
            scheme: Scheme::Upwind,
            domain: (-1.5, 1.0),
            cfl: 0.9,
            min_cells: DEFAULT_MIN_CELLS,
        }
    }
}

impl SweepSpec {
    /// Taus, j list, scheme, domain and CFL from `cfg`; an explicit `dx`
    /// replaces the refinement rule.
    pub fn from_run_config(cfg: &RunConfig) -> Self {
        let mut spec = Self {
            js: cfg.j_list.clone(),
            scheme: cfg.scheme,
            domain: cfg.domain,
            cfl: cfg.cfl,
            ..Self::default()
        };
        if !cfg.tau.is_empty() {
            spec.taus = cfg.tau.clone();
        }
        if let Some(dx) = cfg.dx {
            spec.refinement = RefinementRule::Fixed(dx);
        }
        spec
    }

    fn t_final(&self) -> f64 {
        self.taus.iter().copied().fold(0.0, f64::max)
    }

    /// Solver configuration for one `j`.
    pub fn solver_config(&self, j: u32) -> Result<SolverConfig> {
        let eps = 0.5f64.powi(j as i32);
        let dx = self.refinement.dx(j);
        let grid = Grid1D::with_spacing(self.domain.0, self.domain.1, dx)
            .map_err(Error::into_config)?;
        let mut cfg = SolverConfig::new(grid, eps, build_u0(default_truncation(dx)), self.t_final())
            .map_err(Error::into_config)?;
        cfg.scheme = self.scheme;
        cfg.cfl = self.cfl;
        cfg.output_times = self.taus.clone();
        cfg.field_window = Some((-eps - 2.0 * dx, 2.0 * dx));
        let (c0, c1) = cfg.frame_cells();
        cfg.field_stride = frame_stride(&cfg, c1 - c0);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.domain;
        if !(a <= TV_WINDOW.0 && b >= TV_WINDOW.1) {
            return Err(invalid_config!(
                "sweep domain [{a}, {b}] must contain [{}, {}]",
                TV_WINDOW.0,
                TV_WINDOW.1
            ));
        }
        for &t in &self.taus {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(invalid_config!("tau must be nonnegative, got {t}"));
            }
        }
        for &j in &self.js {
            if j > 30 {
                return Err(invalid_config!("dyadic index {j} is out of range"));
            }
            cells_per_epsilon(0.5f64.powi(j as i32), self.refinement.dx(j))?;
            self.solver_config(j)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let list = |v: Vec<String>| v.join(",");
        format!(
            "tau = {}\nj_list = {}\nrefinement = {}\nscheme = {}\ndomain = {},{}\ncfl = {}\nmin_cells = {}\n",
            list(self.taus.iter().map(f64::to_string).collect()),
            list(self.js.iter().map(u32::to_string).collect()),
            self.refinement,
            self.scheme,
            self.domain.0,
            self.domain.1,
            self.cfl,
            self.min_cells
        )
    }
}

/// One sweep row and the data behind it.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub report: BoundReport,
    pub dx: f64,
    pub reconstruction: Option<Reconstruction>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    /// Sorted by `(j, tau)`.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| r.report.failure.is_some())
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<BoundReport> = self.rows.iter().map(|r| r.report.clone()).collect();
        bounds_csv(&rows)
    }

    /// Reconstructed values for one `tau`, in increasing `j`.
    pub fn reconstructed_series(&self, tau: f64) -> Vec<(u32, Option<f64>)> {
        self.rows
            .iter()
            .filter(|r| r.report.tau == tau)
            .map(|r| (r.report.j.expect("sweep rows are dyadic"), r.report.reconstructed_tv))
            .collect()
    }
}

fn sweep_j(spec: &SweepSpec, j: u32) -> Vec<SweepRow> {
    let eps = 0.5f64.powi(j as i32);
    let dx = spec.refinement.dx(j);
    let mut rows: Vec<SweepRow> = spec
        .taus
        .iter()
        .map(|&tau| SweepRow {
            report: BoundReport::analytic(tau, eps, Some(j)).expect("validated sweep parameters"),
            dx,
            reconstruction: None,
        })
        .collect();
    let outcome = spec.solver_config(j).and_then(|cfg| {
        let record = solve_nonlocal(&cfg)?;
        spec.taus
            .iter()
            .map(|&tau| {
                let snap = record.snapshot_at(tau).expect("taus are output times");
                let rec = reconstruct_tv_from_characteristics_with(&record, tau, spec.min_cells)?;
                Ok((total_variation(snap), rec))
            })
            .collect::<Result<Vec<_>>>()
    });
    match outcome {
        Ok(values) => {
            for (row, (tv, rec)) in rows.iter_mut().zip(values) {
                row.report.measured_tv = Some(tv);
                row.report.reconstructed_tv = Some(rec.total);
                row.reconstruction = Some(rec);
            }
        }
        Err(e) => {
            for row in &mut rows {
                row.report.failure = Some(e.to_string());
            }
        }
    }
    rows
}

/// Runs every `j` (in parallel), one solve per `j` shared by all taus.
/// A failed solve marks its rows failed; the other rows are unaffected.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let mut rows: Vec<SweepRow> = spec
        .js
        .par_iter()
        .flat_map_iter(|&j| sweep_j(spec, j))
        .collect();
    rows.sort_by(|a, b| {
        (a.report.j, a.report.tau)
            .partial_cmp(&(b.report.j, b.report.tau))
            .expect("taus are finite")
    });
    Ok(SweepReport { rows })
}

pub const SWEEP_CSV_NAME: &str = "sweep.csv";

/// Runs the sweep and writes `sweep.csv` and `manifest.txt` into `dir`.
pub fn run_sweep_to_dir(spec: &SweepSpec, dir: &Path) -> Result<(SweepReport, RunOutput)> {
    let start = Instant::now();
    let report = run_sweep(spec)?;
    let files = vec![write_output(dir, SWEEP_CSV_NAME, &report.to_csv())?];
    let manifest = Manifest {
        command: "sweep".into(),
        parameters: spec.to_text(),
        wall_time: start.elapsed(),
        files: files.clone(),
    }
    .write(dir)?;
    Ok((
        report,
        RunOutput {
            dir: dir.to_path_buf(),
            files,
            manifest,
        },
    ))
}
