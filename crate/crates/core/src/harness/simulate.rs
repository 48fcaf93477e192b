use std::path::PathBuf;
use std::time::Instant;

use super::manifest::{write_output, Manifest};
use super::RunConfig;
use crate::characteristics::trace_characteristics;
use crate::error::{invalid_config, Result};
use crate::fv::{solve_local, solve_nonlocal, SolverConfig};

/// Upper bound on stored frame values (frames times cells) for a run.
const FRAME_BUDGET: f64 = 4e6;

/// Files written by a run, relative to `dir`, and the manifest path.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Frame stride keeping the stored frames within [`FRAME_BUDGET`] values.
pub(crate) fn frame_stride(cfg: &SolverConfig, frame_cells: usize) -> usize {
    let steps = cfg.t_final / (cfg.cfl * cfg.grid.dx()) + 1.0;
    ((steps * frame_cells as f64 / FRAME_BUDGET).ceil() as usize).max(1)
}

/// Solves with the configured datum and writes one snapshot CSV per output
/// time plus `manifest.txt`. Nothing is written when the config is invalid.
pub fn run_simulate(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    cfg.validate()?;
    let mut sc = cfg.solver_config()?;
    // only the snapshots are written
    sc.field_stride = usize::MAX;
    sc.field_window = Some((sc.grid.x_min(), sc.grid.x_min() + sc.grid.dx()));
    let record = if cfg.local { solve_local(&sc)? } else { solve_nonlocal(&sc)? };
    let dir = cfg.out.clone();
    let mut files = Vec::new();
    for s in &record.snapshots {
        files.push(write_output(&dir, &record.snapshot_file_name(s), &s.to_csv())?);
    }
    let manifest = Manifest {
        command: "simulate".into(),
        parameters: cfg.to_text(),
        wall_time: start.elapsed(),
        files: files.clone(),
    }
    .write(&dir)?;
    Ok(RunOutput { dir, files, manifest })
}

/// Default starting points `-eps * i / 8`, `i = 0..=8`.
pub fn default_starts(epsilon: f64) -> Vec<f64> {
    (0..=8).map(|i| -epsilon * i as f64 / 8.0).collect()
}

/// Solves, traces the characteristics from `cfg.starts` (or
/// [`default_starts`]) up to `t_final` and writes one path CSV each.
pub fn run_characteristics(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    cfg.validate()?;
    if cfg.local {
        return Err(invalid_config!("characteristics are only traced for the nonlocal equation"));
    }
    let mut sc = cfg.solver_config()?;
    sc.field_stride = frame_stride(&sc, sc.grid.n_cells());
    let starts = if cfg.starts.is_empty() {
        default_starts(sc.epsilon())
    } else {
        cfg.starts.clone()
    };
    for &y in &starts {
        if !(y >= sc.grid.x_min() && y <= sc.grid.x_max()) {
            return Err(invalid_config!("start {y} outside the domain"));
        }
    }
    let record = solve_nonlocal(&sc)?;
    let paths = trace_characteristics(&record, &starts, sc.t_final)?;
    let dir = cfg.out.clone();
    let mut files = Vec::new();
    for p in &paths {
        files.push(write_output(&dir, &p.file_name(), &p.to_csv())?);
    }
    let manifest = Manifest {
        command: "characteristics".into(),
        parameters: cfg.to_text(),
        wall_time: start.elapsed(),
        files: files.clone(),
    }
    .write(&dir)?;
    Ok(RunOutput { dir, files, manifest })
}
