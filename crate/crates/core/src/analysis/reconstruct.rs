//! Total variation at time `tau` rebuilt from point values along
//! characteristics started inside the blocks of the blow-up datum.

use crate::characteristics::{trace_characteristics, CharacteristicPath};
use crate::error::{invalid_arg, Result};
use crate::fv::SolutionRecord;
use crate::model::{block_interval, build_u0, gap_interval};

use super::bounds::first_block_index;

/// Blocks narrower than this many cells are not used.
pub const DEFAULT_MIN_CELLS: usize = 32;

/// Values at `tau` of the two characteristics attached to one block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTrace {
    pub k: u32,
    pub plateau: CharacteristicPath,
    pub gap: CharacteristicPath,
}

impl BlockTrace {
    pub fn plateau_value(&self) -> f64 {
        self.plateau.final_value()
    }

    pub fn gap_value(&self) -> f64 {
        self.gap.final_value()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub tau: f64,
    /// `2 * sum` of the plateau values over the used blocks.
    pub total: f64,
    pub blocks: Vec<BlockTrace>,
    /// Blocks inside `[-eps, 0]` that were too narrow for the grid.
    pub skipped: Vec<u32>,
}

impl Reconstruction {
    pub fn block_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().map(|b| b.k)
    }
}

/// Truncation `K` when `datum == build_u0(K)`.
fn blowup_truncation(record: &SolutionRecord) -> Option<u32> {
    let n = record.config.datum.breakpoints().len();
    if n < 3 || n % 2 == 0 {
        return None;
    }
    let k = ((n - 3) / 2) as u32;
    (record.config.datum == build_u0(k)).then_some(k)
}

/// [`reconstruct_tv_from_characteristics_with`] using [`DEFAULT_MIN_CELLS`].
pub fn reconstruct_tv_from_characteristics(record: &SolutionRecord, tau: f64) -> Result<Reconstruction> {
    reconstruct_tv_from_characteristics_with(record, tau, DEFAULT_MIN_CELLS)
}

/// For each block `k` of the datum with `4^-k <= eps` whose width spans at
/// least `min_cells` cells, traces one characteristic from the block
/// midpoint and one from the following gap, and sums twice the block
/// values at `tau`.
pub fn reconstruct_tv_from_characteristics_with(
    record: &SolutionRecord,
    tau: f64,
    min_cells: usize,
) -> Result<Reconstruction> {
    let truncation = blowup_truncation(record)
        .ok_or_else(|| invalid_arg!("record was not produced from the blow-up datum"))?;
    if record.snapshot_at(tau).is_none() {
        return Err(invalid_arg!("tau = {tau} is not an output time of the record"));
    }
    let dx = record.config.grid.dx();
    let first = first_block_index(record.config.epsilon());
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    for k in first..=truncation {
        let (a, b) = block_interval(k);
        if b - a >= min_cells as f64 * dx {
            used.push(k);
        } else {
            skipped.push(k);
        }
    }
    let mut starts = Vec::with_capacity(2 * used.len());
    for &k in &used {
        let (a, b) = block_interval(k);
        let (c, d) = gap_interval(k);
        starts.push(0.5 * (a + b));
        starts.push(0.5 * (c + d));
    }
    let mut paths = trace_characteristics(record, &starts, tau)?.into_iter();
    let blocks: Vec<BlockTrace> = used
        .iter()
        .map(|&k| BlockTrace {
            k,
            plateau: paths.next().expect("two paths per block"),
            gap: paths.next().expect("two paths per block"),
        })
        .collect();
    let total = 2.0 * blocks.iter().map(BlockTrace::plateau_value).sum::<f64>();
    Ok(Reconstruction {
        tau,
        total,
        blocks,
        skipped,
    })
}
