//! Total variation, analytic lower bounds and property checks.

mod bounds;
mod checks;
mod reconstruct;
mod tv;

pub use bounds::{
    bound_term, bounds_csv, first_block_index, series_partial_sum, term_threshold_check,
    threshold_predicate, tv_lower_bound_count, tv_lower_bound_dyadic, tv_lower_bound_series,
    tv_lower_bound_series_detailed, BoundReport, SeriesBound, BOUNDS_CSV_HEADER, DEFAULT_TAIL_TOL,
};
pub use checks::{
    check_confinement, check_max_principle, check_monotonicity, check_non_crossing, check_plateau,
    Location, VerifyReport, MAX_PRINCIPLE_TOL, MONOTONICITY_TOL,
};
pub use reconstruct::{
    reconstruct_tv_from_characteristics, reconstruct_tv_from_characteristics_with, BlockTrace,
    Reconstruction, DEFAULT_MIN_CELLS,
};
pub use tv::{total_variation, TotalVariation};
