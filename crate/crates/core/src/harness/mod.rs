//! Run configuration, experiment drivers and report files.

mod config;
mod datum;
mod manifest;
mod mechanism;
mod simulate;
mod sweep;
mod verify;

pub use config::{
    EpsilonSpec, RunConfig, DEFAULT_CELLS_PER_EPSILON, DEFAULT_CFL, DEFAULT_DOMAIN,
    DEFAULT_DYADIC_J, DEFAULT_T_FINAL,
};
pub use datum::DatumSpec;
pub use manifest::{sha256_hex, write_output, Manifest, MANIFEST_NAME};
pub use mechanism::{run_mechanism_demo, MechanismReport, SLOPE_REL_TOL, VACUUM_TOL};
pub use simulate::{default_starts, run_characteristics, run_simulate, RunOutput};
pub use sweep::{
    run_sweep, run_sweep_to_dir, RefinementRule, SweepReport, SweepRow, SweepSpec, SWEEP_CSV_NAME,
    TV_WINDOW,
};
pub use verify::{
    bound_grid, resolve_suites, run_verify, suite_bounds, suite_characteristics,
    suite_max_principle, suite_monotonicity, suite_plateau, NON_CROSSING_TOL, ORIGIN_TOL,
    PLATEAU_TOL, SUITES,
};
