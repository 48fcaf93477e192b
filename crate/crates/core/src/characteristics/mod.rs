//! Characteristic lines, the logistic law along plateaus and the
//! fixed-point reference solver.

mod logistic;
mod path;
mod picard;

pub use logistic::{logistic_value, material_rhs};
pub use path::{trace_characteristic, trace_characteristics, CharacteristicPath};
pub use picard::{solve_picard, PicardOutcome, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
