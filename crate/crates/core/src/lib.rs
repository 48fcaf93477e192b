//! Numerics for the nonlocal traffic equation
//! `u_t + (u (1 - (1/eps) * int_x^{x+eps} u))_x = 0`
//! and for the datum whose total variation blows up as `eps -> 0`.

mod error;

pub mod analysis;
pub mod characteristics;
pub mod fv;
pub mod harness;
pub mod model;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/finite-volumes.md")]
    mod finite_volumes {}
    #[doc = include_str!("../../../book/src/characteristics.md")]
    mod characteristics {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
