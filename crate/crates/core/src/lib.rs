//! Transition-region asymptotics of Bessel and Hankel functions.
pub mod bounds;
pub mod error;
pub mod exact;
pub mod hyper;
pub mod late;
pub mod oracles;
pub mod quad;
pub mod remainders;
pub mod series;
pub mod sheet;
pub mod terminant;
pub mod xprec;

pub use error::{Error, Result};
