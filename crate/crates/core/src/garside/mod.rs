//! Garside structure of the braid group on band generators.

mod factor;
mod normal;
mod summit;

pub use factor::Factor;
pub use normal::{equal_test, is_canonical_factor, positive_lift, NormalForm};
pub use summit::{conjugate_test, summit_element, SuperSummitSet, DEFAULT_SUMMIT_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error("canonical length is zero: a pure power of the fundamental braid")]
    PureDeltaPower,
    #[error("super summit set exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
}
