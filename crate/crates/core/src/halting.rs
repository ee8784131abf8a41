//! Termination bounds for the disc search: the tetrahedron count of the
//! triangulated knot complement and the resulting bound on the number of
//! axis intersections of a spanning disc.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaltingError {
    #[error("the bound needs n >= 1 and k >= 1 (got n = {n}, k = {k})")]
    Degenerate { n: u64, k: u64 },
}

/// `324 n + 432 k - 376`, for braid index `n` and Artin length `k`.
pub fn tetrahedra_count(n: u64, k: u64) -> Result<u64, HaltingError> {
    if n == 0 || k == 0 {
        return Err(HaltingError::Degenerate { n, k });
    }
    // n, k >= 1 gives at least 380, so the subtraction never underflows
    Ok(324 * n + 432 * k - 376)
}

fn t_times_pow(t: u64, factor: u64) -> BigUint {
    (BigUint::from(factor) * BigUint::from(t)) << (7 * t + 2)
}

/// `28 t 2^(7t + 2)`.
pub fn vertex_bound(n: u64, k: u64) -> Result<BigUint, HaltingError> {
    Ok(t_times_pow(tetrahedra_count(n, k)?, 28))
}

/// `14 t 2^(7t + 2) + n`.
pub fn positive_vertex_bound(n: u64, k: u64) -> Result<BigUint, HaltingError> {
    Ok(t_times_pow(tetrahedra_count(n, k)?, 14) + BigUint::from(n))
}

/// All bound data for one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaltingBound {
    pub n: u64,
    pub artin_length: u64,
    pub t: u64,
    /// Decimal strings, so the values survive any serializer unchanged.
    pub v_max: String,
    pub p_max: String,
}

impl HaltingBound {
    pub fn new(n: u64, k: u64) -> Result<HaltingBound, HaltingError> {
        Ok(HaltingBound {
            n,
            artin_length: k,
            t: tetrahedra_count(n, k)?,
            v_max: vertex_bound(n, k)?.to_str_radix(10),
            p_max: positive_vertex_bound(n, k)?.to_str_radix(10),
        })
    }

    /// Bound for a closed braid, with `k` its length in Artin generators.
    pub fn of_word(w: &BraidWord) -> Result<HaltingBound, HaltingError> {
        HaltingBound::new(w.strands() as u64, w.band_to_artin().len() as u64)
    }

    pub fn v_max(&self) -> BigUint {
        self.v_max.parse().expect("decimal")
    }

    pub fn p_max(&self) -> BigUint {
        self.p_max.parse().expect("decimal")
    }

    pub fn v_max_digits(&self) -> usize {
        self.v_max.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(tetrahedra_count(1, 1).unwrap(), 380);
        assert!(tetrahedra_count(1, 0).is_err());
        let b = HaltingBound::new(4, 12).unwrap();
        assert_eq!(b.t, 6104);
        assert_eq!(b.v_max(), vertex_bound(4, 12).unwrap());
    }
}
