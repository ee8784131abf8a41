//! Systematic generation of essential embeddable tiled discs of a given
//! braid index, in order of increasing vertex count.
//!
//! A disc with `P` positive and `N` negative vertices is reached from a
//! positive tree on `P` vertices by adding `N` ab-tiles one at a time, and
//! every intermediate disc may be taken essential. Each layer is
//! deduplicated by [`canonical_signature`] before the next is built.

mod cache;
mod insert;
mod positive;
mod signature;

pub use cache::{read_layer, write_layer, CacheError, CACHE_FORMAT};
pub use insert::{build_insertion, insert_ab_tile, insertion_choices, Insertion};
pub use positive::{enumerate_positive_discs, prufer_tree};
pub use signature::{canonical_form, canonical_signature, DiscSignature, SignatureParseError};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::foliation::Skeleton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Complexity {
    pub n: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no disc has braid index {n} and {v} vertices")]
pub struct ComplexityError {
    pub n: usize,
    pub v: usize,
}

impl Complexity {
    pub fn new(n: usize, v: usize) -> Result<Complexity, ComplexityError> {
        if n == 0 || v < n || !(v - n).is_multiple_of(2) {
            return Err(ComplexityError { n, v });
        }
        Ok(Complexity { n, v })
    }

    pub fn positive(&self) -> usize {
        (self.v + self.n) / 2
    }

    pub fn negative(&self) -> usize {
        (self.v - self.n) / 2
    }
}

/// One emitted disc with its boundary braid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedDisc {
    pub complexity: Complexity,
    pub signature: DiscSignature,
    /// Canonical representative of the class.
    pub skeleton: Skeleton,
    pub word: BraidWord,
}

/// One dedup'd layer of discs, keyed (and hence ordered) by signature.
pub type Layer = BTreeMap<DiscSignature, Skeleton>;

/// All classes obtained by adding one ab-tile to any disc of `parents`.
pub fn extend_layer(parents: &Layer) -> Layer {
    let parents: Vec<&Skeleton> = parents.values().collect();
    let found: Vec<(DiscSignature, Skeleton)> = parents
        .par_iter()
        .flat_map_iter(|sk| {
            let mut kids: Vec<(DiscSignature, Skeleton)> = insert_ab_tile(sk)
                .into_iter()
                .map(|(_, d)| (canonical_signature(&d), d))
                .collect();
            kids.sort_by(|a, b| a.0.cmp(&b.0));
            kids.dedup_by(|a, b| a.0 == b.0);
            kids
        })
        .collect();
    let mut out = Layer::new();
    for (sig, d) in found {
        out.entry(sig).or_insert_with(|| canonical_form(&d));
    }
    out
}

fn positive_layer(p: usize) -> Layer {
    enumerate_positive_discs(p).into_iter().collect()
}

/// Every essential embeddable disc of braid index `n` with `v` vertices,
/// ordered by signature, with boundary words.
pub fn enumerate_complexity(c: Complexity) -> Vec<EnumeratedDisc> {
    let mut layer = positive_layer(c.positive());
    for _ in 0..c.negative() {
        layer = extend_layer(&layer);
    }
    finish_layer(c, layer)
}

fn finish_layer(c: Complexity, layer: Layer) -> Vec<EnumeratedDisc> {
    let items: Vec<(DiscSignature, Skeleton)> = layer.into_iter().collect();
    items
        .into_par_iter()
        .map(|(signature, skeleton)| {
            let word = skeleton
                .boundary_word()
                .expect("enumerated discs have a boundary braid")
                .word;
            EnumeratedDisc {
                complexity: c,
                signature,
                skeleton,
                word,
            }
        })
        .collect()
}

/// Lazy stream of [`enumerate_complexity`] for `v = n, n+2, …, v_max`.
pub struct DiscStream {
    n: usize,
    v_max: usize,
    next_v: usize,
    current: std::vec::IntoIter<EnumeratedDisc>,
}

impl DiscStream {
    /// Computes and returns the next whole layer, or `None` past `v_max`.
    pub fn next_layer(&mut self) -> Option<(Complexity, Vec<EnumeratedDisc>)> {
        if self.next_v > self.v_max {
            return None;
        }
        let c = Complexity {
            n: self.n,
            v: self.next_v,
        };
        self.next_v += 2;
        Some((c, enumerate_complexity(c)))
    }
}

impl Iterator for DiscStream {
    type Item = EnumeratedDisc;

    fn next(&mut self) -> Option<EnumeratedDisc> {
        loop {
            if let Some(d) = self.current.next() {
                return Some(d);
            }
            let (_, layer) = self.next_layer()?;
            self.current = layer.into_iter();
        }
    }
}

/// Discs of braid index `n` with at most `v_max` vertices, by `v` and then
/// by signature.
pub fn enumerate_discs(n: usize, v_max: usize) -> DiscStream {
    assert!(n >= 1, "braid index is positive");
    DiscStream {
        n,
        v_max,
        next_v: n,
        current: Vec::new().into_iter(),
    }
}
