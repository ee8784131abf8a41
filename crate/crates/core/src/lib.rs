//! Unknot recognition through braid foliations of spanning discs.
//!
//! The crate is organised bottom-up:
//!
//! * [`braid`] — band-generator braid words, permutations, strand deletion;
//! * [`garside`] — left canonical form in the band-generator monoid, cycling,
//!   super summit sets and the conjugacy test built on them;
//! * [`foliation`] — tiled surfaces, fiber tables, embeddability, the
//!   embedded-boundary braid word and stabilization moves;
//! * [`enumerate`] — exhaustive, canonically deduplicated enumeration of
//!   essential embeddable tiled discs;
//! * [`vogel`] — planar-diagram input turned into a closed braid;
//! * [`halting`] — the vertex bound beyond which a search may stop;
//! * [`recognize`] — the decision procedure and its certificates.

pub mod braid;
pub mod enumerate;
pub mod foliation;
pub mod garside;
pub mod halting;
pub mod recognize;
pub mod vogel;

pub use braid::{BandLetter, BraidError, BraidWord, Permutation, Sign};
