//! Conversion of knot diagrams to closed braids by Seifert smoothing and
//! Vogel moves.

mod pd;
mod read;
mod seifert;

pub use pd::{Dart, KnotDiagram, Oriented};
pub use read::{make_coherent, read_braid, to_closed_braid, vogel_trace, MoveRecord, VogelTrace};
pub use seifert::{
    find_vogel_site, finger_move, seifert_smooth, smooth_oriented, vogel_move, FaceEdge,
    SeifertDiagram, Tie, VogelSite,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VogelError {
    #[error("PD syntax: {0}")]
    Parse(String),
    #[error("inconsistent orientation data: {0}")]
    Orientation(String),
    #[error("diagram has more than one component")]
    NotAKnot,
    #[error("diagram is not planar: {faces} faces for {crossings} crossings")]
    NotPlanar { faces: usize, crossings: usize },
    #[error("Vogel site {0:?} does not belong to this diagram")]
    StaleSite(VogelSite),
    #[error("no Vogel site reduces the incoherent pairs")]
    Stuck,
    #[error("coherent circles admit no nesting order")]
    NoNesting,
}
