//! Tiled surfaces carrying a braid foliation, and the combinatorial tests
//! that decide whether the decoration data is realized by an embedded
//! surface whose boundary is a closed braid.

mod fixtures;
mod format;
mod skeleton;
mod surface;

pub use fixtures::{fig6, fig6_skeleton, positive_six_vertex_disc, FIG6_TEXT};
pub use format::{parse_surface, write_surface};
pub use skeleton::{
    BoundaryExtraction, EmbedFailure, EmbedReport, FiberTable, FullFailure, InessentialArc,
    Interval, SingType, SkSing, Skeleton,
};
pub use surface::{Endpoint, Singularity, TiledSurface, ValidationReport, Vertex};

use thiserror::Error;

use crate::braid::BraidError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoliationError {
    #[error("singularity {sing}, slot {slot}: {reason}")]
    BadSlot {
        sing: usize,
        slot: usize,
        reason: &'static str,
    },
    #[error("negative vertex {vertex} has no b-arc partner")]
    IsolatedNegative { vertex: usize },
    #[error("partners of negative vertex {vertex} do not close up at singularity {sing}")]
    NonPeriodic { vertex: usize, sing: usize },
    #[error(
        "positive vertex {vertex} carries two b-arcs in the interval closed by singularity {end}"
    )]
    PartnerCollision { end: usize, vertex: usize },
    #[error("corner vertex {vertex} of singularity {sing} is not free just before it")]
    BusyCorner { sing: usize, vertex: usize },
    #[error("circle of negative vertex {vertex} (position {position}) is not a trivial component")]
    NotFixedPoint { vertex: usize, position: usize },
    #[error("boundary braid has {components} components, expected 1")]
    Disconnected { components: usize },
    #[error("no singularity with index {sing}")]
    NoSuchSingularity { sing: usize },
    #[error("singularity {sing} is not of type {expected:?}")]
    WrongType { sing: usize, expected: SingType },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent region structure: {0}")]
    BadRegion(String),
    #[error("braid index P - N = {p} - {n} is not positive")]
    NonPositiveBraidIndex { p: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid surface: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Braid(#[from] BraidError),
}
