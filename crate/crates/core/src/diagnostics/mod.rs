//! Center embeddings, the embedding metric, supported points, and
//! recurrence proxies on the dual graph.

mod embedding;
mod ends;
pub mod points;
mod regular;
mod resistance;
mod supported;

pub use embedding::{center_embedding, embedding_distance, normalize_centers, CenterEmbedding};
pub use ends::{complement_components, one_ended_check};
pub use regular::{regular_ball, regular_layer_counts};
pub use resistance::{effective_resistance, effective_resistance_between, resistance_curve};
pub use supported::{
    isolation_radii, max_cover, supported_count, supported_fraction, GridCheck, SupportedPointQuery,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagnosticsError {
    #[error("faces {0} and {1} have the same center")]
    DuplicateCenter(usize, usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),
    #[error("s must be at least 2, got {0}")]
    InvalidS(f64),
    #[error("degree must be at least 6, got {0}")]
    InvalidDegree(usize),
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("no face at dual distance {0} from the root")]
    EmptySink(usize),
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("resistance solve did not converge (residual {0:e})")]
    SolveFailed(f64),
}
