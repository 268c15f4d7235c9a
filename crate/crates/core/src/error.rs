use thiserror::Error;

use crate::steiner::SteinerNetwork;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not orthogonal (max |MᵀM - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("points {first} and {second} coincide within tolerance")]
    DuplicatePoint { first: usize, second: usize },

    #[error("edge ({0}, {1}) references a point out of range")]
    EdgeOutOfRange(usize, usize),

    #[error("set of transforms violates the group axioms: {0}")]
    NotAGroup(String),

    #[error("optimizer did not converge after {iterations} iterations (last movement {movement:e})")]
    NotConverged {
        iterations: usize,
        movement: f64,
        best: Box<SteinerNetwork>,
    },

    #[error("edge ({0}, {1}) has zero length; unresolved merge")]
    ZeroLengthEdge(usize, usize),

    #[error("value out of representable range: {0}")]
    Overflow(String),

    #[error("stencil of half-width {h} at radius {r} comes too close to the charge")]
    StencilTooClose { r: f64, h: f64 },

    #[error(
        "flux quadrature is implemented for n = 2 and n = 3; for n = {n} use the identity \
         O_(n-1) * r^(n-1) * |E(r)| = q"
    )]
    UnsupportedQuadrature { n: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
