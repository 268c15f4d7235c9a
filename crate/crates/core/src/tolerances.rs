//! Tolerances shared by the library, the binary and the acceptance suite.
//!
//! Every threshold a check compares against lives here, so a report and the
//! test that produced it can never disagree about what "pass" means.

/// Orthogonality and unit-determinant check for a single transform.
pub const ORTHOGONALITY: f64 = 1e-12;

/// Two group elements are equal when their matrices differ by less than this
/// in max-norm.
pub const GROUP_ELEMENT_EQ: f64 = 1e-10;

/// Point matching for configurations; also the duplicate-point threshold.
pub const POINT_MATCH: f64 = 1e-10;

/// Matching of optimizer output against rotated or reflected copies.
pub const NETWORK_MATCH: f64 = 1e-8;

/// Steiner points closer than this to each other or to a terminal are merged.
pub const MERGE: f64 = 1e-9;

/// Networks whose lengths differ by less than this are tied global minima.
pub const DEGENERACY: f64 = 1e-9;

/// Per-step Steiner point movement at which the optimizer stops.
pub const OPTIMIZER_STEP: f64 = 1e-12;

/// Norm of the sum of unit edge vectors at an optimal degree-3 junction.
pub const FERMAT: f64 = 1e-9;

/// Steiner square: absolute tolerance on the optimal length.
pub const STEINER_LENGTH: f64 = 1e-9;

/// Length of the symmetric X network.
pub const X_GUESS_LENGTH: f64 = 1e-12;

/// Polynomial roots: `|p(x)| <= ROOT * max|coeff|`.
pub const ROOT: f64 = 1e-10;

/// Location of the stable minima of `x^4 - x^2`.
pub const MINIMA_LOCATION: f64 = 1e-10;

/// Relative tolerance for the translation composition law.
pub const COMPOSITION: f64 = 1e-12;

/// A coefficient is fixed by a translation when it moves less than this.
pub const FIXED_POINT: f64 = 1e-14;

/// Relative tolerance on `residual(zF) = |z| residual(F)`.
pub const FIELD_LINEARITY: f64 = 1e-12;

/// Componentwise agreement of `zF` with the real rotation-scaling of (E, B).
pub const FIELD_COMPONENTS: f64 = 1e-14;

/// Allowed deviation of the residual ratio under `h -> h/2` from 4.
pub const SECOND_ORDER_RATIO: f64 = 0.15;

/// Relative accuracy of the gamma function on `[1, 10]`.
pub const GAMMA: f64 = 1e-13;

/// Relative tolerance on `lambda^(n-2) Phi(lambda r) = Phi(r)`.
pub const SCALING: f64 = 1e-12;

/// Absolute tolerance on the two-dimensional gauge shift.
pub const GAUGE_SHIFT: f64 = 1e-13;

/// Relative tolerance on the field scaling and on the analytic flux identity.
pub const FIELD_SCALING: f64 = 1e-13;

/// Flux quadrature in two dimensions (trapezoid on the circle).
pub const FLUX_2D: f64 = 1e-9;

/// Flux quadrature in three dimensions (Gauss-Legendre x uniform azimuth).
pub const FLUX_3D: f64 = 1e-6;

/// Off-origin Laplacian at `h = 1e-3`.
pub const LAPLACIAN: f64 = 1e-4;

/// Relative tolerance on the sampled `f' - f` residual.
pub const SAMPLED_RESIDUAL: f64 = 1e-5;
