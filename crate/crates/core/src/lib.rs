//! A small numerical laboratory for spontaneous symmetry breaking.
//!
//! Each module reproduces one worked problem and checks how the symmetry of
//! the problem compares with the symmetry of its solutions:
//!
//! * [`symmetry`]: finite orthogonal groups, stabilizers, orbits and the
//!   unbroken / general / narrow classifier.
//! * [`steiner`]: shortest networks joining three or four terminals.
//! * [`scalar`]: real roots and critical points of the Z2-symmetric polynomials.
//! * [`ode`]: the translation-symmetric family `f' = f`.
//! * [`maxwell`]: vacuum Maxwell fields as `F = E + iB` and the `F -> zF` symmetry.
//! * [`electrostatics`]: point charges in `n` dimensions, scaling and the
//!   two-dimensional logarithmic scale.
//! * [`report`]: check reports, run manifests and plot data used by the
//!   `ssb-lab` binary.

pub mod electrostatics;
pub mod error;
pub mod maxwell;
pub mod ode;
pub mod report;
pub mod scalar;
pub mod special;
pub mod steiner;
pub mod symmetry;
pub mod tolerances;

pub use error::{Error, Result};
