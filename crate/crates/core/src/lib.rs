//! Bracket flows of left-invariant metrics on three-dimensional unimodular
//! Lie groups.
//!
//! A left-invariant metric is encoded by the three structure constants of an
//! orthonormal Milnor frame, `[e2,e3] = a1 e1`, `[e3,e1] = a2 e2`,
//! `[e1,e2] = a3 e3`. The crate provides
//!
//! - [`algebra`]: the constants themselves, their symmetry normal form and
//!   the Lie algebra they define;
//! - [`curvature`]: connection, sectional, Ricci, scalar and Einstein
//!   curvature and the quadratic `Rm²` term;
//! - [`flow`]: the Ricci and two-loop RG (RG-2) bracket flows, the
//!   equivalent diagonal metric flow, and RK4/RKF45 integration;
//! - [`soliton`]: steady solitons as fixed points of the bracket flow,
//!   found in closed form and by a Newton sweep, plus an audit of a
//!   published soliton table;
//! - [`normalized`]: the ratio system on `(m2, m3) = (a2/a1, a3/a1)`.

pub mod algebra;
pub mod curvature;
mod error;
pub mod flow;
pub mod normalized;
pub mod soliton;

pub use algebra::{GroupClass, LieGroup, Signature, StructureConstants};
pub use curvature::CurvatureProfile;
pub use error::{Error, Result};
pub use flow::{FlowKind, FlowParameters, Integrator, Sample, Termination, Trajectory};
