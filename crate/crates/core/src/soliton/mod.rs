//! Steady solitons of the RG-2 flow.
//!
//! A left-invariant metric is a steady algebraic soliton exactly when its
//! structure constants are a fixed point of the bracket flow. Each equation
//! of the bracket flow factors as `2 a_i K_i (1 + (α/2) K_i)`, so at a fixed
//! point every axis has `a_i = 0`, `K_i = 0` or `K_i = -2/α`.

mod analytic;
mod audit;
mod newton;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::algebra::{GroupClass, StructureConstants};
use crate::curvature::{curvature_profile, parabolic, sectional_curvatures, CurvatureProfile};
use crate::flow::{bracket_factors, rg2_rhs};

pub use analytic::enumerate_analytic;
pub use audit::{paper_table_check, AuditRow, AxisReport, Corrected, Verdict, AUDIT_TOL};
pub use newton::{newton_sweep, Grid, SweepReport};

/// Relative threshold on Jacobian singular values that count as null.
pub const FAMILY_SV_TOL: f64 = 1e-8;
/// Orbit distance under which two fixed points are the same.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// Default tolerance for [`axis_condition`].
pub const AXIS_TOL: f64 = 1e-10;

/// `max_i |da_i/dt| / max(1, max|a|³)`.
pub fn residual(sc: &StructureConstants, alpha: f64) -> f64 {
    let m = sc.max_abs();
    let norm = rg2_rhs(sc, alpha)
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    norm / (m * m * m).max(1.0)
}

pub fn is_fixed(sc: &StructureConstants, alpha: f64, tol: f64) -> bool {
    residual(sc, alpha) < tol
}

/// Which factor of `da_i/dt = 2 a_i K_i (1 + (α/2) K_i)` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisCondition {
    AxisZero,
    SectionalZero,
    CouplingBalance,
    NotSatisfied,
}

/// Diagnoses axis `axis` (0-based) with the default tolerance.
pub fn axis_condition(sc: &StructureConstants, alpha: f64, axis: usize) -> AxisCondition {
    axis_condition_with_tol(sc, alpha, axis, AXIS_TOL)
}

/// Factors are tested in order; `tol` is scaled by `max(1, max|a|)` for
/// `a_i` and by its square for `K_i`.
pub fn axis_condition_with_tol(
    sc: &StructureConstants,
    alpha: f64,
    axis: usize,
    tol: f64,
) -> AxisCondition {
    assert!(axis < 3, "axis index {axis} out of range");
    let scale = sc.max_abs().max(1.0);
    let k = sectional_curvatures(sc)[axis];
    if sc[axis].abs() <= tol * scale {
        AxisCondition::AxisZero
    } else if k.abs() <= tol * scale * scale {
        AxisCondition::SectionalZero
    } else if (1.0 + 0.5 * alpha * k).abs() <= tol {
        AxisCondition::CouplingBalance
    } else {
        AxisCondition::NotSatisfied
    }
}

/// Analytic Jacobian `∂(da_i/dt)/∂a_m` of the printed right-hand side.
pub fn jacobian(sc: &StructureConstants, alpha: f64) -> [[f64; 3]; 3] {
    let a = sc.as_array();
    let b = bracket_factors(sc);
    let mut jac = [[0.0; 3]; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut db = [0.0; 3];
        db[i] = -6.0 * a[i] + 2.0 * a[j] + 2.0 * a[k];
        db[j] = 2.0 * (a[j] - a[k]) + 2.0 * a[i];
        db[k] = -2.0 * (a[j] - a[k]) + 2.0 * a[i];
        let outer = 0.5 * a[i] * (1.0 + alpha / 4.0 * b[i]);
        for m in 0..3 {
            jac[i][m] = outer * db[m];
        }
        jac[i][i] += 0.5 * (b[i] + alpha / 8.0 * b[i] * b[i]);
    }
    jac
}

/// Nullity of the Jacobian restricted to the nonzero axes.
///
/// Every coordinate plane `a_i = 0` is invariant, so the rows and columns of
/// vanishing axes are removed before counting null directions.
pub fn restricted_nullity(sc: &StructureConstants, alpha: f64) -> usize {
    let scale = sc.max_abs();
    let live: Vec<usize> = (0..3)
        .filter(|&i| sc[i] != 0.0 && sc[i].abs() > 1e-12 * scale)
        .collect();
    if live.is_empty() {
        return 0;
    }
    let jac = jacobian(sc, alpha);
    let sub = nalgebra::DMatrix::from_fn(live.len(), live.len(), |r, c| jac[live[r]][live[c]]);
    let sv = sub.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return live.len();
    }
    sv.iter().filter(|&&s| s < FAMILY_SV_TOL * max).count()
}

pub(crate) fn jacobian_matrix(sc: &StructureConstants, alpha: f64) -> Matrix3<f64> {
    let j = jacobian(sc, alpha);
    Matrix3::from_fn(|r, c| j[r][c])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Isolated,
    OneParameterFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Analytic,
    Newton,
}

/// A verified steady soliton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RecordJson", from = "RecordJson")]
pub struct FixedPointRecord {
    pub constants: StructureConstants,
    pub canonical: StructureConstants,
    pub alpha: f64,
    pub residual: f64,
    pub group: GroupClass,
    pub profile: CurvatureProfile,
    pub parabolic: bool,
    pub family: Family,
    pub provenance: Provenance,
    /// Closed-form family name for analytic records.
    pub label: String,
}

impl FixedPointRecord {
    pub fn new(
        constants: StructureConstants,
        alpha: f64,
        provenance: Provenance,
        label: impl Into<String>,
    ) -> Self {
        let family = if restricted_nullity(&constants, alpha) > 0 {
            Family::OneParameterFamily
        } else {
            Family::Isolated
        };
        Self {
            constants,
            canonical: constants.canonicalize(),
            alpha,
            residual: residual(&constants, alpha),
            group: constants.classify(),
            profile: curvature_profile(&constants),
            parabolic: parabolic(&constants, alpha),
            family,
            provenance,
            label: label.into(),
        }
    }

    /// Same fixed point, or same one-parameter family, up to symmetry.
    ///
    /// Families are compared by direction, since the only families are rays
    /// of flat metrics.
    pub fn same_point(&self, other: &Self, tol: f64) -> bool {
        match (self.family, other.family) {
            (Family::OneParameterFamily, Family::OneParameterFamily) => {
                unit(&self.constants).equivalent(&unit(&other.constants), tol)
            }
            (Family::Isolated, Family::Isolated) => {
                self.constants.equivalent(&other.constants, tol)
            }
            _ => false,
        }
    }
}

pub(crate) fn unit(sc: &StructureConstants) -> StructureConstants {
    let m = sc.max_abs();
    if m == 0.0 {
        *sc
    } else {
        (1.0 / m) * *sc
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RecordJson {
    constants: StructureConstants,
    canonical_constants: StructureConstants,
    alpha: f64,
    residual: f64,
    group: crate::algebra::LieGroup,
    signature: crate::algebra::Signature,
    mu: [f64; 3],
    sectional: [f64; 3],
    ricci: [f64; 3],
    scalar: f64,
    einstein: [f64; 3],
    rm2diag: [f64; 3],
    parabolic: bool,
    family: Family,
    provenance: Provenance,
    label: String,
}

impl From<FixedPointRecord> for RecordJson {
    fn from(r: FixedPointRecord) -> Self {
        Self {
            constants: r.constants,
            canonical_constants: r.canonical,
            alpha: r.alpha,
            residual: r.residual,
            group: r.group.group,
            signature: r.group.signature,
            mu: r.profile.mu,
            sectional: r.profile.sectional,
            ricci: r.profile.ricci,
            scalar: r.profile.scalar,
            einstein: r.profile.einstein,
            rm2diag: r.profile.rm2diag,
            parabolic: r.parabolic,
            family: r.family,
            provenance: r.provenance,
            label: r.label,
        }
    }
}

impl From<RecordJson> for FixedPointRecord {
    fn from(j: RecordJson) -> Self {
        Self {
            constants: j.constants,
            canonical: j.canonical_constants,
            alpha: j.alpha,
            residual: j.residual,
            group: GroupClass {
                group: j.group,
                signature: j.signature,
            },
            profile: CurvatureProfile {
                mu: j.mu,
                sectional: j.sectional,
                ricci: j.ricci,
                scalar: j.scalar,
                einstein: j.einstein,
                rm2diag: j.rm2diag,
            },
            parabolic: j.parabolic,
            family: j.family,
            provenance: j.provenance,
            label: j.label,
        }
    }
}
