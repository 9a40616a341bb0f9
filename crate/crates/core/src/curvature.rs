//! Curvature of the left-invariant metric defined by a Milnor frame.
//!
//! Everything is diagonal in the frame. With cyclic `(i, j, k)`,
//!
//! ```text
//! μ_i  = (a_j + a_k - a_i) / 2
//! K_i  = a_i μ_i - μ_j μ_k          sectional curvature of span(e_j, e_k)
//! r_i  = 2 μ_j μ_k = K_j + K_k      Ricci
//! G_i  = r_i - S/2 = -K_i           Einstein
//! Rm²_ii = R_ipqr R_ipqr = 2 (K_j² + K_k²)
//! ```

use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub mu: [f64; 3],
    pub sectional: [f64; 3],
    pub ricci: [f64; 3],
    pub scalar: f64,
    pub einstein: [f64; 3],
    pub rm2diag: [f64; 3],
}

#[inline]
fn cyc(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

pub fn connection_coefficients(sc: &StructureConstants) -> [f64; 3] {
    let a = sc.as_array();
    std::array::from_fn(|i| {
        let (j, k) = cyc(i);
        0.5 * (a[j] + a[k] - a[i])
    })
}

/// `K_i`, the sectional curvature of the plane orthogonal to `e_i`.
pub fn sectional_curvatures(sc: &StructureConstants) -> [f64; 3] {
    let a = sc.as_array();
    let mu = connection_coefficients(sc);
    std::array::from_fn(|i| {
        let (j, k) = cyc(i);
        a[i] * mu[i] - mu[j] * mu[k]
    })
}

pub fn curvature_profile(sc: &StructureConstants) -> CurvatureProfile {
    let mu = connection_coefficients(sc);
    let sectional = sectional_curvatures(sc);
    let ricci = std::array::from_fn(|i| {
        let (j, k) = cyc(i);
        2.0 * mu[j] * mu[k]
    });
    let scalar = ricci.iter().sum::<f64>();
    let einstein = ricci.map(|r: f64| r - 0.5 * scalar);
    let rm2diag = std::array::from_fn(|i| {
        let (j, k) = cyc(i);
        2.0 * (sectional[j] * sectional[j] + sectional[k] * sectional[k])
    });
    CurvatureProfile {
        mu,
        sectional,
        ricci,
        scalar,
        einstein,
        rm2diag,
    }
}

/// RG-2 is parabolic where `1 + α K > 0` for every sectional curvature.
///
/// In three dimensions the extreme sectional curvatures are attained on the
/// frame planes, so checking the three principal values suffices.
pub fn parabolic(sc: &StructureConstants, alpha: f64) -> bool {
    sectional_curvatures(sc)
        .iter()
        .all(|k| 1.0 + alpha * k > 0.0)
}
