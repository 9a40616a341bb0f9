//! Closed-form steady solitons.
//!
//! Within the ansatz families `(a, 0, c a)` and `(a, a, c a)` every axis must
//! satisfy `a_i = 0`, `K_i = 0` or `K_i = -2/α`. Solving the resulting
//! quadratic conditions gives, up to permutation and global sign:
//!
//! | constants             | scale            | sign of α | conditions               |
//! |-----------------------|------------------|-----------|--------------------------|
//! | `(0, 0, 0)`           |                  | any       | abelian                  |
//! | `(a, a, 0)`           | any `a`          | any       | flat                     |
//! | `(a, 0, 0)`           | `a² = 8/(3α)`    | `α > 0`   | one coupling axis        |
//! | `(a, 0, -a)`          | `a² = 2/α`       | `α > 0`   | two coupling axes        |
//! | `(a, 0, -3a)`         | `a² = 1/(4α)`    | `α > 0`   | coupling + flat axis     |
//! | `(a, a, a)`           | `a² = -8/α`      | `α < 0`   | three coupling axes      |
//! | `(3c/4, 3c/4, c)`     | `c² = -8/α`      | `α < 0`   | two coupling + flat axis |
//!
//! Solving the same conditions with all three constants distinct and nonzero
//! gives nothing new.

use super::{FixedPointRecord, Provenance};
use crate::algebra::StructureConstants;

fn record(a: [f64; 3], alpha: f64, label: &str) -> FixedPointRecord {
    let sc = StructureConstants::from_array(a).expect("closed forms are finite");
    FixedPointRecord::new(sc, alpha, Provenance::Analytic, label)
}

/// Every steady soliton for the coupling `alpha`, one record per symmetry
/// class. The flat family is represented by `(1, 1, 0)`.
pub fn enumerate_analytic(alpha: f64) -> Vec<FixedPointRecord> {
    let mut out = vec![
        record([0.0, 0.0, 0.0], alpha, "abelian"),
        record([1.0, 1.0, 0.0], alpha, "flat"),
    ];
    if alpha > 0.0 {
        let h = (8.0 / (3.0 * alpha)).sqrt();
        out.push(record([h, 0.0, 0.0], alpha, "heisenberg"));
        let s = (2.0 / alpha).sqrt();
        out.push(record([s, 0.0, -s], alpha, "sol-balanced"));
        let e = (1.0 / (4.0 * alpha)).sqrt();
        out.push(record([e, 0.0, -3.0 * e], alpha, "sol-flat-axis"));
    } else if alpha < 0.0 {
        let c = (-8.0 / alpha).sqrt();
        out.push(record([c, c, c], alpha, "round"));
        out.push(record([0.75 * c, 0.75 * c, c], alpha, "squashed-sphere"));
    }
    out
}
