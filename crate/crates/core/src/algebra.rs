//! Structure constants of a Milnor frame and the unimodular Lie algebra they
//! define.
//!
//! Permuting the frame vectors permutes the constants (possibly together with
//! a global sign, which is itself a symmetry), and reversing the orientation
//! of the frame negates all three. Flipping a single frame vector also negates
//! all three constants, so single-entry sign flips are *not* symmetries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance under which an entry counts as zero when classifying.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

/// `(a1, a2, a3)` with `[e2,e3] = a1 e1`, `[e3,e1] = a2 e2`, `[e1,e2] = a3 e3`.
///
/// Entries are always finite. Units are inverse length.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct StructureConstants([f64; 3]);

impl StructureConstants {
    pub const ZERO: Self = Self([0.0; 3]);

    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        Self::from_array([a1, a2, a3])
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        if a.iter().all(|x| x.is_finite()) {
            Ok(Self(a))
        } else {
            Err(Error::NonFinite(a[0], a[1], a[2]))
        }
    }

    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    /// Symmetry-class representative: the descending sort of either `self` or
    /// `-self`, whichever is lexicographically greater.
    pub fn canonicalize(&self) -> Self {
        let direct = sorted_desc(self.0);
        let negated = sorted_desc(self.0.map(|x| -x));
        match lex_cmp(&negated, &direct) {
            Ordering::Greater => Self(negated),
            _ => Self(direct),
        }
    }

    /// Sign signature, counting entries with `|a_i| <= rel_tol * max|a|` as
    /// zero. Exact zeros always count as zero.
    pub fn signature(&self, rel_tol: f64) -> Signature {
        let scale = self.max_abs();
        let mut sig = Signature::default();
        for &x in &self.0 {
            if x == 0.0 || x.abs() <= rel_tol * scale {
                sig.zero += 1;
            } else if x > 0.0 {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
        }
        if sig.negative > sig.positive {
            std::mem::swap(&mut sig.negative, &mut sig.positive);
        }
        sig
    }

    pub fn classify(&self) -> GroupClass {
        self.classify_with_tol(DEFAULT_ZERO_TOL)
    }

    pub fn classify_with_tol(&self, rel_tol: f64) -> GroupClass {
        let signature = self.canonicalize().signature(rel_tol);
        GroupClass {
            group: LieGroup::from_signature(signature),
            signature,
        }
    }

    /// Whether the two triples lie in the same symmetry class, entrywise
    /// within `tol`.
    ///
    /// Compared as the distance between orbits, which is insensitive to the
    /// tie-break inside [`canonicalize`](Self::canonicalize).
    pub fn equivalent(&self, other: &Self, tol: f64) -> bool {
        self.orbit_distance(other) <= tol
    }

    /// Sup-norm distance between the symmetry orbits of `self` and `other`.
    pub fn orbit_distance(&self, other: &Self) -> f64 {
        let x = sorted_desc(self.0);
        let y = sorted_desc(other.0);
        let ny = sorted_desc(other.0.map(|v| -v));
        sup_dist(&x, &y).min(sup_dist(&x, &ny))
    }

    /// Applies `perm`: the result has `perm[i]`-th entry of `self` in slot `i`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]]])
    }
}

impl Index<usize> for StructureConstants {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Neg for StructureConstants {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul<StructureConstants> for f64 {
    type Output = StructureConstants;
    fn mul(self, sc: StructureConstants) -> StructureConstants {
        StructureConstants(sc.0.map(|x| self * x))
    }
}

impl TryFrom<[f64; 3]> for StructureConstants {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        Self::from_array(a)
    }
}

impl From<StructureConstants> for [f64; 3] {
    fn from(sc: StructureConstants) -> Self {
        sc.0
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The six three-dimensional unimodular Lie algebras, named after a
/// representative simply connected group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieGroup {
    R3,
    Heisenberg,
    E2,
    E11,
    SL2R,
    SU2,
}

impl LieGroup {
    /// Milnor's table. `sig` must already satisfy `positive >= negative`.
    pub fn from_signature(sig: Signature) -> Self {
        match (sig.positive, sig.negative, sig.zero) {
            (3, 0, 0) => LieGroup::SU2,
            (2, 1, 0) => LieGroup::SL2R,
            (2, 0, 1) => LieGroup::E2,
            (1, 1, 1) => LieGroup::E11,
            (1, 0, 2) => LieGroup::Heisenberg,
            (0, 0, 3) => LieGroup::R3,
            _ => unreachable!("signature {sig:?} is not normalized"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LieGroup::R3 => "R3",
            LieGroup::Heisenberg => "Heisenberg",
            LieGroup::E2 => "E2",
            LieGroup::E11 => "E11",
            LieGroup::SL2R => "SL2R",
            LieGroup::SU2 => "SU2",
        }
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Counts of positive, negative and zero entries, normalized so that
/// `positive >= negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Signature {
    pub positive: u8,
    pub negative: u8,
    pub zero: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupClass {
    pub group: LieGroup,
    pub signature: Signature,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.group.fmt(f)
    }
}

fn sorted_desc(mut a: [f64; 3]) -> [f64; 3] {
    a.sort_by(|x, y| y.total_cmp(x));
    // -0.0 and 0.0 compare unequal under total_cmp; normalize
    a.map(|x| if x == 0.0 { 0.0 } else { x })
}

fn lex_cmp(x: &[f64; 3], y: &[f64; 3]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn sup_dist(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x.iter()
        .zip(y)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
}
