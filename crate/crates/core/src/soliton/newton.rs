//! Fixed points by damped Newton iteration from a grid of seeds.

use std::str::FromStr;

use rayon::prelude::*;

use super::{
    is_fixed, jacobian_matrix, residual, unit, Family, FixedPointRecord, Provenance, CLUSTER_RADIUS,
};
use crate::algebra::StructureConstants;
use crate::error::{invalid, Error, Result};
use crate::flow::rg2_rhs;

const MAX_ITERATIONS: usize = 100;
const MAX_HALVINGS: usize = 20;
/// Converged points this close to the origin are the origin.
const ORIGIN_SNAP: f64 = 1e-9;
/// Relative size under which a single entry is snapped to zero.
const ENTRY_SNAP: f64 = 1e-9;
const MAX_GRID_POINTS_PER_AXIS: usize = 401;

/// Seed lattice `lo, lo + step, ..., hi` on every axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err(invalid("grid", "bounds and step must be finite"));
        }
        if hi < lo {
            return Err(invalid(
                "grid",
                format!("upper bound {hi} is below lower bound {lo}"),
            ));
        }
        if step <= 0.0 {
            return Err(invalid(
                "grid",
                format!("step must be positive, got {step}"),
            ));
        }
        let g = Self { lo, hi, step };
        if g.points_per_axis() > MAX_GRID_POINTS_PER_AXIS {
            return Err(invalid(
                "grid",
                format!("more than {MAX_GRID_POINTS_PER_AXIS} points per axis"),
            ));
        }
        Ok(g)
    }

    pub fn points_per_axis(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn axis_values(&self) -> Vec<f64> {
        (0..self.points_per_axis())
            .map(|k| self.lo + self.step * k as f64)
            .collect()
    }

    pub fn seeds(&self) -> Vec<[f64; 3]> {
        let v = self.axis_values();
        let mut out = Vec::with_capacity(v.len().pow(3));
        for &x in &v {
            for &y in &v {
                for &z in &v {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.lo * factor, self.hi * factor, self.step * factor.abs())
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `LO:HI:STEP`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(invalid("grid", format!("expected LO:HI:STEP, got `{s}`")));
        };
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| invalid("grid", format!("`{p}`: {e}")))
        };
        Self::new(num(lo)?, num(hi)?, num(step)?)
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Deduplicated fixed points, sorted by canonical constants.
    pub records: Vec<FixedPointRecord>,
    pub seeds: usize,
    pub converged: usize,
    /// Seeds whose Newton iteration did not reach the tolerance.
    pub dropped: usize,
}

fn step_direction(x: &StructureConstants, alpha: f64) -> Option<[f64; 3]> {
    let f = rg2_rhs(x, alpha);
    let jac = jacobian_matrix(x, alpha);
    let svd = jac.svd(true, true);
    let max = svd.singular_values.max();
    if max == 0.0 || !max.is_finite() {
        return None;
    }
    let rhs = nalgebra::Vector3::new(-f[0], -f[1], -f[2]);
    let dx = svd.solve(&rhs, 1e-13 * max).ok()?;
    Some([dx[0], dx[1], dx[2]])
}

/// Damped Newton from `seed`; `None` when the tolerance is not reached.
fn newton(seed: [f64; 3], alpha: f64, tol: f64) -> Option<StructureConstants> {
    let mut x = StructureConstants::from_array(seed).ok()?;
    let mut r = residual(&x, alpha);
    for _ in 0..MAX_ITERATIONS {
        if r == 0.0 {
            break;
        }
        let Some(dx) = step_direction(&x, alpha) else {
            break;
        };
        let mut lambda = 1.0;
        let mut improved = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: [f64; 3] = std::array::from_fn(|i| x[i] + lambda * dx[i]);
            if let Ok(t) = StructureConstants::from_array(trial) {
                let rt = residual(&t, alpha);
                if rt < r {
                    improved = Some((t, rt));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((next, rn)) = improved else { break };
        let moved = (0..3).fold(0.0_f64, |m, i| m.max((next[i] - x[i]).abs()));
        x = next;
        r = rn;
        // keep going past the tolerance so degenerate zeros converge
        if moved <= 1e-15 * x.max_abs().max(1.0) {
            break;
        }
    }
    let x = snap(x, alpha, tol);
    is_fixed(&x, alpha, tol).then_some(x)
}

fn snap(x: StructureConstants, alpha: f64, tol: f64) -> StructureConstants {
    let m = x.max_abs();
    if m < ORIGIN_SNAP {
        return StructureConstants::ZERO;
    }
    let snapped = StructureConstants::from_array(x.as_array().map(|v| {
        if v.abs() < ENTRY_SNAP * m {
            0.0
        } else {
            v
        }
    }))
    .expect("finite");
    if is_fixed(&snapped, alpha, tol) {
        snapped
    } else {
        x
    }
}

/// Newton from every grid seed, deduplicated up to symmetry.
///
/// Seeds run in parallel; results are collected in seed order and clustered
/// after a canonical sort, so the output does not depend on scheduling.
pub fn newton_sweep(alpha: f64, grid: &Grid, tol: f64) -> Result<SweepReport> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("must be positive, got {tol}")));
    }
    if !alpha.is_finite() {
        return Err(invalid("alpha", "must be finite"));
    }
    let seeds = grid.seeds();
    let found: Vec<Option<StructureConstants>> =
        seeds.par_iter().map(|&s| newton(s, alpha, tol)).collect();
    let converged: Vec<StructureConstants> = found.into_iter().flatten().collect();
    let n_converged = converged.len();

    let mut candidates: Vec<FixedPointRecord> = converged
        .into_iter()
        .map(|x| FixedPointRecord::new(x, alpha, Provenance::Newton, "newton"))
        .collect();
    candidates.sort_by(|a, b| cmp_canonical(&a.canonical, &b.canonical));

    let mut clusters: Vec<Vec<FixedPointRecord>> = Vec::new();
    for c in candidates {
        match clusters
            .iter_mut()
            .find(|cl| cl[0].same_point(&c, CLUSTER_RADIUS))
        {
            Some(cl) => cl.push(c),
            None => clusters.push(vec![c]),
        }
    }
    let mut records: Vec<FixedPointRecord> = clusters
        .into_iter()
        .map(|cl| representative(cl, alpha, tol))
        .collect();
    records.sort_by(|a, b| cmp_canonical(&a.canonical, &b.canonical));

    Ok(SweepReport {
        records,
        seeds: seeds.len(),
        converged: n_converged,
        dropped: seeds.len() - n_converged,
    })
}

fn representative(cluster: Vec<FixedPointRecord>, alpha: f64, tol: f64) -> FixedPointRecord {
    if cluster[0].family == Family::OneParameterFamily {
        let dir = unit(&cluster[0].canonical);
        if is_fixed(&dir, alpha, tol) {
            let rec = FixedPointRecord::new(dir, alpha, Provenance::Newton, "newton");
            if rec.family == Family::OneParameterFamily {
                return rec;
            }
        }
        return cluster
            .into_iter()
            .min_by(|a, b| {
                let da = (a.constants.max_abs() - 1.0).abs();
                let db = (b.constants.max_abs() - 1.0).abs();
                da.total_cmp(&db)
            })
            .expect("non-empty cluster");
    }
    // first minimum keeps the canonical order as tie-break
    cluster
        .into_iter()
        .reduce(|best, r| if r.residual < best.residual { r } else { best })
        .expect("non-empty cluster")
}

fn cmp_canonical(a: &StructureConstants, b: &StructureConstants) -> std::cmp::Ordering {
    let (a, b) = (a.as_array(), b.as_array());
    a.iter()
        .zip(&b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}
