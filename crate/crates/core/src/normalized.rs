//! Ratio system on `(m2, m3) = (a2/a1, a3/a1)` with coupling
//! `β = α a1² / 4`:
//!
//! ```text
//! dm2/dt = m2 (1 - m2) (1 + m2 - m3) [1 - β (1 + m3 - m2)(1 - m2 - m3)]
//! dm3/dt = m3 (1 - m3) (1 + m3 - m2) [1 - β (1 + m2 - m3)(1 - m2 - m3)]
//! ```
//!
//! β is constant only on steady solitons, so this is not itself a geometric
//! flow. Trajectories at frozen β are offered for drawing phase portraits
//! only.

use serde::{Deserialize, Serialize};

use crate::algebra::{GroupClass, StructureConstants};
use crate::error::{invalid, Result};
use crate::flow::{ode, Integrator, Termination};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedState {
    pub m2: f64,
    pub m3: f64,
    pub beta: f64,
}

impl NormalizedState {
    pub fn new(m2: f64, m3: f64, beta: f64) -> Self {
        Self { m2, m3, beta }
    }

    /// The ratios and `β` of a bracket-flow point with `a1 != 0`.
    pub fn from_constants(sc: &StructureConstants, alpha: f64) -> Option<Self> {
        let a1 = sc[0];
        (a1 != 0.0).then(|| Self::new(sc[1] / a1, sc[2] / a1, alpha * a1 * a1 / 4.0))
    }
}

pub fn m_rhs(s: &NormalizedState) -> [f64; 2] {
    let (m2, m3, beta) = (s.m2, s.m3, s.beta);
    let tail = 1.0 - m2 - m3;
    [
        m2 * (1.0 - m2) * (1.0 + m2 - m3) * (1.0 - beta * (1.0 + m3 - m2) * tail),
        m3 * (1.0 - m3) * (1.0 + m3 - m2) * (1.0 - beta * (1.0 + m2 - m3) * tail),
    ]
}

/// A catalog fixed point with every closed-form label that lands on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedFixedPoint {
    pub m2: f64,
    pub m3: f64,
    pub labels: Vec<String>,
}

/// Catalog entries closer than this are merged.
const MERGE_TOL: f64 = 1e-12;

/// The closed-form fixed points of the ratio system at `beta`.
///
/// Square-root entries are emitted only where their radicand is
/// nonnegative; coincident entries are merged with their labels kept in
/// catalog order.
pub fn m_fixed_points(beta: f64) -> Result<Vec<NormalizedFixedPoint>> {
    if beta == 0.0 || !beta.is_finite() {
        return Err(invalid(
            "beta",
            format!("must be finite and nonzero, got {beta}"),
        ));
    }
    let mut raw: Vec<(f64, f64, &str)> = vec![
        (0.0, 0.0, "(0,0)"),
        (0.0, 1.0, "(0,1)"),
        (0.0, -1.0, "(0,-1)"),
        (1.0, 0.0, "(1,0)"),
        (-1.0, 0.0, "(-1,0)"),
        (1.0, 1.0, "(1,1)"),
    ];
    if beta > 0.0 {
        let r = (1.0 / beta).sqrt();
        raw.extend([
            (0.0, 1.0 + r, "(0,1+sqrt(1/beta))"),
            (0.0, 1.0 - r, "(0,1-sqrt(1/beta))"),
            (1.0 + r, 0.0, "(1+sqrt(1/beta),0)"),
            (1.0 - r, 0.0, "(1-sqrt(1/beta),0)"),
        ]);
    }
    let radicand = 1.0 + 1.0 / beta;
    if radicand >= 0.0 {
        let r = radicand.sqrt();
        raw.extend([
            (1.0, 1.0 + r, "(1,1+sqrt(1+1/beta))"),
            (1.0, 1.0 - r, "(1,1-sqrt(1+1/beta))"),
            (1.0 + r, 1.0, "(1+sqrt(1+1/beta),1)"),
            (1.0 - r, 1.0, "(1-sqrt(1+1/beta),1)"),
        ]);
    }
    let mid = 0.5 * (1.0 - 1.0 / beta);
    raw.push((mid, mid, "((1-1/beta)/2,(1-1/beta)/2)"));

    let mut out: Vec<NormalizedFixedPoint> = Vec::new();
    for (m2, m3, label) in raw {
        match out
            .iter_mut()
            .find(|p| (p.m2 - m2).abs() <= MERGE_TOL && (p.m3 - m3).abs() <= MERGE_TOL)
        {
            Some(p) => p.labels.push(label.to_string()),
            None => out.push(NormalizedFixedPoint {
                m2,
                m3,
                labels: vec![label.to_string()],
            }),
        }
    }
    Ok(out)
}

/// Lie algebra of the sign pattern `(1, m2, m3)`.
pub fn m_region(m2: f64, m3: f64) -> GroupClass {
    StructureConstants::from_array([1.0, m2, m3])
        .map(|sc| sc.classify())
        .unwrap_or_else(|_| panic!("non-finite ratios ({m2}, {m3})"))
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]` in the `(m2, m3)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Bounds {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(invalid("bounds", "must be finite"));
        }
        if !(x1 > x0 && y1 > y0) {
            return Err(invalid(
                "bounds",
                format!("degenerate rectangle {x0},{x1},{y0},{y1}"),
            ));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub m2: f64,
    pub m3: f64,
    pub dm2: f64,
    pub dm3: f64,
}

/// `n × n` samples of the vector field in row-major order: `m3` rows from
/// `y0` up to `y1`, `m2` increasing within each row.
pub fn vector_field_grid(beta: f64, bounds: &Bounds, n: usize) -> Result<Vec<FieldSample>> {
    if n < 2 {
        return Err(invalid("n", format!("must be at least 2, got {n}")));
    }
    if !beta.is_finite() {
        return Err(invalid("beta", "must be finite"));
    }
    let lerp = |lo: f64, hi: f64, k: usize| {
        if k == n - 1 {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        let m3 = lerp(bounds.y0, bounds.y1, row);
        for col in 0..n {
            let m2 = lerp(bounds.x0, bounds.x1, col);
            let [dm2, dm3] = m_rhs(&NormalizedState::new(m2, m3, beta));
            out.push(FieldSample { m2, m3, dm2, dm3 });
        }
    }
    Ok(out)
}

/// Integrates the ratio system with β frozen. For phase-portrait
/// illustration only; it is not a flow of metrics.
pub fn integrate_frozen_beta(
    start: (f64, f64),
    beta: f64,
    t_end: f64,
    tol: f64,
) -> Result<(Vec<(f64, [f64; 2])>, Termination)> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("must be positive, got {tol}")));
    }
    let settings = ode::OdeSettings {
        integrator: Integrator::Rkf45 {
            tol,
            initial_step: 1e-3,
        },
        t_end,
        blowup_cap: 1e8,
        max_steps: 100_000,
    };
    let sol = ode::solve(
        |y: &[f64; 2]| m_rhs(&NormalizedState::new(y[0], y[1], beta)),
        [start.0, start.1],
        &settings,
    );
    Ok((sol.samples, sol.termination))
}
