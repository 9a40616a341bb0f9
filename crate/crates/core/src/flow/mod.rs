//! Ricci and two-loop RG (RG-2) bracket flows.
//!
//! The RG-2 flow `∂g/∂t = -2 Rc - (α/2) Rm²` of a left-invariant metric,
//! rewritten on a moving orthonormal Milnor frame, becomes the cubic/quintic
//! system
//!
//! ```text
//! da_i/dt = (a_i / 2) B_i (1 + (α/8) B_i),
//! B_i = (a_j - a_k)² - 3 a_i² + 2 a_i a_j + 2 a_i a_k,
//! ```
//!
//! and `α = 0` is the Ricci bracket flow. Since `B_i = 4 K_i`, the right-hand
//! side factors as `2 a_i K_i (1 + (α/2) K_i)`.

mod csv;
pub(crate) mod ode;

use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::curvature::{curvature_profile, sectional_curvatures};
use crate::error::{invalid, Error, Result};

pub use self::csv::{read_trajectory_csv, write_trajectory_csv, TRAJECTORY_CSV_HEADER};

/// `B_i`, the polynomial in the brackets of the printed system.
pub fn bracket_factors(sc: &StructureConstants) -> [f64; 3] {
    let a = sc.as_array();
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let d = a[j] - a[k];
        d * d - 3.0 * a[i] * a[i] + 2.0 * a[i] * a[j] + 2.0 * a[i] * a[k]
    })
}

/// `1 + (α/8) B_i`; the RG-2 correction multiplying the Ricci term.
pub fn braces_factors(sc: &StructureConstants, alpha: f64) -> [f64; 3] {
    bracket_factors(sc).map(|b| 1.0 + alpha / 8.0 * b)
}

pub fn rg2_rhs(sc: &StructureConstants, alpha: f64) -> [f64; 3] {
    let a = sc.as_array();
    let b = bracket_factors(sc);
    let rhs = std::array::from_fn(|i| 0.5 * a[i] * b[i] * (1.0 + alpha / 8.0 * b[i]));
    debug_assert!(agrees_with_curvature_form(sc, alpha, &rhs));
    rhs
}

pub fn ricci_rhs(sc: &StructureConstants) -> [f64; 3] {
    rg2_rhs(sc, 0.0)
}

/// The same right-hand side written through sectional curvature,
/// `2 a_i K_i (1 + (α/2) K_i)`.
pub fn rg2_rhs_from_curvature(sc: &StructureConstants, alpha: f64) -> [f64; 3] {
    let a = sc.as_array();
    let k = sectional_curvatures(sc);
    std::array::from_fn(|i| 2.0 * a[i] * k[i] * (1.0 + 0.5 * alpha * k[i]))
}

fn agrees_with_curvature_form(sc: &StructureConstants, alpha: f64, rhs: &[f64; 3]) -> bool {
    let other = rg2_rhs_from_curvature(sc, alpha);
    let m = sc.max_abs();
    let scale = m * m * m * (1.0 + alpha.abs() * m * m) + f64::MIN_POSITIVE;
    rhs.iter()
        .zip(&other)
        .all(|(x, y)| (x - y).abs() <= 1e-9 * scale)
}

/// Orthonormalized constants of the diagonal metric `g` on a Lie algebra
/// whose Milnor basis has constants `background`:
/// `a_i = c_i sqrt(g_i / (g_j g_k))`.
pub fn orthonormalize(g: [f64; 3], background: &StructureConstants) -> Result<StructureConstants> {
    check_metric(g)?;
    let c = background.as_array();
    StructureConstants::from_array(std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        c[i] * (g[i] / (g[j] * g[k])).sqrt()
    }))
}

fn check_metric(g: [f64; 3]) -> Result<()> {
    if g.iter().all(|x| x.is_finite() && *x > 0.0) {
        Ok(())
    } else {
        Err(Error::NonPositiveMetric(g[0], g[1], g[2]))
    }
}

/// RG-2 flow of the diagonal metric coefficients themselves:
/// `dg_i/dt = (-2 r_i - (α/2) Rm²_ii) g_i`, with curvature evaluated on the
/// orthonormalized constants.
pub fn metric_rhs(g: [f64; 3], background: &StructureConstants, alpha: f64) -> Result<[f64; 3]> {
    let a = orthonormalize(g, background)?;
    let p = curvature_profile(&a);
    Ok(std::array::from_fn(|i| {
        (-2.0 * p.ricci[i] - 0.5 * alpha * p.rm2diag[i]) * g[i]
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowKind {
    Ricci,
    RG2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Integrator {
    /// Classical fixed-step RK4; reproducible sample times.
    Rk4 { dt: f64 },
    /// Fehlberg 4(5) with the same value as absolute and relative tolerance.
    Rkf45 { tol: f64, initial_step: f64 },
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::Rkf45 {
            tol: 1e-10,
            initial_step: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowParameters {
    /// Coupling constant, units of length squared.
    pub alpha: f64,
    pub kind: FlowKind,
    pub integrator: Integrator,
    /// Negative values integrate backward in time.
    pub t_end: f64,
    pub blowup_cap: f64,
    pub max_steps: usize,
}

impl Default for FlowParameters {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            kind: FlowKind::RG2,
            integrator: Integrator::default(),
            t_end: 1.0,
            blowup_cap: 1e8,
            max_steps: 1_000_000,
        }
    }
}

impl FlowParameters {
    pub fn rg2(alpha: f64, t_end: f64) -> Self {
        Self {
            alpha,
            t_end,
            ..Self::default()
        }
    }

    pub fn ricci(t_end: f64) -> Self {
        Self {
            kind: FlowKind::Ricci,
            t_end,
            ..Self::default()
        }
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    /// The coupling actually used; the Ricci kind ignores `alpha`.
    pub fn effective_alpha(&self) -> f64 {
        match self.kind {
            FlowKind::Ricci => 0.0,
            FlowKind::RG2 => self.alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(invalid("alpha", "must be finite"));
        }
        if !self.t_end.is_finite() {
            return Err(invalid("t_end", "must be finite"));
        }
        match self.integrator {
            Integrator::Rk4 { dt } if !(dt > 0.0 && dt.is_finite()) => {
                return Err(invalid("dt", format!("must be positive, got {dt}")))
            }
            Integrator::Rkf45 { tol, initial_step } => {
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(invalid("tol", format!("must be positive, got {tol}")));
                }
                if !(initial_step > 0.0 && initial_step.is_finite()) {
                    return Err(invalid(
                        "initial_step",
                        format!("must be positive, got {initial_step}"),
                    ));
                }
            }
            _ => {}
        }
        if !(self.blowup_cap > 0.0) {
            return Err(invalid("blowup_cap", "must be positive"));
        }
        if self.max_steps == 0 {
            return Err(invalid("max_steps", "must be at least 1"));
        }
        Ok(())
    }

    fn ode_settings(&self) -> ode::OdeSettings {
        ode::OdeSettings {
            integrator: self.integrator,
            t_end: self.t_end,
            blowup_cap: self.blowup_cap,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    ReachedEnd,
    BlowupCap,
    MaxSteps,
    /// The adaptive step fell below `1e-14 |t_end|`, typically at a
    /// finite-time singularity.
    StepUnderflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    /// Structure constants for bracket flows, metric coefficients for the
    /// metric flow.
    pub state: [f64; 3],
}

impl Sample {
    pub fn constants(&self) -> StructureConstants {
        // samples are finite by construction
        StructureConstants::from_array(self.state).expect("finite sample")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has the initial sample")
    }

    pub fn final_time(&self) -> f64 {
        self.last().t
    }

    /// Maps a metric-flow trajectory to orthonormalized constants.
    pub fn orthonormalized(
        &self,
        background: &StructureConstants,
    ) -> Result<Vec<(f64, StructureConstants)>> {
        self.samples
            .iter()
            .map(|s| Ok((s.t, orthonormalize(s.state, background)?)))
            .collect()
    }

    fn from_solution(sol: ode::OdeSolution<3>) -> Self {
        Self {
            samples: sol
                .samples
                .into_iter()
                .map(|(t, state)| Sample { t, state })
                .collect(),
            termination: sol.termination,
        }
    }
}

/// Integrates the bracket flow (Ricci or RG-2 per `params.kind`).
pub fn integrate_bracket(start: StructureConstants, params: &FlowParameters) -> Result<Trajectory> {
    params.validate()?;
    let alpha = params.effective_alpha();
    let f = |y: &[f64; 3]| match StructureConstants::from_array(*y) {
        Ok(sc) => rg2_rhs(&sc, alpha),
        Err(_) => [f64::NAN; 3],
    };
    Ok(Trajectory::from_solution(ode::solve(
        f,
        start.as_array(),
        &params.ode_settings(),
    )))
}

/// Integrates the diagonal metric coefficients on a fixed Milnor basis with
/// constants `background`.
pub fn integrate_metric(
    g0: [f64; 3],
    background: &StructureConstants,
    params: &FlowParameters,
) -> Result<Trajectory> {
    params.validate()?;
    check_metric(g0)?;
    let alpha = params.effective_alpha();
    let f = |g: &[f64; 3]| metric_rhs(*g, background, alpha).unwrap_or([f64::NAN; 3]);
    Ok(Trajectory::from_solution(ode::solve(
        f,
        g0,
        &params.ode_settings(),
    )))
}
