//! Explicit Runge-Kutta integration for small autonomous systems.

use super::{Integrator, Termination};

pub(crate) struct OdeSettings {
    pub integrator: Integrator,
    pub t_end: f64,
    pub blowup_cap: f64,
    pub max_steps: usize,
}

pub(crate) struct OdeSolution<const N: usize> {
    pub samples: Vec<(f64, [f64; N])>,
    pub termination: Termination,
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

fn finite<const N: usize>(y: &[f64; N]) -> bool {
    y.iter().all(|v| v.is_finite())
}

fn exceeds<const N: usize>(y: &[f64; N], cap: f64) -> bool {
    y.iter().any(|v| v.abs() > cap)
}

pub(crate) fn solve<const N: usize, F>(f: F, y0: [f64; N], s: &OdeSettings) -> OdeSolution<N>
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let mut samples = vec![(0.0, y0)];
    if s.t_end == 0.0 {
        return OdeSolution {
            samples,
            termination: Termination::ReachedEnd,
        };
    }
    if exceeds(&y0, s.blowup_cap) {
        return OdeSolution {
            samples,
            termination: Termination::BlowupCap,
        };
    }
    let termination = match s.integrator {
        Integrator::Rk4 { dt } => rk4(&f, y0, dt, s, &mut samples),
        Integrator::Rkf45 { tol, initial_step } => {
            rkf45(&f, y0, tol, initial_step, s, &mut samples)
        }
    };
    OdeSolution {
        samples,
        termination,
    }
}

fn rk4_step<const N: usize, F>(f: &F, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let k1 = f(y);
    let k2 = f(&axpy(y, 0.5 * h, &[(1.0, &k1)]));
    let k3 = f(&axpy(y, 0.5 * h, &[(1.0, &k2)]));
    let k4 = f(&axpy(y, h, &[(1.0, &k3)]));
    axpy(
        y,
        h / 6.0,
        &[(1.0, &k1), (2.0, &k2), (2.0, &k3), (1.0, &k4)],
    )
}

fn rk4<const N: usize, F>(
    f: &F,
    y0: [f64; N],
    dt: f64,
    s: &OdeSettings,
    samples: &mut Vec<(f64, [f64; N])>,
) -> Termination
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let dir = s.t_end.signum();
    let span = s.t_end.abs();
    let n = (span / dt).ceil().max(1.0) as usize;
    let mut y = y0;
    let mut t = 0.0;
    for step in 1..=n {
        if step > s.max_steps {
            return Termination::MaxSteps;
        }
        // times are computed from the step index so they do not drift
        let t_next = if step == n {
            s.t_end
        } else {
            dir * dt * step as f64
        };
        let next = rk4_step(f, &y, t_next - t);
        if !finite(&next) {
            return Termination::BlowupCap;
        }
        y = next;
        t = t_next;
        samples.push((t, y));
        if exceeds(&y, s.blowup_cap) {
            return Termination::BlowupCap;
        }
    }
    Termination::ReachedEnd
}

// Runge-Kutta-Fehlberg 4(5) tableau; the systems are autonomous so the nodes are unused
const A2: [f64; 1] = [1.0 / 4.0];
const A3: [f64; 2] = [3.0 / 32.0, 9.0 / 32.0];
const A4: [f64; 3] = [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0];
const A5: [f64; 4] = [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0];
const A6: [f64; 5] = [
    -8.0 / 27.0,
    2.0,
    -3544.0 / 2565.0,
    1859.0 / 4104.0,
    -11.0 / 40.0,
];
const B5: [f64; 6] = [
    16.0 / 135.0,
    0.0,
    6656.0 / 12825.0,
    28561.0 / 56430.0,
    -9.0 / 50.0,
    2.0 / 55.0,
];
const B4: [f64; 6] = [
    25.0 / 216.0,
    0.0,
    1408.0 / 2565.0,
    2197.0 / 4104.0,
    -1.0 / 5.0,
    0.0,
];

/// One Fehlberg step: the fifth-order solution and the embedded error estimate.
fn rkf45_step<const N: usize, F>(f: &F, y: &[f64; N], h: f64) -> ([f64; N], [f64; N])
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let k1 = f(y);
    let k2 = f(&axpy(y, h, &[(A2[0], &k1)]));
    let k3 = f(&axpy(y, h, &[(A3[0], &k1), (A3[1], &k2)]));
    let k4 = f(&axpy(y, h, &[(A4[0], &k1), (A4[1], &k2), (A4[2], &k3)]));
    let k5 = f(&axpy(
        y,
        h,
        &[(A5[0], &k1), (A5[1], &k2), (A5[2], &k3), (A5[3], &k4)],
    ));
    let k6 = f(&axpy(
        y,
        h,
        &[
            (A6[0], &k1),
            (A6[1], &k2),
            (A6[2], &k3),
            (A6[3], &k4),
            (A6[4], &k5),
        ],
    ));
    let ks = [&k1, &k2, &k3, &k4, &k5, &k6];
    let hi: Vec<(f64, &[f64; N])> = B5.iter().copied().zip(ks).collect();
    let y5 = axpy(y, h, &hi);
    let err = std::array::from_fn(|i| h * (0..6).map(|s| (B5[s] - B4[s]) * ks[s][i]).sum::<f64>());
    (y5, err)
}

fn rkf45<const N: usize, F>(
    f: &F,
    y0: [f64; N],
    tol: f64,
    initial_step: f64,
    s: &OdeSettings,
    samples: &mut Vec<(f64, [f64; N])>,
) -> Termination
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let dir = s.t_end.signum();
    let h_min = 1e-14 * s.t_end.abs();
    let mut h = initial_step.min(s.t_end.abs());
    let mut t = 0.0;
    let mut y = y0;
    let mut accepted = 0usize;
    loop {
        let remaining = (s.t_end - t).abs();
        let last = h >= remaining;
        let step = if last { remaining } else { h };
        let (next, err) = rkf45_step(f, &y, dir * step);
        let norm = if finite(&next) && finite(&err) {
            (0..N)
                .map(|i| err[i].abs() / (tol + tol * y[i].abs().max(next[i].abs())))
                .fold(0.0_f64, f64::max)
        } else {
            f64::INFINITY
        };
        if norm <= 1.0 {
            t = if last { s.t_end } else { t + dir * step };
            y = next;
            samples.push((t, y));
            accepted += 1;
            if exceeds(&y, s.blowup_cap) {
                return Termination::BlowupCap;
            }
            if last {
                return Termination::ReachedEnd;
            }
            if accepted >= s.max_steps {
                return Termination::MaxSteps;
            }
        }
        let factor = if norm == 0.0 {
            5.0
        } else if norm.is_finite() {
            (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            0.2
        };
        // a rejected last step must shrink below the remaining span
        h = if norm <= 1.0 {
            h.max(step) * factor
        } else {
            step * factor
        };
        if h < h_min {
            return Termination::StepUnderflow;
        }
    }
}
