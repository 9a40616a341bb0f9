//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};

use bracketflow::curvature::{curvature_profile, parabolic};
use bracketflow::flow::{bracket_factors, integrate_bracket, integrate_metric, rg2_rhs};
use bracketflow::normalized::{m_fixed_points, m_rhs, NormalizedFixedPoint, NormalizedState};
use bracketflow::soliton::{
    enumerate_analytic, newton_sweep, residual, Family, FixedPointRecord, Grid,
};
use bracketflow::{FlowParameters, Integrator, StructureConstants};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = (bool, String);

fn sc(a: [f64; 3]) -> StructureConstants {
    StructureConstants::from_array(a).unwrap()
}

fn close_rel(x: f64, y: f64, scale: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * scale.max(1.0)
}

fn same_multiset(x: [f64; 3], y: [f64; 3], tol: f64) -> bool {
    let (mut x, mut y) = (x, y);
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    x.iter().zip(&y).all(|(a, b)| (a - b).abs() <= tol)
}

fn unit(a: [f64; 3]) -> StructureConstants {
    let m = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    sc(a.map(|v| v / m))
}

fn criterion_1() -> Outcome {
    let s2 = 2f64.sqrt();
    let mut cases = vec![
        ("row 5", [-1.5, 0.0, 0.5], 1.0),
        ("row 6", [3.0 / s2, 3.0 / s2, 4.0 / s2], -1.0),
    ];
    for a in [0.5, 1.0, 2.0] {
        cases.push(("row 1", [a, a, 0.0], 1.0));
        cases.push(("row 1", [a, a, 0.0], -1.0));
    }
    let worst = cases
        .iter()
        .map(|(_, a, al)| residual(&sc(*a), *al))
        .fold(0.0_f64, f64::max);
    (
        worst < 1e-12,
        format!("max residual {worst:.3e} over {} cases", cases.len()),
    )
}

fn criterion_2() -> Outcome {
    let o = Command::new(env!("CARGO_BIN_EXE_bracketflow"))
        .args([
            "paper-check",
            "--alpha-pos",
            "1",
            "--alpha-neg",
            "-1",
            "--format",
            "json",
        ])
        .env_remove("BRACKETFLOW_FORMAT")
        .output()
        .expect("binary runs");
    if !o.status.success() {
        return (false, "paper-check exited with an error".into());
    }
    let rows: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    let expected: [(usize, &str, &[f64]); 7] = [
        (1, "PASS", &[]),
        (2, "FAIL", &[55.0 / 64.0]),
        (3, "FAIL", &[2.0, 2.0]),
        (4, "FAIL", &[2.0, 2.0, 2.0]),
        (5, "PASS", &[]),
        (6, "PASS", &[]),
        (7, "FAIL", &[0.75, 0.75, 0.25]),
    ];
    let mut problems = Vec::new();
    for (row, verdict, factors) in expected {
        let r = &rows[row - 1];
        if r["verdict"] != verdict {
            problems.push(format!("row {row} verdict {}", r["verdict"]));
        }
        if factors.is_empty() {
            continue;
        }
        let got: Vec<f64> = r["per_axis"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|x| x["a"].as_f64().unwrap() != 0.0)
            .map(|x| x["braces_factor"].as_f64().unwrap())
            .collect();
        let ok = got.len() == factors.len()
            && got.iter().zip(factors).all(|(g, f)| (g - f).abs() < 1e-12);
        if !ok {
            problems.push(format!("row {row} braces {got:?}"));
        }
    }
    if problems.is_empty() {
        (
            true,
            "rows 1,5,6 PASS; rows 2,3,4,7 FAIL with braces 55/64; 2,2; 2,2,2; 3/4,3/4,1/4".into(),
        )
    } else {
        (false, problems.join("; "))
    }
}

enum Expected {
    Point([f64; 3]),
    FlatFamily,
}

fn matches(r: &FixedPointRecord, e: &Expected) -> bool {
    match e {
        Expected::Point(a) => {
            r.family == Family::Isolated && r.constants.equivalent(&sc(*a), 1e-12)
        }
        Expected::FlatFamily => {
            r.family == Family::OneParameterFamily
                && unit(r.constants.as_array()).equivalent(&sc([1.0, 1.0, 0.0]), 1e-12)
        }
    }
}

fn describe(e: &Expected) -> String {
    match e {
        Expected::Point(a) => format!("({:.6}, {:.6}, {:.6})", a[0], a[1], a[2]),
        Expected::FlatFamily => "flat family".into(),
    }
}

fn expected_set(alpha: f64) -> Vec<Expected> {
    let s2 = 2f64.sqrt();
    if alpha > 0.0 {
        vec![
            Expected::Point([0.0; 3]),
            Expected::FlatFamily,
            Expected::Point([(8.0f64 / 3.0).sqrt(), 0.0, 0.0]),
            Expected::Point([s2, 0.0, -s2]),
            Expected::Point([-1.5, 0.0, 0.5]),
        ]
    } else {
        vec![
            Expected::Point([0.0; 3]),
            Expected::FlatFamily,
            Expected::Point([8f64.sqrt(); 3]),
            Expected::Point([3.0 / s2, 3.0 / s2, 4.0 / s2]),
            Expected::Point([s2, s2, 2.0 * s2]),
        ]
    }
}

fn exact_set(alpha: f64) -> Outcome {
    let recs = enumerate_analytic(alpha);
    let expected = expected_set(alpha);
    let missing: Vec<String> = expected
        .iter()
        .filter(|e| !recs.iter().any(|r| matches(r, e)))
        .map(describe)
        .collect();
    let extra: Vec<String> = recs
        .iter()
        .filter(|r| !expected.iter().any(|e| matches(r, e)))
        .map(|r| format!("{} {}", r.label, r.constants))
        .collect();
    let ok = missing.is_empty() && extra.is_empty();
    let mut detail = format!("{} records", recs.len());
    if !missing.is_empty() {
        detail += &format!("; missing {}", missing.join(", "));
    }
    if !extra.is_empty() {
        detail += &format!("; unexpected {}", extra.join(", "));
    }
    (ok, detail)
}

fn criterion_3c() -> Outcome {
    let mut worst = (0.0_f64, String::new());
    for alpha in [1.0, -1.0] {
        let mut points: Vec<(String, [f64; 3])> = expected_set(alpha)
            .iter()
            .map(|e| match e {
                Expected::Point(a) => (describe(e), *a),
                Expected::FlatFamily => (describe(e), [1.0, 1.0, 0.0]),
            })
            .collect();
        points.extend(
            enumerate_analytic(alpha)
                .iter()
                .map(|r| (r.label.clone(), r.constants.as_array())),
        );
        for (name, a) in points {
            let res = residual(&sc(a), alpha);
            if res > worst.0 {
                worst = (res, format!("{name} at alpha={alpha}"));
            }
        }
    }
    (
        worst.0 < 1e-12,
        format!("max residual {:.3e} ({})", worst.0, worst.1),
    )
}

fn criterion_3d() -> Outcome {
    let grid: Grid = "-4:4:0.5".parse().unwrap();
    let mut extra = Vec::new();
    let mut seeds = 0;
    for alpha in [1.0, -1.0] {
        let analytic = enumerate_analytic(alpha);
        let report = newton_sweep(alpha, &grid, 1e-10).unwrap();
        seeds += report.seeds;
        for r in report.records {
            if r.residual < 1e-10 && !analytic.iter().any(|a| a.same_point(&r, 1e-6)) {
                extra.push(format!("{} at alpha={alpha}", r.constants));
            }
        }
    }
    if extra.is_empty() {
        (true, format!("{seeds} seeds, no inequivalent extra points"))
    } else {
        (false, format!("extra points: {}", extra.join(", ")))
    }
}

fn criterion_4() -> Outcome {
    let p = curvature_profile(&sc([-1.5, 0.0, 0.5]));
    let ok = same_multiset(p.sectional, [1.0, 0.0, -2.0], 1e-12)
        && same_multiset(p.ricci, [1.0, -2.0, -1.0], 1e-12);
    (
        ok,
        format!("sectional {:?}, ricci {:?}", p.sectional, p.ricci),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..=3.0));
        let p = curvature_profile(&sc(a));
        let o = bracketflow_oracle::curvature(a);
        let scale = o
            .sectional
            .iter()
            .chain(&o.ricci)
            .chain(&o.rm2)
            .fold(1.0_f64, |m, v| m.max(v.abs()));
        let diffs = (0..3)
            .flat_map(|i| {
                [
                    p.sectional[i] - o.sectional[i],
                    p.ricci[i] - o.ricci[i],
                    p.rm2diag[i] - o.rm2[i],
                ]
            })
            .chain([p.scalar - o.scalar, o.ricci_offdiag, o.rm2_offdiag]);
        for d in diffs {
            worst = worst.max(d.abs() / scale);
        }
    }
    (
        worst <= 1e-10,
        format!("1000 triples, max relative error {worst:.3e}"),
    )
}

fn criterion_6() -> Outcome {
    let rk4 = Integrator::Rk4 { dt: 1e-3 };
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for bg in [[2.0, 0.0, 0.0], [1.0, 1.0, 1.0], [1.0, 1.0, -1.0]] {
        for alpha in [0.0, 0.1, -0.1] {
            let params = FlowParameters::rg2(alpha, 0.5).with_integrator(rk4);
            let background = sc(bg);
            let bracket = integrate_bracket(background, &params).unwrap();
            let metric = integrate_metric([1.0; 3], &background, &params).unwrap();
            let mapped = metric.orthonormalized(&background).unwrap();
            if bracket.samples.len() != mapped.len() || bracket.final_time() != 0.5 {
                failures.push(format!("{bg:?} alpha={alpha}: sample mismatch"));
                continue;
            }
            for (b, (t, m)) in bracket.samples.iter().zip(&mapped) {
                assert_eq!(b.t, *t);
                for i in 0..3 {
                    worst = worst.max((b.state[i] - m[i]).abs());
                }
            }
        }
    }
    let ok = failures.is_empty() && worst <= 1e-6;
    (
        ok,
        format!(
            "9 runs, sup-norm difference {worst:.3e}{}",
            failures.join("; ")
        ),
    )
}

fn criterion_7() -> Outcome {
    let params = |t_end| {
        FlowParameters::rg2(0.0, t_end).with_integrator(Integrator::Rkf45 {
            tol: 1e-12,
            initial_step: 1e-4,
        })
    };
    let round = integrate_bracket(sc([1.0; 3]), &params(0.9)).unwrap();
    let mut round_err = 0.0_f64;
    for s in &round.samples {
        let exact = (1.0 - s.t).powf(-0.5);
        for v in s.state {
            round_err = round_err.max((v - exact).abs());
        }
    }
    let heis = integrate_bracket(sc([2.0, 0.0, 0.0]), &params(5.0)).unwrap();
    let mut heis_err = 0.0_f64;
    for s in &heis.samples {
        let exact = (0.25 + 3.0 * s.t).powf(-0.5);
        heis_err = heis_err
            .max((s.state[0] - exact).abs())
            .max(s.state[1].abs())
            .max(s.state[2].abs());
    }
    let ok = round_err <= 1e-6
        && heis_err <= 1e-6
        && round.final_time() == 0.9
        && heis.final_time() == 5.0;
    (
        ok,
        format!("round on [0,0.9] err {round_err:.3e}; heisenberg on [0,5] err {heis_err:.3e}"),
    )
}

fn contains(points: &[NormalizedFixedPoint], m2: f64, m3: f64) -> bool {
    points
        .iter()
        .any(|p| (p.m2 - m2).abs() < 1e-12 && (p.m3 - m3).abs() < 1e-12)
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0_f64;
    let mut missing = Vec::new();
    let mut count = 0;
    for beta in [-1.0, -0.25, 0.25, 1.0, 4.0] {
        let pts = m_fixed_points(beta).unwrap();
        count += pts.len();
        for p in &pts {
            let [x, y] = m_rhs(&NormalizedState::new(p.m2, p.m3, beta));
            worst = worst.max(x.abs()).max(y.abs());
        }
        let mut required = vec![
            (0.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 0.0),
            (-1.0, 0.0),
            (1.0, 1.0),
        ];
        if beta > 0.0 {
            let r = (1.0 / beta).sqrt();
            required.extend([
                (0.0, 1.0 + r),
                (0.0, 1.0 - r),
                (1.0 + r, 0.0),
                (1.0 - r, 0.0),
            ]);
        }
        if 1.0 + 1.0 / beta >= 0.0 {
            let r = (1.0 + 1.0 / beta).sqrt();
            required.extend([
                (1.0, 1.0 + r),
                (1.0, 1.0 - r),
                (1.0 + r, 1.0),
                (1.0 - r, 1.0),
            ]);
        }
        let mid = 0.5 * (1.0 - 1.0 / beta);
        required.push((mid, mid));
        for (x, y) in required {
            if !contains(&pts, x, y) {
                missing.push(format!("({x}, {y}) at beta={beta}"));
            }
        }
    }
    let ok = worst < 1e-12 && missing.is_empty();
    let mut detail = format!("{count} points over 5 betas, max |m_rhs| {worst:.3e}");
    if !missing.is_empty() {
        detail += &format!("; missing {}", missing.join(", "));
    }
    (ok, detail)
}

fn criterion_9() -> Outcome {
    const N: usize = 1000;
    const TOL: f64 = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures: Vec<String> = Vec::new();
    let mut note = |name: &str, ok: bool| {
        if !ok && !failures.iter().any(|f| f == name) {
            failures.push(name.to_string());
        }
    };
    for _ in 0..N {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..=3.0));
        let alpha: f64 = rng.gen_range(-2.0..=2.0);
        let x = sc(a);
        let m = x.max_abs();
        let p = curvature_profile(&x);
        let curv_scale = m * m;

        let b = bracket_factors(&x);
        for i in 0..3 {
            note(
                "B = 4K",
                close_rel(b[i], 4.0 * p.sectional[i], curv_scale, TOL),
            );
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            note(
                "r_i = K_j + K_k",
                close_rel(p.ricci[i], p.sectional[j] + p.sectional[k], curv_scale, TOL),
            );
            note(
                "G_i = -K_i",
                close_rel(p.einstein[i], -p.sectional[i], curv_scale, TOL),
            );
        }

        let lambda: f64 = rng.gen_range(0.1..=3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let lhs = rg2_rhs(&(lambda * x), alpha);
        let rhs = rg2_rhs(&x, lambda * lambda * alpha);
        let lm = (lambda * m).abs().max(m);
        let scale = lm.powi(3) * (1.0 + alpha.abs() * lm * lm) * lambda.abs().max(1.0).powi(3);
        for i in 0..3 {
            note(
                "scaling law",
                close_rel(lhs[i], lambda.powi(3) * rhs[i], scale, TOL),
            );
        }

        let f = rg2_rhs(&x, alpha);
        let f_scale = m.powi(3) * (1.0 + alpha.abs() * m * m);
        let neg = rg2_rhs(&-x, alpha);
        for i in 0..3 {
            note(
                "negation equivariance",
                close_rel(neg[i], -f[i], f_scale, TOL),
            );
        }
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
            let fp = rg2_rhs(&x.permuted(perm), alpha);
            for i in 0..3 {
                note(
                    "permutation equivariance",
                    close_rel(fp[i], f[perm[i]], f_scale, TOL),
                );
            }
        }
    }

    let mut samples = 0;
    for n in 0..20 {
        let mut a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..=2.0));
        if n % 4 == 0 {
            a[n % 3] = 0.0;
        }
        let alpha = rng.gen_range(-0.5..=0.5);
        let start = sc(a);
        let class = start.classify();
        let traj = integrate_bracket(start, &FlowParameters::rg2(alpha, 0.2)).unwrap();
        samples += traj.samples.len();
        for s in &traj.samples {
            note("class constancy", s.constants().classify() == class);
        }
    }

    if failures.is_empty() {
        (
            true,
            format!(
                "{N} samples per identity, 20 trajectories ({samples} samples) keep their class"
            ),
        )
    } else {
        (false, format!("failed: {}", failures.join(", ")))
    }
}

fn criterion_10() -> Outcome {
    let flat = sc([1.0, 1.0, 0.0]);
    let row5 = sc([-1.5, 0.0, 0.5]);
    let min_factor = curvature_profile(&row5)
        .sectional
        .iter()
        .map(|k| 1.0 + k)
        .fold(f64::INFINITY, f64::min);
    let verified = residual(&flat, 1.0) < 1e-12 && residual(&row5, 1.0) < 1e-12;
    let ok = verified
        && parabolic(&flat, 1.0)
        && !parabolic(&row5, 1.0)
        && (min_factor + 1.0).abs() < 1e-12;
    (
        ok,
        format!(
            "flat parabolic {}, row 5 parabolic {} with min 1+alpha*K = {min_factor}",
            parabolic(&flat, 1.0),
            parabolic(&row5, 1.0)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 13] = [
        ("1", "published fixed points that verify", criterion_1),
        ("2", "paper-check audit and braces factors", criterion_2),
        ("3a", "analytic soliton set at alpha=1", || exact_set(1.0)),
        ("3b", "analytic soliton set at alpha=-1", || exact_set(-1.0)),
        (
            "3c",
            "residual of every listed soliton < 1e-12",
            criterion_3c,
        ),
        (
            "3d",
            "newton sweep on [-4,4]^3 finds nothing new",
            criterion_3d,
        ),
        ("4", "curvature of (-1.5, 0, 0.5)", criterion_4),
        ("5", "closed-form curvature vs Koszul oracle", criterion_5),
        ("6", "bracket flow vs metric flow", criterion_6),
        ("7", "closed-form Ricci trajectories", criterion_7),
        ("8", "normalized fixed-point catalog", criterion_8),
        ("9", "property suite", criterion_9),
        ("10", "parabolicity of verified rows", criterion_10),
    ];
    let mut all = true;
    let mut criterion3 = true;
    for (id, name, f) in criteria {
        let (ok, detail) = f();
        all &= ok;
        if id.starts_with('3') {
            criterion3 &= ok;
        }
        println!(
            "{} criterion {id:<3} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if id == "3d" {
            println!(
                "{} criterion 3   corrected soliton set (3a-3d)",
                if criterion3 { "PASS" } else { "FAIL" }
            );
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
