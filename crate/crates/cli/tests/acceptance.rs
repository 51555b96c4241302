//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use bspline_burgers::basis::{
    cubic_deriv1, cubic_deriv2, cubic_eval, quad_deriv, quad_eval, SpaceStencil, TimeStencil,
};
use bspline_burgers::linsys::{condense_and_solve, thomas_solve, TridiagonalSystem};
use bspline_burgers::metrics::{l2_norm, linf_norm};
use bspline_burgers::stepper::{assemble_step, initial_state};
use bspline_burgers::{
    make_problem, CoefficientVector, InitStrategy, InnerUpdate, L2Weighting, Mode, ProblemKind,
    ProblemSpec, Solver, SolverConfig, UniformGrid,
};
use bspline_burgers_cli::{execute, run_experiment, RunArgs, RunManifest, Settings};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CONFIGS: [(Mode, InitStrategy); 4] = [
    (Mode::Summed, InitStrategy::PdeDerivative),
    (Mode::Summed, InitStrategy::Symmetric),
    (Mode::Direct, InitStrategy::PdeDerivative),
    (Mode::Direct, InitStrategy::Symmetric),
];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

fn within_fraction(value: f64, target: f64, fraction: f64) -> bool {
    (value - target).abs() <= fraction * target
}

fn out_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR"))
        .join("acceptance")
        .join(name)
}

fn manifest(
    problem: &str,
    nu: f64,
    h: f64,
    t_end: f64,
    mode: Mode,
    init: InitStrategy,
    out: PathBuf,
) -> RunManifest {
    Settings::load(&RunArgs {
        problem: Some(problem.into()),
        nu: vec![nu],
        h: vec![h],
        t_end: Some(t_end),
        mode: Some(mode.to_string()),
        init: Some(init.to_string()),
        out: Some(out),
        ..Default::default()
    })
    .and_then(|s| s.into_manifest())
    .expect("valid manifest")
}

fn timed(limit: Duration, elapsed: Duration, v: Verdict) -> Verdict {
    let ok = elapsed <= limit;
    verdict(
        v.pass && ok,
        format!(
            "{}; runtime {:.3} s (limit {} s)",
            v.detail,
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ),
    )
}

fn basis_tables() -> Verdict {
    let h = 2f64.powi(-6);
    let g = UniformGrid::new(0.0, h, 64).unwrap();
    let mut ok = SpaceStencil::from_basis(&g)
        == SpaceStencil {
            value: [1.0, 4.0, 1.0],
            d1: [-3.0 / h, 0.0, 3.0 / h],
            d2: [6.0 / (h * h), -12.0 / (h * h), 6.0 / (h * h)],
        };
    ok &= TimeStencil::from_basis(&g)
        == TimeStencil {
            value: [1.0, 1.0],
            d1: [-2.0 / h, 2.0 / h],
        };
    for i in 0..=64isize {
        let x = |k: isize| g.node(i + k);
        ok &= [
            quad_eval(i, x(-1), &g),
            quad_eval(i, x(0), &g),
            quad_eval(i, x(1), &g),
            quad_eval(i, x(2), &g),
        ] == [0.0, 1.0, 1.0, 0.0];
        ok &= quad_deriv(i, x(0), &g) == 2.0 / h && quad_deriv(i, x(1), &g) == -2.0 / h;
        ok &= [
            cubic_eval(i, x(-1), &g),
            cubic_eval(i, x(0), &g),
            cubic_eval(i, x(1), &g),
        ] == [1.0, 4.0, 1.0];
        ok &= [
            cubic_deriv1(i, x(-1), &g),
            cubic_deriv1(i, x(0), &g),
            cubic_deriv1(i, x(1), &g),
        ] == [3.0 / h, 0.0, -3.0 / h];
        ok &= [
            cubic_deriv2(i, x(-1), &g),
            cubic_deriv2(i, x(0), &g),
            cubic_deriv2(i, x(1), &g),
        ] == [6.0 / (h * h), -12.0 / (h * h), 6.0 / (h * h)];
    }
    verdict(
        ok,
        "quadratic (0,1,1,0; ±2/dt) and cubic (1,4,1; ∓3/h; 6,-12,6 /h²) at h = dt = 2^-6",
    )
}

struct ShockResult {
    mode: Mode,
    init: InitStrategy,
    peak: f64,
    linf: f64,
    l2: f64,
    l2_h: f64,
    pass: bool,
}

fn shock_nu_001() -> (Verdict, Vec<ShockResult>) {
    let start = Instant::now();
    let mut results = Vec::new();
    for (mode, init) in CONFIGS {
        let tag = format!("{mode}_{init}");
        let m = manifest(
            "shock",
            0.01,
            0.01,
            3.25,
            mode,
            init,
            out_dir("criterion2").join(&tag),
        );
        let r = match run_experiment(&m) {
            Ok(b) => b.outcomes[0].samples[0].report,
            Err(e) => {
                println!("    {tag}: solver error: {e}");
                continue;
            }
        };
        let peak_ok = within_fraction(r.peak_value, 0.2233, 0.15);
        let linf_ok = within_factor(r.linf, 0.0498, 3.0);
        let l2_ok = within_factor(r.l2_unweighted, 0.0211, 3.0)
            || within_factor(r.l2_h_weighted, 0.0211, 3.0);
        results.push(ShockResult {
            mode,
            init,
            peak: r.peak_value,
            linf: r.linf,
            l2: r.l2_unweighted,
            l2_h: r.l2_h_weighted,
            pass: peak_ok && linf_ok && l2_ok,
        });
    }
    for r in &results {
        println!(
            "    {}/{}: peak {:.4} ({:+.1}%), Linf {:.4e}, L2 {:.4e}, L2(h) {:.4e} -> {}",
            r.mode,
            r.init,
            r.peak,
            100.0 * (r.peak / 0.2233 - 1.0),
            r.linf,
            r.l2,
            r.l2_h,
            if r.pass { "pass" } else { "fail" }
        );
    }
    let passing: Vec<String> = results
        .iter()
        .filter(|r| r.pass)
        .map(|r| format!("{}/{}", r.mode, r.init))
        .collect();
    record_criterion2(&results, &passing);
    let v = verdict(
        !passing.is_empty(),
        if passing.is_empty() {
            "no configuration within ±15% of peak 0.2233, ×3 of Linf 0.0498 and L2 0.0211"
                .to_string()
        } else {
            format!("passing: {}", passing.join(", "))
        },
    );
    // four runs are made; the limit applies to each
    let per_run = start.elapsed() / CONFIGS.len() as u32;
    (timed(Duration::from_secs(5), per_run, v), results)
}

fn record_criterion2(results: &[ShockResult], passing: &[String]) {
    let runs: Vec<serde_json::Value> = results
        .iter()
        .map(|r| {
            serde_json::json!({
                "mode": r.mode.to_string(), "init": r.init.to_string(), "peak": r.peak,
                "linf": r.linf, "l2": r.l2, "l2_h": r.l2_h, "pass": r.pass,
            })
        })
        .collect();
    let doc =
        serde_json::json!({ "criterion": 2, "passing_configurations": passing, "runs": runs });
    let path = out_dir("criterion2").join("acceptance.json");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
}

fn shock_nu_0005() -> Verdict {
    let m = manifest(
        "shock",
        0.005,
        0.01,
        3.25,
        Mode::Summed,
        InitStrategy::PdeDerivative,
        out_dir("criterion3"),
    );
    match execute(&m) {
        Ok(o) => {
            let peak = o.samples[0].report.peak_value;
            verdict(
                within_fraction(peak, 0.2503, 0.20),
                format!(
                    "peak {peak:.4} vs 0.2503 ({:+.1}%, limit ±20%)",
                    100.0 * (peak / 0.2503 - 1.0)
                ),
            )
        }
        Err(e) => verdict(false, format!("solver error: {e}")),
    }
}

fn front_refinement() -> Verdict {
    let start = Instant::now();
    let mut passing = Vec::new();
    for (mode, init) in CONFIGS {
        let mut errs = Vec::new();
        for h in [0.01, 0.005, 0.001] {
            let m = manifest("front", 0.01, h, 1.2, mode, init, out_dir("criterion4"));
            errs.push(
                execute(&m)
                    .map(|o| o.samples[0].report.linf)
                    .unwrap_or(f64::NAN),
            );
        }
        let magnitude = within_factor(errs[0], 0.4875, 3.0);
        let monotone = errs[1] < errs[0] && errs[2] < errs[1];
        println!(
            "    {mode}/{init}: Linf {:.4e} -> {:.4e} -> {:.4e} (x3 of 0.4875: {}, decreasing: {})",
            errs[0], errs[1], errs[2], magnitude, monotone
        );
        if magnitude && monotone {
            passing.push(format!("{mode}/{init}"));
        }
    }
    // diagnostic only: the iterated Picard update is not the default rule and does not decide the verdict
    for mode in [Mode::Summed, Mode::Direct] {
        let mut errs = Vec::new();
        for h in [0.01, 0.005, 0.001] {
            let mut m = manifest(
                "front",
                0.01,
                h,
                1.2,
                mode,
                InitStrategy::PdeDerivative,
                out_dir("criterion4"),
            );
            m.solver.inner_update = InnerUpdate::Picard;
            m.solver.inner_iterations = 10;
            errs.push(
                execute(&m)
                    .map(|o| o.samples[0].report.linf)
                    .unwrap_or(f64::NAN),
            );
        }
        println!(
            "    (picard x10, {mode}/pde-derivative: Linf {:.4e} -> {:.4e} -> {:.4e}; not counted)",
            errs[0], errs[1], errs[2]
        );
    }
    let v = verdict(
        !passing.is_empty(),
        if passing.is_empty() {
            "no configuration is both within ×3 of 0.4875 and strictly decreasing".to_string()
        } else {
            format!("passing: {}", passing.join(", "))
        },
    );
    timed(Duration::from_secs(60), start.elapsed(), v)
}

fn property_suite() -> Verdict {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // partition of unity
    let g = UniformGrid::new(0.0, 0.05, 20).unwrap();
    let mut unity = true;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(0.0..=1.0);
        let (mut c, mut c1, mut c2, mut q, mut q1) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for i in -1..=21 {
            c += cubic_eval(i, x, &g);
            c1 += cubic_deriv1(i, x, &g);
            c2 += cubic_deriv2(i, x, &g);
            q += quad_eval(i, x, &g);
            q1 += quad_deriv(i, x, &g);
        }
        let h = 0.05;
        unity &= (c - 6.0).abs() <= 1e-12 && (c1 * h).abs() <= 1e-12 && (c2 * h * h).abs() <= 1e-12;
        unity &= (q - 2.0).abs() <= 1e-12 && (q1 * h).abs() <= 1e-12;
    }
    check("partition of unity", unity);

    // constant preservation
    let mut constant = true;
    for nu in [0.005, 0.01, 0.1] {
        for h in [0.01, 0.005] {
            let p = ProblemSpec::new(ProblemKind::Constant(1.0), nu).unwrap();
            let cfg = SolverConfig::for_problem(&p, h, h, 100.0 * h);
            let mut s = Solver::new(p, cfg).unwrap();
            while !s.is_finished() {
                constant &=
                    s.step().is_ok() && s.solution().iter().all(|v| (v - 1.0).abs() <= 1e-10);
            }
        }
    }
    check("constant preservation", constant);

    // boundary exactness, summed mode
    let mut boundary = true;
    for (kind, nu, t_end) in [("shock", 0.01, 3.25), ("front", 0.01, 1.2)] {
        let p = make_problem(kind, nu).unwrap();
        let mut s = Solver::new(p, SolverConfig::for_problem(&p, 0.01, 0.01, t_end)).unwrap();
        while !s.is_finished() {
            s.step().unwrap();
            let (t, u) = (s.state().time, s.solution());
            boundary &= (u[0] - p.bc_left(t)).abs() <= 1e-10
                && (u[u.len() - 1] - p.bc_right(t)).abs() <= 1e-10;
        }
    }
    check("boundary exactness", boundary);

    // cubic interpolation
    let grid = UniformGrid::new(0.0, 0.1, 10).unwrap();
    let f = |x: f64| 2.0 * x * x * x - x * x + 0.5 * x - 3.0;
    let df = |x: f64| 6.0 * x * x - 2.0 * x + 0.5;
    let samples: Vec<f64> = grid.nodes().iter().map(|&x| f(x)).collect();
    let fit = CoefficientVector::fit_initial(grid, &samples, df(0.0), df(1.0)).unwrap();
    let cubic = (0..100).all(|_| {
        let x: f64 = rng.gen_range(0.0..=1.0);
        (fit.eval_at(x).unwrap() - f(x)).abs() <= 1e-10
    });
    check("cubic interpolation", cubic);

    // Picard fixed point of one step
    let p = make_problem("shock", 0.01).unwrap();
    let cfg = SolverConfig::for_problem(&p, 0.01, 0.01, 3.25);
    let state = initial_state(&p, &cfg).unwrap();
    let t = cfg.time_at(1);
    let grid = *state.curr.grid();
    let mut lagged = state.curr.clone();
    for _ in 0..100 {
        let (rows, rec) =
            assemble_step(&state, &lagged, &cfg, p.bc_left(t), p.bc_right(t)).unwrap();
        let next = condense_and_solve(&rows, &rec, &grid).unwrap();
        let change = next.max_abs_diff(&lagged);
        lagged = next;
        if change <= 1e-12 {
            break;
        }
    }
    let residual = state
        .curr
        .nodal_all()
        .iter()
        .zip(lagged.nodal_all())
        .skip(1)
        .take(grid.intervals() - 1)
        .map(|(a, b)| {
            (2.0 / cfg.dt * (b.value - a.value) + (a.value + b.value) * (a.d1 + b.d1)
                - cfg.viscosity * (a.d2 + b.d2))
                .abs()
        })
        .fold(0.0, f64::max);
    check("Picard residual", residual <= 1e-10);

    // tridiagonal residuals
    let mut tridiagonal = true;
    for _ in 0..1000 {
        let n = rng.gen_range(1..60);
        let sub: Vec<f64> = (1..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sup: Vec<f64> = (1..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                let off = if i > 0 { sub[i - 1].abs() } else { 0.0 }
                    + if i + 1 < n { sup[i].abs() } else { 0.0 };
                let mag = off + rng.gen_range(0.1..3.0);
                if rng.gen_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let sys = TridiagonalSystem::new(sub, diag, sup, rhs.clone()).unwrap();
        let z = thomas_solve(&sys).unwrap();
        tridiagonal &= sys
            .apply(&z)
            .iter()
            .zip(&rhs)
            .all(|(a, b)| (a - b).abs() <= 1e-12);
    }
    check("tridiagonal residuals", tridiagonal);

    // norm axioms
    let mut norms = true;
    for _ in 0..200 {
        let n = rng.gen_range(1..50);
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let zero = vec![0.0; n];
        let scaled: Vec<f64> = u.iter().map(|a| lambda * a).collect();
        for wt in [L2Weighting::Unweighted, L2Weighting::HWeighted] {
            let l2 = |a: &[f64], b: &[f64]| l2_norm(a, b, 0.1, wt).unwrap();
            norms &= (l2(&scaled, &zero) - lambda.abs() * l2(&u, &zero)).abs() <= 1e-12;
            norms &= l2(&u, &w) <= l2(&u, &v) + l2(&v, &w) + 1e-12;
            norms &= l2(&u, &u) == 0.0 && (u == v || l2(&u, &v) > 0.0);
        }
        let linf = linf_norm(&u, &v).unwrap();
        norms &= (linf_norm(&scaled, &zero).unwrap()
            - lambda.abs() * linf_norm(&u, &zero).unwrap())
        .abs()
            <= 1e-12;
        norms &= linf <= linf_norm(&u, &w).unwrap() + linf_norm(&w, &v).unwrap() + 1e-12;
        norms &= linf <= l2_norm(&u, &v, 0.1, L2Weighting::Unweighted).unwrap() + 1e-15;
    }
    check("norm axioms", norms);

    // exact solutions against the PDE, residual from fourth-order differences
    let mut pde = true;
    for (kind, t0, t1) in [("shock", 1.0, 3.25), ("front", 0.05, 1.2)] {
        let p = make_problem(kind, 0.1).unwrap();
        for _ in 0..100 {
            let x: f64 = rng.gen_range(0.05..0.95);
            let t: f64 = rng.gen_range(t0..t1);
            let e = 1e-3;
            let u = |x: f64, t: f64| p.exact(x, t);
            let d = |g: &dyn Fn(f64) -> f64| {
                (g(-2.0 * e) - 8.0 * g(-e) + 8.0 * g(e) - g(2.0 * e)) / (12.0 * e)
            };
            let ut = d(&|s| u(x, t + s));
            let ux = d(&|s| u(x + s, t));
            let uxx = (-u(x + 2.0 * e, t) + 16.0 * u(x + e, t) - 30.0 * u(x, t)
                + 16.0 * u(x - e, t)
                - u(x - 2.0 * e, t))
                / (12.0 * e * e);
            pde &= (ut + u(x, t) * ux - 0.1 * uxx).abs() <= 1e-6;
        }
    }
    check("PDE residual", pde);

    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "partition of unity, constants, boundaries, cubic fit, Picard residual, tridiagonal, norms, PDE".to_string()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    )
}

fn oracle_cross_validation() -> Verdict {
    let start = Instant::now();
    let mut errs = Vec::new();
    for h in [0.01, 0.005] {
        let mut m = manifest(
            "front",
            0.1,
            h,
            0.5,
            Mode::Summed,
            InitStrategy::PdeDerivative,
            out_dir("criterion6"),
        );
        m.oracle = true;
        match execute(&m) {
            Ok(o) => errs.push((o.samples[0].report.linf, o.oracle[0].report.linf)),
            Err(e) => return verdict(false, format!("solver error: {e}")),
        }
    }
    let (s0, f0) = errs[0];
    let (s1, f1) = errs[1];
    let ratio = s0.max(f0) / s0.min(f0);
    let v = verdict(
        ratio <= 3.0 && s1 < s0 && f1 < f0,
        format!("spline {s0:.3e} -> {s1:.3e}, finite differences {f0:.3e} -> {f1:.3e}, ratio at h = 0.01 {ratio:.2}"),
    );
    timed(Duration::from_secs(5), start.elapsed(), v)
}

fn reproducibility(results: &[ShockResult]) -> Verdict {
    let (mode, init) = results
        .iter()
        .find(|r| r.pass)
        .map(|r| (r.mode, r.init))
        .unwrap_or((Mode::Summed, InitStrategy::PdeDerivative));
    let mut files = Vec::new();
    for k in 0..2 {
        let dir = out_dir("criterion7").join(format!("run{k}"));
        let m = manifest("shock", 0.01, 0.01, 3.25, mode, init, dir.clone());
        if let Err(e) = run_experiment(&m) {
            return verdict(false, format!("solver error: {e}"));
        }
        let read = |name: &str| std::fs::read(dir.join(name)).unwrap();
        files.push((read("profile_t3.25.csv"), read("summary.csv")));
    }
    verdict(
        files[0] == files[1],
        format!("{mode}/{init} shock run twice: profile and summary CSVs compared bytewise"),
    )
}

fn main() {
    let mut all = true;
    let mut report = |n: u32, name: &str, v: Verdict| {
        all &= v.pass;
        println!(
            "{} criterion {n} ({name}): {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    };

    let start = Instant::now();
    let v = basis_tables();
    report(
        1,
        "basis tables",
        timed(Duration::from_secs(1), start.elapsed(), v),
    );
    let (v, shock) = shock_nu_001();
    report(2, "shock, nu = 0.01", v);
    report(3, "shock, nu = 0.005", shock_nu_0005());
    report(4, "front refinement", front_refinement());
    report(5, "property suite", property_suite());
    report(6, "oracle cross-validation", oracle_cross_validation());
    report(7, "reproducibility", reproducibility(&shock));

    if !all {
        std::process::exit(1);
    }
}
