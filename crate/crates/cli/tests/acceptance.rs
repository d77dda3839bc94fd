//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p centdian-cli --test acceptance`.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use centdian_cli::generate::{generate_instance, GenParams};
use centdian_cli::run_command;
use centdian_core::approx::{
    apx_cdp, apx_pdp, build_neighborhoods, cardinality_bound, greedy_set_cover, SetCoverInstance,
};
use centdian_core::exact::{solve_cdp_exact, solve_pdp_exact, DEFAULT_CAP};
use centdian_core::graph::{metric_closure, DistanceMatrix, Edge, Graph};
use centdian_core::models::{
    assignment_objective, build_lp_relaxation, optimal_assignment, solve_relaxation, y_index, CdpInstance,
    FractionalSolution, PdpInstance,
};
use centdian_core::reduction::verify_equivalence;
use centdian_core::simplex::{solve_lp, LpModel, LpStatus, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPSILONS: [f64; 3] = [0.25, 0.5, 1.0];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Relaxed {
    label: String,
    dm: DistanceMatrix,
    p: usize,
    opt: f64,
    frac: FractionalSolution,
}

/// gnp and euclidean instances for n in 5..=12 and p in 1..=3, three seeds each.
fn corpus() -> Vec<Relaxed> {
    let kinds =
        [GenParams::Gnp { prob: 0.3, min_weight: 1, max_weight: 20 }, GenParams::Euclidean { grid: 50 }];
    let mut out = Vec::new();
    for params in kinds {
        for n in 5..=12usize {
            for seed in 0..3u64 {
                let g = generate_instance(n, params, 1000 * n as u64 + seed).unwrap();
                let dm = metric_closure(&g).unwrap();
                for p in 1..=3usize {
                    let inst = PdpInstance::new(&dm, p).unwrap();
                    let opt = solve_pdp_exact(&inst, DEFAULT_CAP).unwrap().evaluation.centdian();
                    let frac = solve_relaxation(&inst).unwrap();
                    let label = format!("{} n={n} seed={seed} p={p}", params.kind());
                    out.push(Relaxed { label, dm: dm.clone(), p, opt, frac });
                }
            }
        }
    }
    out
}

fn bicriteria(corpus: &[Relaxed]) -> Outcome {
    let mut trials = 0;
    let mut worst: f64 = 0.0;
    for r in corpus {
        let inst = PdpInstance::new(&r.dm, r.p).unwrap();
        let n = r.dm.n();
        for eps in EPSILONS {
            let a = apx_pdp(&inst, eps).map_err(|e| format!("{}: {e}", r.label))?;
            trials += 1;
            let value = a.evaluation.centdian();
            if value > (1.0 + eps) * r.opt + 1e-6 {
                return Err(format!("{} eps={eps}: centdian {value} vs OPT {}", r.label, r.opt));
            }
            let size_bound = (n as f64).min(cardinality_bound(n, r.p, eps));
            if a.solution.len() as f64 > size_bound {
                return Err(format!("{} eps={eps}: {} facilities > {size_bound}", r.label, a.solution.len()));
            }
            if r.opt > 0.0 {
                worst = worst.max(value / r.opt);
            }
        }
    }
    Ok(format!("{trials} trials, worst ratio {worst:.4}"))
}

fn lp_lower_bound(corpus: &[Relaxed]) -> Outcome {
    let mut gap: f64 = 0.0;
    for r in corpus {
        if r.frac.objective > r.opt + 1e-6 {
            return Err(format!("{}: LP {} > OPT {}", r.label, r.frac.objective, r.opt));
        }
        if r.opt > 0.0 {
            gap = gap.max(1.0 - r.frac.objective / r.opt);
        }
    }
    Ok(format!("{} relaxations, largest relative gap {gap:.4}", corpus.len()))
}

fn assignment_optimality(corpus: &[Relaxed]) -> Outcome {
    for r in corpus {
        let n = r.dm.n();
        let (x, c) = optimal_assignment(&r.dm, &r.frac.y, r.p).map_err(|e| format!("{}: {e}", r.label))?;
        let mut pinned = build_lp_relaxation(&PdpInstance::new(&r.dm, r.p).unwrap());
        for (j, &yj) in r.frac.y.iter().enumerate() {
            pinned.bounds[y_index(n, j)] = (yj, yj);
        }
        let fixed = solve_lp(&pinned).map_err(|e| format!("{}: {e}", r.label))?;
        if fixed.status != LpStatus::Optimal {
            return Err(format!("{}: pinned LP {:?}", r.label, fixed.status));
        }
        let ours = assignment_objective(&r.dm, &x, c);
        if ours > fixed.objective_value + 1e-6 {
            return Err(format!("{}: assignment {ours} > pinned LP {}", r.label, fixed.objective_value));
        }
    }
    Ok(format!("{} pinned relaxations", corpus.len()))
}

fn neighborhood_mass(corpus: &[Relaxed]) -> Outcome {
    let mut slack = f64::INFINITY;
    let mut checks = 0;
    for r in corpus {
        for eps in EPSILONS {
            let hoods = build_neighborhoods(&r.frac, &r.dm, eps).map_err(|e| format!("{}: {e}", r.label))?;
            let mass = hoods.min_mass(&r.frac.y);
            let threshold = eps / (1.0 + eps);
            checks += 1;
            if mass <= threshold - 1e-9 {
                return Err(format!("{} eps={eps}: mass {mass} <= {threshold}", r.label));
            }
            slack = slack.min(mass - threshold);
        }
    }
    Ok(format!("{checks} neighborhood systems, smallest margin {slack:.4}"))
}

fn converse(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = 0;
    for t in 0..120u64 {
        let n = rng.random_range(5..=10usize);
        let params = if t % 2 == 0 {
            GenParams::Gnp { prob: 0.35, min_weight: 1, max_weight: 20 }
        } else {
            GenParams::Euclidean { grid: 40 }
        };
        let g = generate_instance(n, params, rng.random()).unwrap();
        let dm = metric_closure(&g).unwrap();
        let single = solve_pdp_exact(&PdpInstance::new(&dm, 1).unwrap(), DEFAULT_CAP).unwrap();
        let budget = single.evaluation.centdian() * rng.random_range(0.5..=2.0);
        let eps = EPSILONS[(t % 3) as usize];
        let inst = CdpInstance::new(&dm, budget).unwrap();
        let k_star = solve_cdp_exact(&inst, DEFAULT_CAP).unwrap().solution.len();
        let a = apx_cdp(&inst, eps).map_err(|e| format!("trial {t}: {e}"))?;
        trials += 1;
        let value = a.evaluation.centdian();
        if value > (1.0 + eps) * budget + 1e-6 {
            return Err(format!("trial {t}: centdian {value} > (1+{eps}) * {budget}"));
        }
        let size_bound = (n as f64).min(cardinality_bound(n, k_star, eps));
        if a.solution.len() as f64 > size_bound {
            return Err(format!("trial {t}: {} facilities > {size_bound} (k* = {k_star})", a.solution.len()));
        }
    }
    Ok(format!("{trials} budgets"))
}

fn graph_from_mask(n: usize, mask: u32) -> Option<Graph> {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask & (1 << bit) != 0 {
                edges.push(Edge::new(u, v, 1.0));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).ok()
}

fn reduction(seed: u64) -> Outcome {
    let mut calls = 0;
    let mut graphs = 0;
    for n in 2..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u32 << pairs) {
            let Some(g) = graph_from_mask(n, mask) else { continue };
            graphs += 1;
            for kappa in 1..n {
                calls += 1;
                if !verify_equivalence(&g, kappa).map_err(|e| e.to_string())? {
                    return Err(format!("n={n} edge mask {mask:#x} kappa={kappa}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = 0;
    while sampled < 500 {
        let mask = rng.random_range(0..(1u32 << 21));
        let Some(g) = graph_from_mask(7, mask) else { continue };
        sampled += 1;
        for kappa in 1..7 {
            calls += 1;
            if !verify_equivalence(&g, kappa).map_err(|e| e.to_string())? {
                return Err(format!("n=7 edge mask {mask:#x} kappa={kappa}"));
            }
        }
    }
    Ok(format!("{graphs} labeled graphs with n <= 6, {sampled} at n = 7, {calls} checks"))
}

fn set_cover(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut systems = 0;
    let mut worst: f64 = 0.0;
    while systems < 250 {
        let universe = rng.random_range(1..=12usize);
        let m = rng.random_range(1..=12usize);
        let mut sets: Vec<Vec<usize>> =
            (0..m).map(|_| (0..universe).filter(|_| rng.random_bool(0.3)).collect()).collect();
        for e in 0..universe {
            if !sets.iter().any(|s| s.contains(&e)) {
                let k = rng.random_range(0..m);
                sets[k].push(e);
                sets[k].sort_unstable();
            }
        }
        let sc = SetCoverInstance { universe_size: universe, sets: sets.into_iter().enumerate().collect() };
        let greedy = greedy_set_cover(&sc).map_err(|e| e.to_string())?.chosen;
        let covers = |mask: u32| {
            (0..universe).all(|e| (0..m).any(|k| mask & (1 << k) != 0 && sc.sets[k].1.contains(&e)))
        };
        if !covers(greedy.iter().fold(0u32, |acc, &k| acc | (1 << k))) {
            return Err(format!("greedy output {greedy:?} is not a cover"));
        }
        let optimum = (1u32..(1 << m)).filter(|&mask| covers(mask)).map(u32::count_ones).min().unwrap();
        let allowed = ((universe as f64).ln() + 1.0) * optimum as f64;
        if greedy.len() as f64 > allowed {
            return Err(format!("greedy {} > {allowed} (optimum {optimum}, |U| = {universe})", greedy.len()));
        }
        worst = worst.max(greedy.len() as f64 / optimum as f64);
        systems += 1;
    }
    Ok(format!("{systems} set systems, worst greedy/optimum {worst:.3}"))
}

enum Expect {
    Optimal(f64),
    Infeasible,
    Unbounded,
}

fn lp(nv: usize, objective: &[f64], rows: &[(&[f64], Relation, f64)]) -> LpModel {
    let mut m = LpModel::new(nv);
    m.objective = objective.to_vec();
    for (coefs, rel, rhs) in rows {
        let terms = coefs.iter().copied().enumerate().filter(|&(_, a)| a != 0.0).collect();
        m.add_constraint(terms, *rel, *rhs);
    }
    m
}

fn hand_built_lps() -> Vec<(&'static str, LpModel, Expect)> {
    use Relation::{Eq, Ge, Le};
    let inf = f64::INFINITY;
    let mut cases = Vec::new();

    let mut m = lp(2, &[-1.0, -1.0], &[(&[1.0, 1.0], Le, 4.0)]);
    m.bounds = vec![(0.0, 3.0), (0.0, 3.0)];
    cases.push(("box with budget row", m, Expect::Optimal(-4.0)));
    cases.push((
        "two covering rows",
        lp(2, &[1.0, 1.0], &[(&[1.0, 2.0], Ge, 4.0), (&[3.0, 1.0], Ge, 6.0)]),
        Expect::Optimal(2.8),
    ));
    cases.push((
        "contradictory rows",
        lp(2, &[1.0, 0.0], &[(&[1.0, 1.0], Le, 1.0), (&[1.0, 1.0], Ge, 2.0)]),
        Expect::Infeasible,
    ));
    cases.push(("open ray", lp(2, &[-1.0, 0.0], &[(&[1.0, -1.0], Le, 1.0)]), Expect::Unbounded));
    let mut m = lp(2, &[2.0, 3.0], &[(&[1.0, 1.0], Eq, 5.0)]);
    m.bounds[0] = (0.0, 3.0);
    cases.push(("equality with upper bound", m, Expect::Optimal(12.0)));
    cases.push((
        "cycling-prone degenerate system",
        lp(
            4,
            &[-0.75, 20.0, -0.5, 6.0],
            &[
                (&[0.25, -8.0, -1.0, 9.0], Le, 0.0),
                (&[0.5, -12.0, -0.5, 3.0], Le, 0.0),
                (&[0.0, 0.0, 1.0, 0.0], Le, 1.0),
            ],
        ),
        Expect::Optimal(-1.25),
    ));
    cases.push((
        "degenerate corner",
        lp(2, &[-1.0, -1.0], &[(&[1.0, 0.0], Le, 1.0), (&[0.0, 1.0], Le, 1.0), (&[1.0, 1.0], Le, 2.0)]),
        Expect::Optimal(-2.0),
    ));
    let mut m = lp(1, &[1.0], &[]);
    m.bounds = vec![(-3.0, 5.0)];
    cases.push(("negative lower bound", m, Expect::Optimal(-3.0)));
    let mut m = lp(1, &[1.0], &[(&[1.0], Ge, -7.0)]);
    m.bounds = vec![(-inf, inf)];
    cases.push(("free variable held by a row", m, Expect::Optimal(-7.0)));
    let mut m = lp(1, &[1.0], &[(&[1.0], Ge, 2.0)]);
    m.bounds = vec![(0.0, 1.0)];
    cases.push(("row beyond the box", m, Expect::Infeasible));
    let mut m = lp(2, &[1.0, 0.0], &[(&[0.0, 1.0], Le, 1.0)]);
    m.bounds[0] = (-inf, inf);
    cases.push(("free variable without rows", m, Expect::Unbounded));
    cases.push(("zero objective", lp(2, &[0.0, 0.0], &[(&[1.0, 1.0], Eq, 3.0)]), Expect::Optimal(0.0)));
    cases.push((
        "redundant equalities",
        lp(2, &[1.0, -1.0], &[(&[1.0, 1.0], Eq, 2.0), (&[2.0, 2.0], Eq, 4.0)]),
        Expect::Optimal(-2.0),
    ));
    cases.push((
        "balanced transportation",
        lp(
            4,
            &[1.0, 3.0, 2.0, 1.0],
            &[
                (&[1.0, 1.0, 0.0, 0.0], Eq, 20.0),
                (&[0.0, 0.0, 1.0, 1.0], Eq, 30.0),
                (&[1.0, 0.0, 1.0, 0.0], Eq, 25.0),
                (&[0.0, 1.0, 0.0, 1.0], Eq, 25.0),
            ],
        ),
        Expect::Optimal(55.0),
    ));
    cases.push((
        "covering with vertex optimum on an axis",
        lp(2, &[3.0, 2.0], &[(&[1.0, 1.0], Ge, 4.0), (&[1.0, 3.0], Ge, 6.0)]),
        Expect::Optimal(8.0),
    ));
    cases.push((
        "product mix",
        lp(2, &[-3.0, -5.0], &[(&[1.0, 0.0], Le, 4.0), (&[0.0, 2.0], Le, 12.0), (&[3.0, 2.0], Le, 18.0)]),
        Expect::Optimal(-36.0),
    ));
    cases.push((
        "odd cycle packing",
        lp(
            3,
            &[-1.0, -1.0, -1.0],
            &[(&[1.0, 1.0, 0.0], Le, 1.0), (&[0.0, 1.0, 1.0], Le, 1.0), (&[1.0, 0.0, 1.0], Le, 1.0)],
        ),
        Expect::Optimal(-1.5),
    ));
    cases.push((
        "negative right-hand sides",
        lp(2, &[1.0, 1.0], &[(&[-1.0, -1.0], Ge, -10.0), (&[1.0, -1.0], Ge, -2.0)]),
        Expect::Optimal(0.0),
    ));
    cases.push((
        "inconsistent equalities",
        lp(2, &[1.0, 1.0], &[(&[1.0, 1.0], Eq, 1.0), (&[1.0, 1.0], Eq, 3.0)]),
        Expect::Infeasible,
    ));
    let mut m = lp(3, &[-10.0, -6.0, -4.0], &[(&[1.0, 1.0, 1.0], Le, 1.5)]);
    m.bounds = vec![(0.0, 1.0); 3];
    cases.push(("fractional knapsack", m, Expect::Optimal(-13.0)));
    cases.push((
        "degenerate origin",
        lp(2, &[-1.0, 0.0], &[(&[1.0, -1.0], Le, 0.0), (&[0.0, 1.0], Le, 0.0)]),
        Expect::Optimal(0.0),
    ));
    let mut m = lp(2, &[1.0, 1.0], &[(&[1.0, -1.0], Eq, -3.0)]);
    m.bounds = vec![(0.0, 10.0); 2];
    cases.push(("equality with negative right-hand side", m, Expect::Optimal(3.0)));
    cases.push((
        "unbounded along an equality",
        lp(2, &[-1.0, -1.0], &[(&[1.0, -1.0], Eq, 1.0)]),
        Expect::Unbounded,
    ));
    cases.push((
        "Klee-Minty cube",
        lp(
            3,
            &[-100.0, -10.0, -1.0],
            &[
                (&[1.0, 0.0, 0.0], Le, 1.0),
                (&[20.0, 1.0, 0.0], Le, 100.0),
                (&[200.0, 20.0, 1.0], Le, 10000.0),
            ],
        ),
        Expect::Optimal(-10000.0),
    ));
    cases
}

fn simplex(corpus: &[Relaxed]) -> Outcome {
    let cases = hand_built_lps();
    let count = cases.len();
    for (name, model, expect) in cases {
        let sol = solve_lp(&model).map_err(|e| format!("{name}: {e}"))?;
        match expect {
            Expect::Optimal(v) => {
                if sol.status != LpStatus::Optimal || (sol.objective_value - v).abs() > 1e-6 {
                    return Err(format!("{name}: {:?} {} (want {v})", sol.status, sol.objective_value));
                }
                if model.max_constraint_violation(&sol.values) > 1e-7
                    || model.max_bound_violation(&sol.values) > 1e-7
                {
                    return Err(format!("{name}: returned point is infeasible"));
                }
            }
            Expect::Infeasible if sol.status != LpStatus::Infeasible => {
                return Err(format!("{name}: {:?}, want infeasible", sol.status));
            }
            Expect::Unbounded if sol.status != LpStatus::Unbounded => {
                return Err(format!("{name}: {:?}, want unbounded", sol.status));
            }
            _ => {}
        }
    }
    let mut worst: f64 = 0.0;
    for r in corpus {
        let model = build_lp_relaxation(&PdpInstance::new(&r.dm, r.p).unwrap());
        let mut values = r.frac.x.clone();
        values.extend_from_slice(&r.frac.y);
        values.push(r.frac.c);
        if values.len() != model.num_vars {
            return Err(format!("{}: {} values for {} variables", r.label, values.len(), model.num_vars));
        }
        let residual = model.max_constraint_violation(&values).max(model.max_bound_violation(&values));
        if residual > 1e-7 {
            return Err(format!("{}: residual {residual}", r.label));
        }
        r.frac.check(&r.dm, r.p).map_err(|e| format!("{}: {e}", r.label))?;
        worst = worst.max(residual);
    }
    Ok(format!("{count} hand-built LPs, {} relaxation residuals (max {worst:.1e})", corpus.len()))
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let run = |args: &[&str]| {
        let mut argv = vec!["centdian"];
        argv.extend_from_slice(args);
        run_command(argv)
    };
    let mut compared = 0;
    let mut check = |args: &[&str]| -> Result<(), String> {
        let a = run(args);
        let b = run(args);
        if a.code != 0 {
            return Err(format!("{args:?} exited {}: {}", a.code, a.stderr));
        }
        if a != b {
            return Err(format!("{args:?} differs between runs"));
        }
        compared += 1;
        Ok(())
    };
    for (kind, seed) in [("gnp", "11"), ("euclidean", "12"), ("gnp", "13")] {
        let path = dir.path().join(format!("{kind}{seed}.txt"));
        let f = path.to_str().unwrap();
        check(&["gen", "--kind", kind, "--n", "9", "--seed", seed])?;
        let gen = run(&["gen", "--kind", kind, "--n", "9", "--seed", seed]);
        fs::write(&path, gen.stdout).map_err(|e| e.to_string())?;
        check(&["solve", "pdp-exact", "--input", f, "--p", "3"])?;
        check(&["solve", "pdp-apx", "--input", f, "--p", "2", "--epsilon", "0.25"])?;
        check(&["solve", "pdp-apx", "--input", f, "--p", "3", "--format", "text"])?;
        let single = run(&["solve", "pdp-exact", "--input", f, "--p", "1"]);
        let v: serde_json::Value = serde_json::from_str(&single.stdout).map_err(|e| e.to_string())?;
        let budget = (v["centdian"].as_f64().unwrap() * 0.8).to_string();
        check(&["solve", "cdp-exact", "--input", f, "--budget", &budget])?;
        check(&["solve", "cdp-apx", "--input", f, "--budget", &budget, "--epsilon", "0.5"])?;
        check(&["export", "ilp", "--input", f, "--p", "2"])?;
        check(&["reduce", "dsp", "--input", f, "--kappa", "3", "--verify"])?;
    }
    check(&["bench", "--seed", "7", "--trials", "24", "--format", "json"])?;
    check(&["bench", "--seed", "7", "--trials", "24"])?;
    let par = run(&["bench", "--seed", "9", "--trials", "24", "--format", "json"]);
    let seq = run(&["bench", "--seed", "9", "--trials", "24", "--format", "json", "--sequential"]);
    if par != seq {
        return Err("parallel bench differs from sequential bench".into());
    }
    Ok(format!("{} command pairs byte-identical, parallel bench equals sequential", compared + 1))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let corpus_time = start.elapsed();
    let criteria: Vec<Criterion> = vec![
        ("bicriteria rounding", Box::new(|| bicriteria(&corpus))),
        ("relaxation lower bound", Box::new(|| lp_lower_bound(&corpus))),
        ("optimal fractional assignment", Box::new(|| assignment_optimality(&corpus))),
        ("neighborhood mass", Box::new(|| neighborhood_mass(&corpus))),
        ("converse rounding", Box::new(|| converse(0xC0FFEE))),
        ("dominating-set equivalence", Box::new(|| reduction(77))),
        ("greedy set cover ratio", Box::new(|| set_cover(5))),
        ("simplex correctness", Box::new(|| simplex(&corpus))),
        ("determinism", Box::new(determinism)),
    ];
    println!("corpus: {} relaxed instances in {:.1?}", corpus.len(), corpus_time);
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS [{}] {name}: {summary} ({secs:.2}s)", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name}: {reason} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
