//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use csppat::analysis::{classify_negative_pattern, enumerate_connected_negative, PatternClassification};
use csppat::catalog::{self, demo};
use csppat::generators::{
    gen_3sat_instance, gen_alldiff_unary, gen_pn_family, propose_instance, random_forest_instance,
    random_max_closed_instance, random_pattern, random_subpattern, sample_forbidding, Formula3Sat, PatternShape,
    SeededRng, Shape,
};
use csppat::model::{is_solution, CspInstance, CspPattern, Value};
use csppat::occurrence::{
    forbids, occurs, occurs_in_instance, verify_instance_occurrence, verify_occurrence, OccurrenceError,
};
use csppat::solvers::{
    solve_backtracking, solve_btp, solve_disjoint_union, solve_max_closed, solve_negtrans, solve_pivot1,
    solve_pivot1_with, solve_simple, solve_tree, SolveError, SolveOptions, SolveOutcome,
};

const C1_PAIRS: usize = 1000;
const C1_MAX_VARS: usize = 4;
const C1_MAX_VALUES: usize = 3;
const C1_BUDGET: Duration = Duration::from_secs(60);

const C2_SAMPLES: usize = 500;
const C2_SHAPE: Shape = Shape { max_vars: 10, max_domain: 4 };
const C2_SIZES: [usize; 4] = [25, 50, 100, 200];
const C2_PER_SOLVE: Duration = Duration::from_secs(5);
const C2_MAX_SLOPE: f64 = 5.0;
const C2_REPEATS: usize = 3;

const C3_SAMPLES: usize = 300;
const C3_SHAPE: Shape = Shape { max_vars: 9, max_domain: 3 };
const C3_PN: std::ops::RangeInclusive<usize> = 3..=12;

const C4_MAX_VARS: usize = 4;
const C4_MAX_VALUES: usize = 2;
const C4_BUDGET: Duration = Duration::from_secs(600);

const C5_FORMULAS: usize = 200;
const C5_MAX_VARS: usize = 5;
const C5_MAX_CLAUSES: usize = 5;
const C5_ELL: usize = 2;
const C5_STRUCTURE_LIMIT: usize = 60;

const C6_PER_SOLVER: usize = 200;
const C6_SHAPE: Shape = Shape { max_vars: 8, max_domain: 4 };
const C6_CLIQUES: std::ops::RangeInclusive<usize> = 3..=8;

const C7_PAIRS: usize = 200;
const C7_INSTANCES_PER_PAIR: usize = 25;

const SAMPLING_CAP: usize = 100_000;

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine_occurs(chi: &CspPattern, tau: &CspPattern) -> Result<bool, String> {
    match occurs(chi, tau) {
        Ok(Some(o)) => {
            verify_occurrence(chi, tau, &o.renaming).map_err(|e| format!("engine witness fails verification: {e}"))?;
            Ok(true)
        }
        Ok(None) | Err(OccurrenceError::IncompatibleContext) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

/// Satisfiability and soundness of a class solver's answer against the backtracking oracle.
fn agrees(p: &CspInstance, out: &SolveOutcome, what: &str) -> Result<(), String> {
    let oracle = solve_backtracking(p).is_solution();
    match out {
        SolveOutcome::Solution(s) => {
            check(is_solution(p, s).unwrap_or(false), || format!("{what}: returned a non-solution"))?;
            check(oracle, || format!("{what}: solved an instance the oracle refutes"))
        }
        SolveOutcome::Unsatisfiable => check(!oracle, || format!("{what}: refuted a satisfiable instance")),
        SolveOutcome::NotInClass(w) => Err(format!("{what}: in-class instance reported outside class by {}", w.name)),
    }
}

fn criterion1() -> Verdict {
    let start = Instant::now();
    let host = demo::host();
    for (name, chi) in [("crossed", demo::crossed()), ("value merge", demo::value_merge()), ("variable merge", demo::variable_merge())] {
        check(engine_occurs(&chi, &host)?, || format!("{name} not found in the host"))?;
    }
    let shape = PatternShape {
        value_neq_density: 0.3,
        value_order_chance: 0.3,
        ..PatternShape::flat(C1_MAX_VARS, C1_MAX_VALUES, 0.3)
    };
    let mut rng = SeededRng::new(101);
    let mut positive = 0;
    for i in 0..C1_PAIRS {
        let tau = random_pattern(&mut rng, shape);
        let chi = if i % 2 == 0 { random_subpattern(&mut rng, &tau) } else { random_pattern(&mut rng, shape) };
        let got = engine_occurs(&chi, &tau)?;
        let want = common::brute_occurs(&chi, &tau);
        check(got == want, || format!("pair {i}: engine {got}, brute force {want}"))?;
        positive += usize::from(got);
    }
    let t = start.elapsed();
    check(t < C1_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("3 demo containments; {C1_PAIRS}/{C1_PAIRS} pairs agree ({positive} occurrences); {:.2}s", t.as_secs_f64()))
}

/// Least-squares slope of `log y` against `log x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn criterion2() -> Verdict {
    let mut rng = SeededRng::new(202);
    let negtrans = [catalog::negtrans()];
    let mut sat = 0;
    for i in 0..C2_SAMPLES {
        let p = sample_forbidding(&mut rng, C2_SHAPE, &negtrans, None, SAMPLING_CAP).map_err(|e| e.to_string())?;
        let out = solve_negtrans(&p).map_err(|e| e.to_string())?;
        agrees(&p, &out, &format!("sample {i}"))?;
        sat += usize::from(out.is_solution());
    }
    let mut points = Vec::new();
    let mut worst = Duration::ZERO;
    for n in C2_SIZES {
        let domains: Vec<Vec<Value>> =
            (0..n).map(|_| (0..n as Value).filter(|_| rng.chance(0.5)).collect()).collect();
        let p = gen_alldiff_unary(n, &domains).map_err(|e| e.to_string())?;
        let mut best = Duration::MAX;
        for _ in 0..C2_REPEATS {
            let start = Instant::now();
            let out = solve_negtrans(&p).map_err(|e| e.to_string())?;
            let t = start.elapsed();
            best = best.min(t);
            worst = worst.max(t);
            check(!matches!(out, SolveOutcome::NotInClass(_)), || format!("AllDifferent n={n} reported outside class"))?;
            if let SolveOutcome::Solution(s) = &out {
                check(is_solution(&p, s).unwrap_or(false), || format!("AllDifferent n={n}: bad solution"))?;
            }
        }
        points.push((n as f64, best.as_secs_f64().max(1e-6)));
    }
    check(worst < C2_PER_SOLVE, || format!("slowest AllDifferent solve {worst:?}"))?;
    let slope = log_log_slope(&points);
    check(slope <= C2_MAX_SLOPE, || format!("log-log slope {slope:.2}"))?;
    let times: Vec<String> = points.iter().map(|(n, t)| format!("n={n}:{:.4}s", t)).collect();
    Ok(format!(
        "{C2_SAMPLES}/{C2_SAMPLES} samples agree ({sat} satisfiable); AllDifferent {}; slope {slope:.2}",
        times.join(" ")
    ))
}

fn criterion3() -> Verdict {
    let mut rng = SeededRng::new(303);
    let pivot1 = [catalog::pivot(1).unwrap()];
    let audit = SolveOptions { audit_eliminations: true, ..SolveOptions::default() };
    let mut sat = 0;
    for i in 0..C3_SAMPLES {
        let p = sample_forbidding(&mut rng, C3_SHAPE, &pivot1, None, SAMPLING_CAP).map_err(|e| e.to_string())?;
        let out = solve_pivot1_with(&p, &audit).map_err(|e| format!("sample {i}: {e}"))?;
        agrees(&p, &out, &format!("sample {i}"))?;
        sat += usize::from(out.is_solution());
    }
    for n in C3_PN {
        let p = gen_pn_family(n).map_err(|e| e.to_string())?;
        let out = solve_pivot1_with(&p, &audit).map_err(|e| format!("P_{n}: {e}"))?;
        agrees(&p, &out, &format!("P_{n}"))?;
    }
    Ok(format!(
        "{C3_SAMPLES}/{C3_SAMPLES} samples agree ({sat} satisfiable); P_3..P_12 agree; eliminations audited"
    ))
}

fn criterion4() -> Verdict {
    let start = Instant::now();
    let patterns = enumerate_connected_negative(C4_MAX_VARS, C4_MAX_VALUES).map_err(|e| e.to_string())?;
    let (mut hard, mut easy, mut both) = (0, 0, 0);
    for (i, chi) in patterns.iter().enumerate() {
        let n = chi.num_vars();
        let closed = chi.with_distinct_closure();
        let mut hardness: Vec<CspPattern> = (2..=n).map(|k| catalog::cycle(k).unwrap()).collect();
        hardness.extend([catalog::valency(), catalog::path(), catalog::valency_path()]);
        let mut contains_hard = false;
        for h in &hardness {
            contains_hard |= engine_occurs(h, &closed)?;
        }
        let embeds = engine_occurs(chi, &catalog::pivot(n).unwrap())?;
        check(contains_hard || embeds, || format!("pattern {i}: neither a hardness pattern nor a pivot embedding"))?;
        both += usize::from(contains_hard && embeds);
        match classify_negative_pattern(chi).map_err(|e| e.to_string())? {
            PatternClassification::Intractable { witness, occurrence } => {
                check(contains_hard, || format!("pattern {i}: classified intractable"))?;
                let h = witness.build().unwrap();
                verify_occurrence(&h, &closed, &occurrence.renaming).map_err(|e| format!("pattern {i}: {e}"))?;
                hard += 1;
            }
            PatternClassification::PivotEmbeddable { r, occurrence } => {
                check(embeds && !contains_hard && r <= n, || format!("pattern {i}: classified pivot-embeddable with r={r}"))?;
                verify_occurrence(chi, &catalog::pivot(r).unwrap(), &occurrence.renaming)
                    .map_err(|e| format!("pattern {i}: {e}"))?;
                easy += 1;
            }
        }
    }
    let t = start.elapsed();
    check(t < C4_BUDGET, || format!("took {t:?}"))?;
    Ok(format!(
        "{} patterns: {hard} intractable, {easy} pivot-embeddable ({both} satisfy both sides), all match direct checks; {:.2}s",
        patterns.len(),
        t.as_secs_f64()
    ))
}

/// Shortest cycle length and the least distance between two variables of valency at least 3
/// in the graph joining variables with a disallowed pair.
fn girth_and_branch_distance(p: &CspInstance) -> (usize, usize) {
    let n = p.num_vars();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| p.neighbours(v)).collect();
    let (mut girth, mut branch) = (usize::MAX, usize::MAX);
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u != s && adj[s].len() >= 3 && adj[u].len() >= 3 {
                branch = branch.min(dist[u]);
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    girth = girth.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (girth, branch)
}

fn criterion5() -> Verdict {
    let mut rng = SeededRng::new(505);
    let (mut sat, mut inspected) = (0, 0);
    let small_hardness: Vec<CspPattern> =
        (2..=C5_ELL).map(|k| catalog::cycle(k).unwrap()).filter(|h| h.num_vars() <= C5_ELL).collect();
    for i in 0..C5_FORMULAS {
        let n = rng.between(1, C5_MAX_VARS);
        let m = rng.between(1, C5_MAX_CLAUSES);
        let f = Formula3Sat::random(&mut rng, n, m).map_err(|e| e.to_string())?;
        let art = gen_3sat_instance(&f, C5_ELL).map_err(|e| e.to_string())?;
        let p = &art.instance;
        check(p.constraints().all(|(_, pairs)| pairs.len() <= 1), || format!("formula {i}: constraint with two disallowed pairs"))?;
        let truth = f.satisfying_assignment().is_some();
        let out = solve_backtracking(p);
        check(out.is_solution() == truth, || format!("formula {i}: instance {}, formula {truth}", out.is_solution()))?;
        if let SolveOutcome::Solution(s) = &out {
            check(f.evaluate(&art.decode(s)), || format!("formula {i}: decoded assignment fails"))?;
        }
        sat += usize::from(truth);
        if p.num_vars() <= C5_STRUCTURE_LIMIT {
            inspected += 1;
            check(forbids(p, &small_hardness).map_err(|e| e.to_string())?, || format!("formula {i}: small cycle occurs"))?;
            let (girth, branch) = girth_and_branch_distance(p);
            check(girth > C5_ELL && branch > C5_ELL, || format!("formula {i}: girth {girth}, branch distance {branch}"))?;
        }
    }
    Ok(format!(
        "{C5_FORMULAS}/{C5_FORMULAS} formulas agree ({sat} satisfiable); {inspected} outputs free of hardness structure within {C5_ELL}"
    ))
}

fn clique(r: usize) -> CspInstance {
    let mut b = CspInstance::builder(vec![vec![0, 1]; r]);
    for u in 0..r {
        for v in u + 1..r {
            b.disallow((u, 0), (v, 0));
        }
    }
    b.build().unwrap()
}

fn natural(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn pivot1_union(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    let chi = catalog::negtrans().neg();
    solve_disjoint_union(p, &chi, &solve_pivot1, &chi, &solve_pivot1)
}

fn criterion6() -> Verdict {
    let mut rng = SeededRng::new(606);
    let err = |e: SolveError| e.to_string();
    let btp = [catalog::btp()];
    let simple = [catalog::simple()];
    let union = [catalog::negtrans().neg().disjoint_union(&catalog::negtrans().neg()).map_err(|e| e.to_string())?];
    let mut report = Vec::new();
    for name in ["tree", "btp", "max-closed", "simple", "disjoint-union"] {
        let mut sat = 0;
        for i in 0..C6_PER_SOLVER {
            let what = format!("{name} instance {i}");
            let sample = |rng: &mut SeededRng, xs: &[CspPattern], order| {
                sample_forbidding(rng, C6_SHAPE, xs, order, SAMPLING_CAP).map_err(|e| format!("{what}: {e}"))
            };
            let (p, out) = match name {
                "tree" => {
                    let p = random_forest_instance(&mut rng, C6_SHAPE);
                    let out = solve_tree(&p).map_err(err)?;
                    (p, out)
                }
                "btp" => {
                    let p = sample(&mut rng, &btp, Some(natural))?;
                    let out = solve_btp(&p, &natural(p.num_vars())).map_err(err)?;
                    (p, out)
                }
                "max-closed" => {
                    let p = random_max_closed_instance(&mut rng, C6_SHAPE);
                    let out = solve_max_closed(&p, None).map_err(err)?;
                    (p, out)
                }
                "simple" => {
                    let p = sample(&mut rng, &simple, None)?;
                    let out = solve_simple(&p).map_err(err)?;
                    (p, out)
                }
                _ => {
                    let p = sample(&mut rng, &union, None)?;
                    let out = pivot1_union(&p).map_err(err)?;
                    (p, out)
                }
            };
            agrees(&p, &out, &what)?;
            sat += usize::from(out.is_solution());
        }
        report.push(format!("{name} {C6_PER_SOLVER}/{C6_PER_SOLVER} ({sat} sat)"));
    }
    for r in C6_CLIQUES {
        let p = clique(r);
        let out = solve_btp(&p, &natural(r)).map_err(err)?;
        check(out.solution().is_some_and(|s| is_solution(&p, s).unwrap_or(false)), || format!("clique r={r}: {out:?}"))?;
    }
    Ok(format!("{}; cliques r=3..8 solved by btp", report.join(", ")))
}

fn criterion7() -> Verdict {
    let mut rng = SeededRng::new(707);
    let shape = PatternShape::flat(3, 2, 0.35);
    let (mut forbidding, mut checked) = (0, 0);
    for i in 0..C7_PAIRS {
        let tau = random_pattern(&mut rng, shape);
        let chi = random_subpattern(&mut rng, &tau);
        check(engine_occurs(&chi, &tau)?, || format!("pair {i}: subpattern does not occur"))?;
        for _ in 0..C7_INSTANCES_PER_PAIR {
            let p = propose_instance(&mut rng, Shape { max_vars: 5, max_domain: 3 });
            checked += 1;
            if occurs_in_instance(&chi, &p).map_err(|e| e.to_string())?.is_none() {
                forbidding += 1;
                if let Some(o) = occurs_in_instance(&tau, &p).map_err(|e| e.to_string())? {
                    verify_instance_occurrence(&tau, &p, None, &o.renaming).map_err(|e| e.to_string())?;
                    return Err(format!("pair {i}: instance forbids the subpattern but not the pattern"));
                }
            }
        }
    }
    Ok(format!("{C7_PAIRS} pairs, {checked} instances, {forbidding} forbid the smaller pattern and all forbid the larger"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("C1 occurrence fidelity", criterion1),
        ("C2 negtrans solver", criterion2),
        ("C3 pivot(1) solver", criterion3),
        ("C4 classifier vs direct occurrence", criterion4),
        ("C5 reduction soundness", criterion5),
        ("C6 class-solver oracle suite", criterion6),
        ("C7 monotonicity", criterion7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
