//! AllDifferent with unary restrictions has no Negtrans occurrence, so the matching-based
//! solver handles it in polynomial time. Prints one timing line per size.

use std::time::Instant;

use csppat::generators::{gen_alldiff_unary, SeededRng};
use csppat::model::Value;
use csppat::solvers::{solve_negtrans, SolveOutcome};

fn main() {
    let mut rng = SeededRng::new(1);
    for n in [25, 50, 100, 200] {
        let domains: Vec<Vec<Value>> = (0..n)
            .map(|_| (0..n as Value).filter(|_| rng.chance(0.5)).collect())
            .collect();
        let p = gen_alldiff_unary(n, &domains).unwrap();
        let start = Instant::now();
        let out = solve_negtrans(&p).unwrap();
        let verdict = match out {
            SolveOutcome::Solution(_) => "satisfiable",
            SolveOutcome::Unsatisfiable => "unsatisfiable",
            SolveOutcome::NotInClass(_) => "not in class",
        };
        println!("n={n} d={n} {verdict} in {:.3}s", start.elapsed().as_secs_f64());
    }
}
