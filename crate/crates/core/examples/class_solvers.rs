//! Runs every class solver on a few random instances and shows which accept them.

use csppat::generators::{propose_instance, SeededRng, Shape};
use csppat::solvers::{solve_with_class, SolveOutcome, SolverClass};

fn main() {
    let mut rng = SeededRng::new(5);
    for i in 0..5 {
        let p = propose_instance(&mut rng, Shape { max_vars: 6, max_domain: 3 });
        println!("instance {i}: {} vars, {} disallowed pairs", p.num_vars(), p.num_disallowed());
        for class in SolverClass::ALL {
            let (used, out) = solve_with_class(&p, class).unwrap();
            let verdict = match out {
                SolveOutcome::Solution(s) => format!("solution {:?}", s.to_vec().unwrap()),
                SolveOutcome::Unsatisfiable => "unsatisfiable".into(),
                SolveOutcome::NotInClass(w) => format!("outside class ({})", w.name),
            };
            println!("  {class:>9} -> {used}: {verdict}");
        }
    }
}
