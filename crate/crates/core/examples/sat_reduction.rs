//! Turns a 3SAT formula into a Boolean instance with one conflict per constraint and reads a
//! satisfying assignment back from a solution.

use csppat::generators::{gen_3sat_instance, Formula3Sat};
use csppat::solvers::{solve_backtracking, SolveOutcome};

fn main() {
    let text = "p cnf 3 3\n1 -2 3 0\n-1 2 0\n-3 -1 2 0\n";
    let f = Formula3Sat::parse_dimacs(text).unwrap();
    let art = gen_3sat_instance(&f, 2).unwrap();
    println!(
        "{} clauses -> {} variables, {} constraints, cycles of length {}",
        f.clauses().len(),
        art.instance.num_vars(),
        art.instance.num_constraints(),
        art.cycle_len
    );
    match solve_backtracking(&art.instance) {
        SolveOutcome::Solution(s) => {
            let values = art.decode(&s);
            println!("decoded {values:?}, formula satisfied: {}", f.evaluate(&values));
        }
        _ => println!("unsatisfiable"),
    }
}
