//! The clique family P_n forbids Pivot(1); the solver eliminates middle variables of negtrans
//! occurrences one at a time and checks the class after each step.

use csppat::catalog;
use csppat::generators::gen_pn_family;
use csppat::occurrence::occurs_in_instance;
use csppat::solvers::{solve_pivot1_with, SolveOptions, SolveOutcome};

fn main() {
    let opts = SolveOptions { audit_eliminations: true, ..SolveOptions::default() };
    let pivot = catalog::pivot(1).unwrap();
    for n in 3..=12 {
        let p = gen_pn_family(n).unwrap();
        assert!(occurs_in_instance(&pivot, &p).unwrap().is_none());
        match solve_pivot1_with(&p, &opts).unwrap() {
            SolveOutcome::Solution(s) => println!("P_{n}: {:?}", s.to_vec().unwrap()),
            other => println!("P_{n}: {other:?}"),
        }
    }
}
