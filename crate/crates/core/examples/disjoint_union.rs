//! Instances forbidding two disjoint copies of a pattern: fix the variables of one copy, then
//! the rest forbids the pattern and a class solver applies.

use csppat::catalog;
use csppat::generators::{sample_forbidding, SeededRng, Shape};
use csppat::solvers::{solve_backtracking, solve_disjoint_union, solve_pivot1};

fn main() {
    let chi = catalog::negtrans().neg();
    let union = chi.disjoint_union(&chi).unwrap();
    let mut rng = SeededRng::new(11);
    for i in 0..5 {
        let p = sample_forbidding(&mut rng, Shape { max_vars: 7, max_domain: 3 }, std::slice::from_ref(&union), None, 10_000)
            .unwrap();
        let out = solve_disjoint_union(&p, &chi, &solve_pivot1, &chi, &solve_pivot1).unwrap();
        println!(
            "instance {i}: {} vars, union solver {}, backtracking {}",
            p.num_vars(),
            out.is_solution(),
            solve_backtracking(&p).is_solution()
        );
    }
}
