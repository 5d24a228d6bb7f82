use csppat::generators::{gen_3sat_instance, Formula3Sat, SeededRng};
use csppat::model::{is_solution, Assignment};
use csppat::solvers::{solve_backtracking, SolveOutcome};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn reduction_preserves_satisfiability(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4, ell in 1usize..=3) {
        prop_assume!(m * (ell + 1) >= 3);
        let mut rng = SeededRng::new(seed);
        let f = Formula3Sat::random(&mut rng, n, m).unwrap();
        let art = gen_3sat_instance(&f, ell).unwrap();
        prop_assert!(art.instance.constraints().all(|(_, pairs)| pairs.len() == 1));
        match solve_backtracking(&art.instance) {
            SolveOutcome::Solution(s) => prop_assert!(f.evaluate(&art.decode(&s))),
            SolveOutcome::Unsatisfiable => prop_assert!(f.satisfying_assignment().is_none()),
            SolveOutcome::NotInClass(_) => unreachable!("backtracking has no class"),
        }
    }
}

#[test]
fn satisfying_assignments_lift() {
    let f = Formula3Sat::new(3, vec![[1, -2, 3], [-1, 2, -3]]).unwrap();
    let art = gen_3sat_instance(&f, 2).unwrap();
    let values = [true, true, false];
    assert!(f.evaluate(&values));
    // cycles carry the variable, lines carry it forward to the chosen literal
    let mut lifted = vec![None; art.instance.num_vars()];
    for (&(i, _), &v) in &art.cycle_index {
        lifted[v] = Some(u32::from(values[i - 1]));
    }
    let s = solve_backtracking(&art.instance);
    let sol = s.solution().expect("formula is satisfiable");
    assert!(is_solution(&art.instance, sol).unwrap());
    let partial = Assignment::total(lifted.iter().zip(sol.to_vec().unwrap()).map(|(l, x)| l.unwrap_or(x)).collect());
    assert_eq!(art.decode(&partial), values.to_vec());
}

#[test]
fn rejects_degenerate_parameters() {
    let f = Formula3Sat::new(1, vec![[1, 1, 1]]).unwrap();
    assert!(gen_3sat_instance(&f, 0).is_err());
    assert!(gen_3sat_instance(&f, 2).is_ok());
    let empty = Formula3Sat::new(1, vec![]).unwrap();
    assert!(gen_3sat_instance(&empty, 2).is_err());
}
