mod common;

use csppat::catalog;
use csppat::generators::{
    gen_alldiff_unary, gen_pn_family, propose_instance, random_forest_instance, random_max_closed_instance,
    SeededRng, Shape,
};
use csppat::model::{is_solution, CspInstance};
use csppat::occurrence::verify_instance_occurrence;
use csppat::solvers::{
    enforce_arc_consistency, solve_auto, solve_backtracking, solve_btp, solve_disjoint_union, solve_max_closed,
    solve_negtrans, solve_pivot1, solve_pivot1_with, solve_simple, solve_tree, SolveError, SolveOptions,
    SolveOutcome,
};
use proptest::prelude::*;

/// A solver answer is sound: solutions satisfy `p`, verdicts match enumeration and witnesses verify.
fn sound(p: &CspInstance, out: &SolveOutcome) -> Result<bool, TestCaseError> {
    match out {
        SolveOutcome::Solution(s) => {
            prop_assert!(is_solution(p, s).unwrap());
            Ok(true)
        }
        SolveOutcome::Unsatisfiable => {
            prop_assert!(!common::brute_satisfiable(p));
            Ok(true)
        }
        SolveOutcome::NotInClass(w) => {
            prop_assert!(verify_instance_occurrence(&w.pattern, p, w.order.as_deref(), &w.occurrence.renaming).is_ok());
            Ok(false)
        }
    }
}

fn small() -> Shape {
    Shape { max_vars: 6, max_domain: 3 }
}

fn pivot1_union(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    let chi = catalog::negtrans().neg();
    solve_disjoint_union(p, &chi, &solve_pivot1, &chi, &solve_pivot1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn backtracking_matches_enumeration(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let p = propose_instance(&mut rng, Shape { max_vars: 4, max_domain: 3 });
        let out = solve_backtracking(&p);
        prop_assert_eq!(out.is_solution(), common::brute_satisfiable(&p));
        sound(&p, &out)?;
    }

    #[test]
    fn class_solvers_are_sound_on_arbitrary_input(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let p = propose_instance(&mut rng, small());
        let natural: Vec<usize> = (0..p.num_vars()).collect();
        for out in [
            solve_tree(&p).unwrap(),
            solve_btp(&p, &natural).unwrap(),
            solve_max_closed(&p, None).unwrap(),
            solve_negtrans(&p).unwrap(),
            solve_pivot1(&p).unwrap(),
            solve_simple(&p).unwrap(),
            pivot1_union(&p).unwrap(),
            solve_auto(&p).unwrap().1,
        ] {
            sound(&p, &out)?;
        }
    }

    #[test]
    fn forests_are_in_class(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let p = random_forest_instance(&mut rng, Shape { max_vars: 8, max_domain: 4 });
        let out = solve_tree(&p).unwrap();
        prop_assert!(sound(&p, &out)?);
        prop_assert_eq!(out.is_solution(), common::brute_satisfiable(&p));
    }

    #[test]
    fn max_closed_instances_are_in_class(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let p = random_max_closed_instance(&mut rng, Shape { max_vars: 7, max_domain: 4 });
        let out = solve_max_closed(&p, None).unwrap();
        prop_assert!(sound(&p, &out)?);
        prop_assert_eq!(out.is_solution(), common::brute_satisfiable(&p));
    }

    #[test]
    fn arc_consistency_preserves_solutions(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let p = propose_instance(&mut rng, small());
        let q = enforce_arc_consistency(&p);
        prop_assert_eq!(common::brute_satisfiable(&p), common::brute_satisfiable(&q));
        for v in 0..p.num_vars() {
            prop_assert!(q.domain(v).iter().all(|&a| p.in_domain(v, a)));
        }
    }
}

#[test]
fn pn_family_is_pivot1_free_and_solved_with_audits() {
    let audit = SolveOptions { audit_eliminations: true, ..SolveOptions::default() };
    for n in 3..=10 {
        let p = gen_pn_family(n).unwrap();
        let out = solve_pivot1_with(&p, &audit).unwrap();
        assert!(!matches!(out, SolveOutcome::NotInClass(_)), "P_{n}");
        assert_eq!(out.is_solution(), solve_backtracking(&p).is_solution(), "P_{n}");
    }
}

#[test]
fn alldiff_with_enough_values_is_satisfiable() {
    for n in 1..=12 {
        let doms: Vec<Vec<u32>> = (0..n).map(|i| (0..=i as u32).collect()).collect();
        let p = gen_alldiff_unary(n, &doms).unwrap();
        assert!(solve_negtrans(&p).unwrap().is_solution());
    }
    let pigeons = gen_alldiff_unary(4, &vec![vec![0, 1, 2]; 4]).unwrap();
    assert_eq!(solve_negtrans(&pigeons).unwrap(), SolveOutcome::Unsatisfiable);
}
