use super::network::Network;
use super::{checked, invariant, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::catalog::{self, NamedPattern};
use crate::model::{Assignment, CspInstance};
use crate::occurrence::occurs_in_instance;

/// Instances where no variable has two values conflicting with two different variables:
/// arc consistency, elimination of variables owning a conflict-free value, then enumeration
/// of the remaining components of at most two variables.
pub fn solve_simple(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    solve_simple_with(p, &SolveOptions::default())
}

pub fn solve_simple_with(p: &CspInstance, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if !opts.skip_class_check {
        if let Some(occ) = occurs_in_instance(&catalog::simple(), p)? {
            return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(NamedPattern::Simple, occ, None))));
        }
    }
    let n = p.num_vars();
    let mut net = Network::new(p);
    if !net.arc_consistency(true) {
        return Ok(SolveOutcome::Unsatisfiable);
    }
    let mut chosen: Vec<Option<u32>> = vec![None; n];
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if chosen[v].is_some() {
                continue;
            }
            let free = net.alive_ids(v).find(|&id| conflict_free(&net, id));
            if let Some(id) = free {
                net.assign(v, id);
                chosen[v] = Some(id);
                changed = true;
            }
        }
    }
    for v in 0..n {
        if chosen[v].is_some() {
            continue;
        }
        let nb = live_neighbours(&net, &chosen, v);
        if nb.len() > 1 || nb.iter().any(|&w| live_neighbours(&net, &chosen, w).len() > 1) {
            return Err(invariant(format!("variable {v} lies on a path of three constrained variables")));
        }
        let Some(&w) = nb.first() else {
            return Err(invariant(format!("variable {v} kept without conflicts")));
        };
        let pair = net.alive_ids(v).find_map(|a| {
            net.alive_ids(w).find(|b| !net.conflicts_in(a, w).contains(b)).map(|b| (a, b))
        });
        let Some((a, b)) = pair else {
            return Ok(SolveOutcome::Unsatisfiable);
        };
        chosen[v] = Some(a);
        chosen[w] = Some(b);
    }
    let mut s = Assignment::empty(n);
    for (v, id) in chosen.iter().enumerate() {
        s.set(v, net.label(id.expect("every variable is settled")));
    }
    checked(p, s)
}

fn conflict_free(net: &Network, id: u32) -> bool {
    net.neighbours(net.var_of(id)).iter().all(|&w| net.conflicts_in(id, w).iter().all(|&q| !net.is_alive(q)))
}

/// Unsettled variables sharing a live conflict with `v`.
fn live_neighbours(net: &Network, chosen: &[Option<u32>], v: usize) -> Vec<usize> {
    net.neighbours(v)
        .iter()
        .copied()
        .filter(|&w| chosen[w].is_none())
        .filter(|&w| net.alive_ids(v).any(|id| net.conflicts_in(id, w).iter().any(|&q| net.is_alive(q))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_solution;

    #[test]
    fn disjoint_constraints() {
        // x0 = x1 over {0,1} and x2 ≠ x3 over {0}
        let mut b = CspInstance::builder(vec![vec![0, 1], vec![0, 1], vec![0], vec![0]]);
        b.disallow((0, 0), (1, 1)).disallow((0, 1), (1, 0)).disallow((2, 0), (3, 0));
        let p = b.build().unwrap();
        assert_eq!(solve_simple(&p).unwrap(), SolveOutcome::Unsatisfiable);
        let mut b = CspInstance::builder(vec![vec![0, 1]; 4]);
        b.disallow((0, 0), (1, 1)).disallow((0, 1), (1, 0)).disallow((2, 0), (3, 0)).disallow((2, 1), (3, 1));
        let p = b.build().unwrap();
        assert!(is_solution(&p, solve_simple(&p).unwrap().solution().unwrap()).unwrap());
    }

    #[test]
    fn single_variable() {
        let p = CspInstance::unconstrained(vec![vec![4, 7]]);
        assert_eq!(solve_simple(&p).unwrap().solution().unwrap().to_vec().unwrap(), vec![4]);
    }

    #[test]
    fn simple_pattern_is_rejected() {
        let mut b = CspInstance::builder(vec![vec![0], vec![0], vec![0, 1]]);
        b.disallow((0, 0), (2, 0)).disallow((1, 0), (2, 1));
        assert_eq!(solve_simple(&b.build().unwrap()).unwrap().witness().unwrap().name, "simple");
    }
}
