use super::network::Network;
use super::{checked, invariant, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::catalog::{self, NamedPattern};
use crate::model::{Assignment, CspInstance};
use crate::occurrence::occurs_in_instance_ordered;

/// Instances with the broken-triangle property for `order` (variables listed first to last):
/// arc consistency, then a greedy pass in `order`.
pub fn solve_btp(p: &CspInstance, order: &[usize]) -> Result<SolveOutcome, SolveError> {
    solve_btp_with(p, order, &SolveOptions::default())
}

pub fn solve_btp_with(p: &CspInstance, order: &[usize], opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let n = p.num_vars();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(SolveError::BadOrder(format!("{order:?} is not a permutation of 0..{n}")));
    }
    if !opts.skip_class_check {
        if let Some(occ) = occurs_in_instance_ordered(&catalog::btp(), p, order)? {
            return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(
                NamedPattern::Btp,
                occ,
                Some(order.to_vec()),
            ))));
        }
    }
    let mut net = Network::new(p);
    if !net.arc_consistency(true) {
        return Ok(SolveOutcome::Unsatisfiable);
    }
    let mut chosen: Vec<Option<u32>> = vec![None; n];
    let mut s = Assignment::empty(n);
    for &v in order {
        let pick = net.alive_ids(v).find(|&id| {
            net.neighbours(v)
                .iter()
                .all(|&w| chosen[w].is_none_or(|c| !net.conflicts_in(id, w).contains(&c)))
        });
        let id = pick.ok_or_else(|| invariant(format!("greedy pass stuck at variable {v}")))?;
        chosen[v] = Some(id);
        s.set(v, net.label(id));
    }
    checked(p, s)
}
