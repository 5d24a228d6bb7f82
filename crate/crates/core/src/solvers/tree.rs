use super::network::Network;
use super::{checked, invariant, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::analysis::is_forest;
use crate::catalog::{self, NamedPattern};
use crate::model::{Assignment, CspInstance};
use crate::occurrence::occurs_in_instance_ordered;

/// Forest-structured instances: leaf-to-root arc consistency, then a greedy root-to-leaf pass.
pub fn solve_tree(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    solve_tree_with(p, &SolveOptions::default())
}

pub fn solve_tree_with(p: &CspInstance, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if !opts.skip_class_check && !is_forest(p) {
        // the latest variable of any cycle has two earlier neighbours
        let order: Vec<usize> = (0..p.num_vars()).collect();
        let occ = occurs_in_instance_ordered(&catalog::tree(), p, &order)?
            .ok_or_else(|| invariant("cyclic instance without a Tree occurrence"))?;
        return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(NamedPattern::Tree, occ, Some(order)))));
    }
    let n = p.num_vars();
    let mut net = Network::new(p);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut bfs = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = bfs.len();
        bfs.push(root);
        let mut i = start;
        while i < bfs.len() {
            let u = bfs[i];
            for &w in net.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    bfs.push(w);
                }
            }
            i += 1;
        }
    }
    for &c in bfs.iter().rev() {
        if net.size(c) == 0 {
            return Ok(SolveOutcome::Unsatisfiable);
        }
        if parent[c] != usize::MAX {
            net.revise(parent[c], c);
        }
    }
    let mut s = Assignment::empty(n);
    let mut chosen = vec![u32::MAX; n];
    for &v in &bfs {
        let pick = net.alive_ids(v).find(|&id| {
            parent[v] == usize::MAX || !net.conflicts_in(chosen[parent[v]], v).contains(&id)
        });
        let id = pick.ok_or_else(|| invariant("directional consistency left no compatible value"))?;
        chosen[v] = id;
        s.set(v, net.label(id));
    }
    checked(p, s)
}
