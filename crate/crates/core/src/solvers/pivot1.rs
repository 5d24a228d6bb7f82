use super::network::Network;
use super::{checked, invariant, solve_negtrans_with, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::analysis::{find_negtrans, inconsistency_graph};
use crate::catalog::{self, NamedPattern};
use crate::model::{CspInstance, Point, Scope, Value};
use crate::occurrence::occurs_in_instance;

/// A variable removed by joining its two constraints; enough to choose its value afterwards.
struct Elimination {
    var: usize,
    domain: Vec<Value>,
    ends: [usize; 2],
    /// Disallowed `(own value, end value)` pairs per end.
    conflicts: [Vec<(Value, Value)>; 2],
}

/// Instances without a three-armed star of single conflicts: middle variables of Negtrans
/// occurrences are eliminated, then the Negtrans solver finishes.
pub fn solve_pivot1(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    solve_pivot1_with(p, &SolveOptions::default())
}

pub fn solve_pivot1_with(p: &CspInstance, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let pivot = catalog::pivot(1).expect("arm length 1 is valid");
    if !opts.skip_class_check {
        if let Some(occ) = occurs_in_instance(&pivot, p)? {
            return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(NamedPattern::Pivot(1), occ, None))));
        }
    }
    let Some(mut q) = arc_consistent(p) else {
        return Ok(SolveOutcome::Unsatisfiable);
    };
    let mut trail = Vec::new();
    while let Some((left, right, middle)) = find_negtrans(&inconsistency_graph(&q)) {
        let (m, ends) = (middle.var, [left.var, right.var]);
        if let Some(w) = q.neighbours(m).into_iter().find(|w| !ends.contains(w)) {
            return Err(invariant(format!("middle variable {m} is also constrained by {w}")));
        }
        let (next, step) = eliminate(&q, m, ends);
        trail.push(step);
        let Some(next) = arc_consistent(&next) else {
            return Ok(SolveOutcome::Unsatisfiable);
        };
        q = next;
        if opts.audit_eliminations && occurs_in_instance(&pivot, &q)?.is_some() {
            return Err(invariant(format!("eliminating variable {m} created a Pivot(1) occurrence")));
        }
    }
    let inner = SolveOptions { skip_class_check: true, ..*opts };
    let mut s = match solve_negtrans_with(&q, &inner)? {
        SolveOutcome::Solution(s) => s,
        SolveOutcome::Unsatisfiable => return Ok(SolveOutcome::Unsatisfiable),
        SolveOutcome::NotInClass(_) => return Err(invariant("Negtrans remains after eliminations")),
    };
    for step in trail.iter().rev() {
        let at = |i: usize| s.get(step.ends[i]).expect("ends are assigned");
        let value = step
            .domain
            .iter()
            .copied()
            .find(|&c| (0..2).all(|i| step.conflicts[i].binary_search(&(c, at(i))).is_err()))
            .ok_or_else(|| invariant(format!("eliminated variable {} has no extension", step.var)))?;
        s.set(step.var, value);
    }
    checked(p, s)
}

fn arc_consistent(p: &CspInstance) -> Option<CspInstance> {
    let mut net = Network::new(p);
    net.arc_consistency(true).then(|| p.restrict(net.domains()))
}

/// Drops every constraint on `m` and forbids the pairs of `ends` with no common support in `m`.
/// `m` keeps one placeholder value so variable indices stay put.
fn eliminate(q: &CspInstance, m: usize, ends: [usize; 2]) -> (CspInstance, Elimination) {
    let conflicts = ends.map(|e| {
        let s = Scope::new(m, e).expect("distinct variables");
        let mut pairs: Vec<(Value, Value)> = q
            .disallowed(s)
            .iter()
            .map(|&(a, b)| if s.lo() == m { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        pairs
    });
    let domain = q.domain(m).to_vec();
    let mut domains = q.domains().to_vec();
    domains[m].truncate(1);
    let mut b = CspInstance::builder(domains);
    for (s, pairs) in q.constraints() {
        if s.contains(m) {
            continue;
        }
        for &(a, c) in pairs {
            b.disallow((s.lo(), a), (s.hi(), c));
        }
    }
    for &a in q.domain(ends[0]) {
        for &c in q.domain(ends[1]) {
            let extends = domain.iter().any(|&x| {
                conflicts[0].binary_search(&(x, a)).is_err() && conflicts[1].binary_search(&(x, c)).is_err()
            });
            if !extends {
                b.disallow((ends[0], a), (ends[1], c));
            }
        }
    }
    let next = b.build().expect("pairs lie in the current domains");
    debug_assert!(!next.is_disallowed(Point::new(m, domain[0]), Point::new(ends[0], q.domain(ends[0])[0])));
    (next, Elimination { var: m, domain, ends, conflicts })
}
