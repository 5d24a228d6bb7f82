use super::network::Network;
use super::{checked, invariant, SolveError, SolveOutcome, Witness};
use crate::model::{Assignment, CspInstance, CspPattern, Point, Value};
use crate::occurrence::occurs_in_instance;

/// A solver for some class of instances.
pub type Solver<'a> = &'a dyn Fn(&CspInstance) -> Result<SolveOutcome, SolveError>;

/// Instances forbidding the disjoint union of `chi` and `tau`. If `chi` occurs, each assignment
/// of its variables leaves an instance without `tau` on the rest, solved by `solve_tau`;
/// assignments are tried in lexicographic order.
pub fn solve_disjoint_union(
    p: &CspInstance,
    chi: &CspPattern,
    solve_chi: Solver<'_>,
    tau: &CspPattern,
    solve_tau: Solver<'_>,
) -> Result<SolveOutcome, SolveError> {
    let union = chi.disjoint_union(tau)?;
    if let Some(occurrence) = occurs_in_instance(&union, p)? {
        return Ok(SolveOutcome::NotInClass(Box::new(Witness {
            name: "disjoint-union".into(),
            pattern: union,
            order: None,
            occurrence,
        })));
    }
    let Some(occ) = occurs_in_instance(chi, p)? else {
        return solve_chi(p);
    };
    let sigma = occ.image_vars();
    let n = p.num_vars();
    let rest: Vec<usize> = (0..n).filter(|v| sigma.binary_search(v).is_err()).collect();
    if sigma.iter().any(|&v| p.domain(v).is_empty()) {
        return Ok(SolveOutcome::Unsatisfiable);
    }
    let mut idx = vec![0usize; sigma.len()];
    loop {
        let t: Vec<Value> = sigma.iter().zip(&idx).map(|(&v, &i)| p.domain(v)[i]).collect();
        if let Some(out) = try_branch(p, &sigma, &t, &rest, solve_tau)? {
            return Ok(out);
        }
        // odometer, last position fastest
        let mut k = sigma.len();
        loop {
            if k == 0 {
                return Ok(SolveOutcome::Unsatisfiable);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < p.domain(sigma[k]).len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn try_branch(
    p: &CspInstance,
    sigma: &[usize],
    t: &[Value],
    rest: &[usize],
    solve_tau: Solver<'_>,
) -> Result<Option<SolveOutcome>, SolveError> {
    let fixed: Vec<Point> = sigma.iter().zip(t).map(|(&v, &a)| Point::new(v, a)).collect();
    for (i, &x) in fixed.iter().enumerate() {
        if fixed[i + 1..].iter().any(|&y| p.is_disallowed(x, y)) {
            return Ok(None);
        }
    }
    let domains: Vec<Vec<Value>> = rest
        .iter()
        .map(|&v| {
            p.domain(v).iter().copied().filter(|&a| fixed.iter().all(|&x| !p.is_disallowed(x, Point::new(v, a)))).collect()
        })
        .collect();
    let sub = p.induced(rest).restrict(domains);
    let mut net = Network::new(&sub);
    if !net.arc_consistency(true) {
        return Ok(None);
    }
    let sub = sub.restrict(net.domains());
    match solve_tau(&sub)? {
        SolveOutcome::Solution(s) => {
            let mut full = Assignment::empty(p.num_vars());
            for x in &fixed {
                full.set(x.var, x.value);
            }
            for (i, &v) in rest.iter().enumerate() {
                full.set(v, s.get(i).expect("total solution"));
            }
            checked(p, full).map(Some)
        }
        SolveOutcome::Unsatisfiable => Ok(None),
        SolveOutcome::NotInClass(_) => Err(invariant("second pattern occurs away from the fixed occurrence")),
    }
}
