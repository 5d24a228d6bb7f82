use super::matching::maximum_matching;
use super::{checked, invariant, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::analysis::{classify_component, inconsistency_graph, AnalysisError, ComponentClass};
use crate::catalog::NamedPattern;
use crate::model::{Assignment, CspInstance, Value};

/// Instances where disallowedness is transitive across three variables: free pairs of
/// two-variable components are assigned, then each remaining variable is matched to its own
/// inconsistency clique.
pub fn solve_negtrans(p: &CspInstance) -> Result<SolveOutcome, SolveError> {
    solve_negtrans_with(p, &SolveOptions::default())
}

/// The class check is the component classification itself, so `skip_class_check` has no effect.
pub fn solve_negtrans_with(p: &CspInstance, _opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let n = p.num_vars();
    let mut domains: Vec<Vec<Value>> = p.domains().to_vec();
    let mut s = Assignment::empty(n);
    let mut fixed = vec![false; n];
    let (q, g) = loop {
        let q = p.restrict(domains.clone());
        let g = inconsistency_graph(&q);
        let mut pair = None;
        for h in g.components() {
            match classify_component(&g, h) {
                Ok(ComponentClass::InconsistencyClique) => {}
                Ok(ComponentClass::TwoVariable { free_pair }) => {
                    pair.get_or_insert(free_pair);
                }
                Ok(ComponentClass::Violation(occ)) => {
                    return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(NamedPattern::Negtrans, occ, None))));
                }
                Err(AnalysisError::Internal(m)) => return Err(invariant(m)),
                Err(e) => return Err(invariant(e.to_string())),
            }
        }
        let Some((a, b)) = pair else { break (q, g) };
        // both points conflict only inside their component, so nothing else is affected
        for x in [a, b] {
            s.set(x.var, x.value);
            fixed[x.var] = true;
            domains[x.var].clear();
        }
    };
    let residual: Vec<usize> = (0..n).filter(|&v| !fixed[v]).collect();
    let adj: Vec<Vec<usize>> = residual
        .iter()
        .map(|&v| {
            let mut cs: Vec<usize> = q
                .domain(v)
                .iter()
                .map(|&a| g.component_of(g.id(crate::model::Point::new(v, a)).expect("live point")))
                .collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect();
    let matching = maximum_matching(g.components().len(), &adj);
    for (i, &v) in residual.iter().enumerate() {
        let Some(c) = matching[i] else {
            return Ok(SolveOutcome::Unsatisfiable);
        };
        let value = q
            .domain(v)
            .iter()
            .copied()
            .find(|&a| g.component_of(g.id(crate::model::Point::new(v, a)).expect("live point")) == c)
            .expect("matched component meets the variable");
        s.set(v, value);
    }
    checked(p, s)
}
