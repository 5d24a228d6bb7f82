use super::network::Network;
use super::{checked, SolveError, SolveOptions, SolveOutcome, Witness};
use crate::catalog::{self, NamedPattern};
use crate::model::{Assignment, CspInstance, Point, Value};
use crate::occurrence::{verify_instance_occurrence, Occurrence, Renaming};

/// Instances whose relations are closed under componentwise maximum.
///
/// `order` lists values from least to greatest; `None` uses the numeric order. Witness values
/// are labels of `p`, ordered by `order`.
pub fn solve_max_closed(p: &CspInstance, order: Option<&[Value]>) -> Result<SolveOutcome, SolveError> {
    solve_max_closed_with(p, order, &SolveOptions::default())
}

pub fn solve_max_closed_with(
    p: &CspInstance,
    order: Option<&[Value]>,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    let (q, back) = match order {
        Some(o) => relabel(p, o)?,
        None => (p.clone(), Vec::new()),
    };
    let unlabel = |a: Value| if back.is_empty() { a } else { back[a as usize] };
    if !opts.skip_class_check {
        if let Some(mut r) = max_violation(&q) {
            verify_instance_occurrence(&catalog::max2(), &q, None, &r)?;
            for vals in &mut r.point_map {
                for a in vals.iter_mut() {
                    *a = unlabel(*a);
                }
            }
            let occ = Occurrence::from_renaming(&catalog::max2(), r);
            return Ok(SolveOutcome::NotInClass(Box::new(Witness::named(NamedPattern::Max2, occ, None))));
        }
    }
    let mut net = Network::new(&q);
    if !net.arc_consistency(true) {
        return Ok(SolveOutcome::Unsatisfiable);
    }
    let values = (0..q.num_vars())
        .map(|v| unlabel(net.label(net.alive_ids(v).last().expect("nonempty after AC"))))
        .collect();
    checked(p, Assignment::total(values))
}

/// Replaces each label by its rank in `order`.
fn relabel(p: &CspInstance, order: &[Value]) -> Result<(CspInstance, Vec<Value>), SolveError> {
    let rank = |a: Value| {
        order
            .iter()
            .position(|&b| b == a)
            .map(|i| i as Value)
            .ok_or_else(|| SolveError::BadOrder(format!("value {a} missing from the order")))
    };
    let domains = p
        .domains()
        .iter()
        .map(|d| d.iter().map(|&a| rank(a)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut b = CspInstance::builder(domains);
    for (s, pairs) in p.constraints() {
        for &(a, c) in pairs {
            b.disallow((s.lo(), rank(a)?), (s.hi(), rank(c)?));
        }
    }
    Ok((b.build()?, order.to_vec()))
}

/// A disallowed `(c, e)` is the maximum of allowed `(c, y)` and `(x, e)` with `x < c`, `y < e`.
fn max_violation(p: &CspInstance) -> Option<Renaming> {
    for (s, pairs) in p.constraints() {
        let (u, v) = (s.lo(), s.hi());
        for &(c, e) in pairs {
            let y = p.domain(v).iter().copied().take_while(|&y| y < e).find(|&y| {
                !p.is_disallowed(Point::new(u, c), Point::new(v, y))
            });
            let x = p.domain(u).iter().copied().take_while(|&x| x < c).find(|&x| {
                !p.is_disallowed(Point::new(u, x), Point::new(v, e))
            });
            if let (Some(x), Some(y)) = (x, y) {
                return Some(Renaming { var_map: vec![u, v], point_map: vec![vec![x, c], vec![y, e]] });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_solution;

    #[test]
    fn leq_chain_takes_maxima() {
        // x <= y, y <= 3 over 0..=4
        let mut b = CspInstance::builder(vec![(0..5).collect(), (0..4).collect()]);
        for a in 0..5 {
            for c in 0..4 {
                if a > c {
                    b.disallow((0, a), (1, c));
                }
            }
        }
        let p = b.build().unwrap();
        let out = solve_max_closed(&p, None).unwrap();
        assert_eq!(out.solution().unwrap().to_vec().unwrap(), vec![3, 3]);
    }

    #[test]
    fn xor_is_not_max_closed() {
        let mut b = CspInstance::builder(vec![vec![0, 1]; 2]);
        b.disallow((0, 0), (1, 0)).disallow((0, 1), (1, 1));
        let p = b.build().unwrap();
        let w = solve_max_closed(&p, None).unwrap().witness().cloned().unwrap();
        assert_eq!(w.name, "max2");
        crate::occurrence::verify_instance_occurrence(&w.pattern, &p, None, &w.occurrence.renaming).unwrap();
    }

    #[test]
    fn reversed_order_picks_minima() {
        // x >= y is min-closed; under the reversed order it is max-closed
        let mut b = CspInstance::builder(vec![vec![0, 1, 2]; 2]);
        for a in 0..3 {
            for c in 0..3 {
                if a < c {
                    b.disallow((0, a), (1, c));
                }
            }
        }
        let p = b.build().unwrap();
        let out = solve_max_closed(&p, Some(&[2, 1, 0])).unwrap();
        let s = out.solution().unwrap();
        assert!(is_solution(&p, s).unwrap());
        assert_eq!(s.to_vec().unwrap(), vec![0, 0]);
        assert!(matches!(solve_max_closed(&p, Some(&[0, 1])), Err(SolveError::BadOrder(_))));
    }
}
