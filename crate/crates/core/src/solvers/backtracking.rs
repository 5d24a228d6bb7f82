use super::network::Network;
use super::SolveOutcome;
use crate::model::{is_solution, Assignment, CspInstance};

/// Complete search: arc consistency, then smallest-domain-first with forward checking,
/// values ascending.
pub fn solve_backtracking(p: &CspInstance) -> SolveOutcome {
    let mut net = Network::new(p);
    if !net.arc_consistency(true) {
        return SolveOutcome::Unsatisfiable;
    }
    let mut assigned = vec![false; p.num_vars()];
    if !search(&mut net, &mut assigned) {
        return SolveOutcome::Unsatisfiable;
    }
    let values = (0..p.num_vars())
        .map(|v| net.label(net.alive_ids(v).next().expect("assigned variables keep one value")))
        .collect();
    let s = Assignment::total(values);
    assert!(is_solution(p, &s).unwrap_or(false), "backtracking produced a non-solution");
    SolveOutcome::Solution(s)
}

fn search(net: &mut Network, assigned: &mut [bool]) -> bool {
    let Some(v) = (0..assigned.len()).filter(|&v| !assigned[v]).min_by_key(|&v| (net.size(v), v)) else {
        return true;
    };
    let candidates: Vec<u32> = net.alive_ids(v).collect();
    assigned[v] = true;
    for id in candidates {
        let mark = net.mark();
        net.assign(v, id);
        if forward_check(net, assigned, v, id) && search(net, assigned) {
            return true;
        }
        net.undo(mark);
    }
    assigned[v] = false;
    false
}

fn forward_check(net: &mut Network, assigned: &[bool], v: usize, id: u32) -> bool {
    for i in 0..net.neighbours(v).len() {
        let y = net.neighbours(v)[i];
        if assigned[y] {
            continue;
        }
        let hits: Vec<u32> = net.conflicts_in(id, y).to_vec();
        for q in hits {
            net.remove(q);
        }
        if net.size(y) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Value;

    fn colouring(n: usize, k: Value, edges: &[(usize, usize)]) -> CspInstance {
        let mut b = CspInstance::builder(vec![(0..k).collect(); n]);
        for &(u, v) in edges {
            for c in 0..k {
                b.disallow((u, c), (v, c));
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn triangle_colourings() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        let three = colouring(3, 3, &tri);
        let SolveOutcome::Solution(s) = solve_backtracking(&three) else { panic!() };
        assert!(is_solution(&three, &s).unwrap());
        assert_eq!(solve_backtracking(&colouring(3, 2, &tri)), SolveOutcome::Unsatisfiable);
    }

    #[test]
    fn agrees_with_enumeration_on_tiny_instances() {
        // every instance over 3 variables, domain {0,1}, with disallowed pairs drawn from a fixed mask
        let pairs: Vec<((usize, Value), (usize, Value))> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .flat_map(|&(u, v)| (0..2).flat_map(move |a| (0..2).map(move |b| ((u, a), (v, b)))))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let mut b = CspInstance::builder(vec![vec![0, 1]; 3]);
            for (i, &(p, q)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    b.disallow(p, q);
                }
            }
            let p = b.build().unwrap();
            let any = (0..8u32).any(|m| {
                is_solution(&p, &Assignment::total((0..3).map(|v| m >> v & 1).collect())).unwrap()
            });
            assert_eq!(solve_backtracking(&p).is_solution(), any, "mask {mask}");
        }
    }
}
