//! Maximum bipartite matching by shortest augmenting paths in phases (Hopcroft–Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching of left vertices `0..adj.len()` into right vertices `0..num_right`.
/// Deterministic for a given adjacency order.
pub fn maximum_matching(num_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut left_mate = vec![FREE; n];
    let mut right_mate = vec![FREE; num_right];
    let mut dist = vec![0usize; n];
    loop {
        // BFS layers from free left vertices; `found` records the layer reaching a free right vertex
        let mut queue = VecDeque::new();
        for l in 0..n {
            if left_mate[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = usize::MAX;
        while let Some(l) = queue.pop_front() {
            if dist[l] >= found {
                continue;
            }
            for &r in &adj[l] {
                let m = right_mate[r];
                if m == FREE {
                    found = found.min(dist[l] + 1);
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if found == usize::MAX {
            break;
        }
        let mut next = vec![0usize; n];
        for l in 0..n {
            if left_mate[l] == FREE {
                augment(l, adj, &mut left_mate, &mut right_mate, &mut dist, &mut next, found);
            }
        }
    }
    left_mate.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    left_mate: &mut [usize],
    right_mate: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
    found: usize,
) -> bool {
    while next[l] < adj[l].len() {
        let r = adj[l][next[l]];
        next[l] += 1;
        let m = right_mate[r];
        let ok = if m == FREE {
            dist[l] + 1 == found
        } else {
            dist[m] == dist[l] + 1 && augment(m, adj, left_mate, right_mate, dist, next, found)
        };
        if ok {
            left_mate[l] = r;
            right_mate[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().flatten().count()
    }

    fn brute(num_right: usize, adj: &[Vec<usize>]) -> usize {
        fn go(l: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = go(l + 1, adj, used);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; num_right])
    }

    #[test]
    fn needs_augmentation() {
        // greedy 0->0 blocks 1; the maximum rematches
        let adj = vec![vec![0, 1], vec![0]];
        let m = maximum_matching(2, &adj);
        assert_eq!(m, vec![Some(1), Some(0)]);
    }

    #[test]
    fn pigeonhole() {
        let adj = vec![vec![0, 1]; 3];
        assert_eq!(size(&maximum_matching(2, &adj)), 2);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for mask in 0u32..1 << 12 {
            // 4 left x 3 right
            let adj: Vec<Vec<usize>> = (0..4).map(|l| (0..3).filter(|r| mask >> (l * 3 + r) & 1 == 1).collect()).collect();
            let m = maximum_matching(3, &adj);
            assert_eq!(size(&m), brute(3, &adj));
            let mut used = [false; 3];
            for (l, r) in m.iter().enumerate() {
                if let Some(r) = *r {
                    assert!(adj[l].contains(&r) && !std::mem::replace(&mut used[r], true));
                }
            }
        }
    }
}
