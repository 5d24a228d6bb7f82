//! Structural analyses of patterns and instances.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::catalog::{self, NamedPattern};
use crate::model::{CspInstance, CspPattern, Point, TruthValue, Value};
use crate::occurrence::{occurs, verify_occurrence, Occurrence, OccurrenceError, Renaming};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("pattern has a T entry")]
    NotNegative,
    #[error("pattern context carries order or value structure")]
    NotFlat,
    #[error("negative structure graph is not connected")]
    NotConnected,
    #[error("enumeration would exceed {0} bits per pattern")]
    TooLarge(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<OccurrenceError> for AnalysisError {
    fn from(e: OccurrenceError) -> Self {
        AnalysisError::Internal(e.to_string())
    }
}

/// Variables joined when their constraint holds an `F` entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeStructureGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl NegativeStructureGraph {
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i]] {
                    if !std::mem::replace(&mut seen[w], true) {
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected with at most one component; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices of some cycle in traversal order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if w == parent[u] {
                        continue;
                    }
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        stack.push(w);
                    } else {
                        return Some(tree_cycle(&parent, &depth, u, w));
                    }
                }
            }
        }
        None
    }
}

/// Cycle closed by the non-tree edge `u-w` of a spanning forest.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

pub fn negative_structure_graph(chi: &CspPattern) -> Result<NegativeStructureGraph, AnalysisError> {
    if !chi.is_negative() {
        return Err(AnalysisError::NotNegative);
    }
    let mut adj = vec![BTreeSet::new(); chi.num_vars()];
    for c in chi.constraints() {
        if c.count(TruthValue::False) > 0 {
            let s = c.scope();
            adj[s.lo()].insert(s.hi());
            adj[s.hi()].insert(s.lo());
        }
    }
    Ok(NegativeStructureGraph { adj })
}

/// Number of distinct variables sharing a non-trivial constraint with `v`.
pub fn valency(chi: &CspPattern, v: usize) -> usize {
    chi.constraints().filter(|c| c.scope().contains(v)).count()
}

/// Points of an instance joined by disallowed pairs.
#[derive(Debug, Clone)]
pub struct InconsistencyGraph {
    offsets: Vec<usize>,
    points: Vec<Point>,
    adj: Vec<Vec<u32>>,
    component_of: Vec<u32>,
    components: Vec<Vec<u32>>,
}

impl InconsistencyGraph {
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, id: u32) -> Point {
        self.points[id as usize]
    }

    pub fn id(&self, p: Point) -> Option<u32> {
        let lo = *self.offsets.get(p.var)?;
        let hi = self.offsets[p.var + 1];
        self.points[lo..hi]
            .binary_search_by_key(&p.value, |q| q.value)
            .ok()
            .map(|i| (lo + i) as u32)
    }

    /// Sorted neighbour ids.
    pub fn neighbours(&self, id: u32) -> &[u32] {
        &self.adj[id as usize]
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Components as sorted point-id lists, ordered by least member.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_of(&self, id: u32) -> usize {
        self.component_of[id as usize] as usize
    }
}

pub fn inconsistency_graph(p: &CspInstance) -> InconsistencyGraph {
    let n = p.num_vars();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut points = Vec::new();
    for v in 0..n {
        offsets.push(points.len());
        points.extend(p.domain(v).iter().map(|&a| Point::new(v, a)));
    }
    offsets.push(points.len());
    let id = |v: usize, a: Value| {
        let d = p.domain(v);
        (offsets[v] + d.binary_search(&a).expect("pairs lie in domains")) as u32
    };
    let mut adj = vec![Vec::new(); points.len()];
    for (s, pairs) in p.constraints() {
        for &(a, b) in pairs {
            let (x, y) = (id(s.lo(), a), id(s.hi(), b));
            adj[x as usize].push(y);
            adj[y as usize].push(x);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let mut component_of = vec![u32::MAX; points.len()];
    let mut components = Vec::new();
    for s in 0..points.len() {
        if component_of[s] != u32::MAX {
            continue;
        }
        let c = components.len() as u32;
        component_of[s] = c;
        let mut comp = vec![s as u32];
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i] as usize] {
                if component_of[w as usize] == u32::MAX {
                    component_of[w as usize] = c;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        components.push(comp);
    }
    InconsistencyGraph { offsets, points, adj, component_of, components }
}

/// Shape of one inconsistency-graph component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentClass {
    /// Complete multipartite across the variables it meets.
    InconsistencyClique,
    /// Meets two variables and misses the cross pair `free_pair`.
    TwoVariable { free_pair: (Point, Point) },
    /// Negtrans occurrence: source `(v, w, x)` with `x` in the middle.
    Violation(Occurrence),
}

/// Classifies the component `h` (sorted point ids) of `g`.
pub fn classify_component(g: &InconsistencyGraph, h: &[u32]) -> Result<ComponentClass, AnalysisError> {
    let mut per_var: Vec<(usize, u64)> = Vec::new();
    for &id in h {
        let v = g.point(id).var;
        match per_var.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => per_var.push((v, 1)),
        }
    }
    let total: u64 = per_var.iter().map(|x| x.1).sum();
    let squares: u64 = per_var.iter().map(|x| x.1 * x.1).sum();
    let edges: u64 = h.iter().map(|&id| g.neighbours(id).len() as u64).sum::<u64>() / 2;
    if edges == (total * total - squares) / 2 {
        return Ok(ComponentClass::InconsistencyClique);
    }
    if per_var.len() == 2 {
        let split = h.partition_point(|&id| g.point(id).var == per_var[0].0);
        for &a in &h[..split] {
            for &b in &h[split..] {
                if !g.adjacent(a, b) {
                    return Ok(ComponentClass::TwoVariable { free_pair: (g.point(a), g.point(b)) });
                }
            }
        }
    }
    for &y in h {
        if let Some((a, b)) = negtrans_at(g, y) {
            let (pa, pb, x) = (g.point(a), g.point(b), g.point(y));
            let renaming = Renaming {
                var_map: vec![pa.var, pb.var, x.var],
                point_map: vec![vec![pa.value], vec![pb.value], vec![x.value]],
            };
            return Ok(ComponentClass::Violation(Occurrence::from_renaming(&catalog::negtrans(), renaming)));
        }
    }
    Err(AnalysisError::Internal(
        "non-clique component over three or more variables without a Negtrans witness".into(),
    ))
}

/// Two conflicts of `y` on distinct variables that are compatible with each other.
fn negtrans_at(g: &InconsistencyGraph, y: u32) -> Option<(u32, u32)> {
    let ns = g.neighbours(y);
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if g.point(a).var != g.point(b).var && !g.adjacent(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// First Negtrans occurrence by middle point, as `(left, right, middle)`.
pub fn find_negtrans(g: &InconsistencyGraph) -> Option<(Point, Point, Point)> {
    (0..g.num_points() as u32)
        .find_map(|y| negtrans_at(g, y).map(|(a, b)| (g.point(a), g.point(b), g.point(y))))
}

/// Constraint graph over non-complete constraints is acyclic.
pub fn is_forest(p: &CspInstance) -> bool {
    let mut parent: Vec<usize> = (0..p.num_vars()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (s, _) in p.constraints() {
        let (a, b) = (find(&mut parent, s.lo()), find(&mut parent, s.hi()));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Verdict for a connected flat negative pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternClassification {
    /// A hardness pattern occurs in the pattern's distinct closure.
    Intractable { witness: NamedPattern, occurrence: Occurrence },
    /// The pattern occurs in `Pivot(r)`.
    PivotEmbeddable { r: usize, occurrence: Occurrence },
}

/// Classifies a connected flat negative pattern as containing a hardness pattern or embedding in a pivot.
///
/// Hardness witnesses are found in [`CspPattern::with_distinct_closure`], which reads all variables
/// and all values of a variable as distinct, as they are in any instance.
pub fn classify_negative_pattern(chi: &CspPattern) -> Result<PatternClassification, AnalysisError> {
    let g = negative_structure_graph(chi)?;
    if !chi.is_flat() {
        return Err(AnalysisError::NotFlat);
    }
    if !g.is_connected() {
        return Err(AnalysisError::NotConnected);
    }
    let closed = chi.with_distinct_closure();
    let hard = |name: NamedPattern| -> Result<PatternClassification, AnalysisError> {
        let h = name.build().map_err(|e| AnalysisError::Internal(e.to_string()))?;
        let occurrence = occurs(&h, &closed)?
            .ok_or_else(|| AnalysisError::Internal(format!("expected {name} to occur")))?;
        verify_occurrence(&h, &closed, &occurrence.renaming)?;
        Ok(PatternClassification::Intractable { witness: name, occurrence })
    };
    if chi.constraints().any(|c| c.count(TruthValue::False) >= 2) {
        return hard(NamedPattern::Cycle(2));
    }
    if let Some(cyc) = g.find_cycle() {
        return hard(NamedPattern::Cycle(cyc.len()));
    }
    let n = chi.num_vars();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let threes: Vec<usize> = (0..n).filter(|&v| degrees[v] == 3).collect();
    if degrees.iter().any(|&d| d >= 4) || threes.len() >= 2 {
        return hard(NamedPattern::Valency);
    }
    let sites = intersection_sites(chi);
    let site_count: usize = sites.iter().map(|(_, k)| k * (k - 1) / 2).sum();
    if site_count >= 2 {
        return hard(NamedPattern::Path);
    }
    let site = sites.first().map(|(p, _)| *p);
    if let (Some(s), Some(&c)) = (site, threes.first()) {
        if s.var != c {
            return hard(NamedPattern::ValencyPath);
        }
    }
    let center = threes.first().copied().or(site.map(|p| p.var)).unwrap_or(0);
    let (r, renaming) = pivot_embedding(chi, &g, center, site)?;
    let target = catalog::pivot(r).map_err(|e| AnalysisError::Internal(e.to_string()))?;
    verify_occurrence(chi, &target, &renaming)?;
    Ok(PatternClassification::PivotEmbeddable { r, occurrence: Occurrence::from_renaming(chi, renaming) })
}

/// Points lying in two or more `F` entries, with their entry counts.
fn intersection_sites(chi: &CspPattern) -> Vec<(Point, usize)> {
    let mut count: std::collections::BTreeMap<Point, usize> = Default::default();
    for (p, q, tv) in chi.entries() {
        if tv == TruthValue::False {
            *count.entry(p).or_default() += 1;
            *count.entry(q).or_default() += 1;
        }
    }
    count.into_iter().filter(|&(_, k)| k >= 2).collect()
}

/// The single `F` entry between adjacent variables, as `(value at u, value at w)`.
fn f_entry(chi: &CspPattern, u: usize, w: usize) -> (Value, Value) {
    let s = crate::model::Scope::new(u, w).expect("adjacent variables differ");
    let c = chi.constraint(s).expect("adjacent variables share a constraint");
    let ((a, b), _) = c
        .entries()
        .find(|e| e.1 == TruthValue::False)
        .expect("edges carry an F entry");
    if u == s.lo() {
        (a, b)
    } else {
        (b, a)
    }
}

/// Maps a tree with paths hanging off `center` onto the arms of a pivot.
fn pivot_embedding(
    chi: &CspPattern,
    g: &NegativeStructureGraph,
    center: usize,
    site: Option<Point>,
) -> Result<(usize, Renaming), AnalysisError> {
    let mut branches: Vec<Vec<usize>> = Vec::new();
    for first in g.neighbours(center) {
        let mut branch = vec![first];
        let (mut prev, mut cur) = (center, first);
        while let Some(next) = g.neighbours(cur).find(|&w| w != prev) {
            branch.push(next);
            prev = cur;
            cur = next;
        }
        branches.push(branch);
    }
    if branches.len() > 3 {
        return Err(AnalysisError::Internal("center has more than three branches".into()));
    }
    // Branches leaving through the shared point take the two arms anchored at the same pivot value.
    let at_site = |b: &Vec<usize>| site.is_some_and(|s| s.var == center && f_entry(chi, center, b[0]).0 == s.value);
    branches.sort_by_key(|b| !at_site(b));
    let r = branches.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let mut var_map = vec![usize::MAX; chi.num_vars()];
    let mut point_map: Vec<Vec<Value>> = chi.value_counts().iter().map(|&k| vec![0; k]).collect();
    var_map[center] = 0;
    for (arm, branch) in branches.iter().enumerate() {
        let (anchor, _) = f_entry(chi, center, branch[0]);
        if arm == 2 {
            point_map[center][anchor as usize] = 1;
        }
        let mut prev = center;
        for (i, &y) in branch.iter().enumerate() {
            var_map[y] = catalog::arm_var(r, arm, i);
            let (_, incoming) = f_entry(chi, prev, y);
            point_map[y][incoming as usize] = 1;
            prev = y;
        }
    }
    if var_map.contains(&usize::MAX) {
        return Err(AnalysisError::Internal("pattern is not a tree around its center".into()));
    }
    Ok((r, Renaming { var_map, point_map }))
}

/// Connected negative patterns with pairwise distinct variables, one per relabelling class.
///
/// Patterns are listed by variable count, then value counts (non-decreasing), then `F`-entry
/// bitmask; each class is represented by its least bitmask.
pub fn enumerate_connected_negative(max_vars: usize, max_values: usize) -> Result<Vec<CspPattern>, AnalysisError> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let mut counts = vec![1usize; n];
        loop {
            enumerate_shape(&counts, &mut out)?;
            // next non-decreasing vector
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if counts[i] < max_values {
                    counts[i] += 1;
                    let v = counts[i];
                    for c in &mut counts[i + 1..] {
                        *c = v;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn enumerate_shape(counts: &[usize], out: &mut Vec<CspPattern>) -> Result<(), AnalysisError> {
    let n = counts.len();
    // bit layout: scopes (u<v) in order, value pairs row-major
    let mut bit_of = std::collections::HashMap::new();
    let mut bits: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut scope_masks: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mut m = 0u64;
            for a in 0..counts[u] {
                for b in 0..counts[v] {
                    bit_of.insert((u, v, a, b), bits.len());
                    m |= 1 << bits.len();
                    bits.push((u, v, a, b));
                }
            }
            scope_masks.push((u, v, m));
        }
    }
    if bits.len() > 26 {
        return Err(AnalysisError::TooLarge(bits.len()));
    }
    let var_perms: Vec<Vec<usize>> =
        permutations(n).into_iter().filter(|p| (0..n).all(|i| counts[p[i]] == counts[i])).collect();
    let value_perms: Vec<Vec<Vec<usize>>> = counts.iter().map(|&k| permutations(k)).collect();
    let mut group: Vec<Vec<usize>> = Vec::new();
    for vp in &var_perms {
        let mut choice = vec![0usize; n];
        loop {
            let map: Vec<usize> = bits
                .iter()
                .map(|&(u, v, a, b)| {
                    let (a2, b2) = (value_perms[u][choice[u]][a], value_perms[v][choice[v]][b]);
                    let (u2, v2) = (vp[u], vp[v]);
                    let key = if u2 < v2 { (u2, v2, a2, b2) } else { (v2, u2, b2, a2) };
                    bit_of[&key]
                })
                .collect();
            group.push(map);
            let mut i = 0;
            while i < n {
                choice[i] += 1;
                if choice[i] < value_perms[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    let total = 1u64 << bits.len();
    let mut parent = vec![0usize; n];
    'masks: for mask in 0..total {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut joins = 0;
        for &(u, v, m) in &scope_masks {
            if mask & m != 0 {
                let (mut a, mut b) = (u, v);
                while parent[a] != a {
                    a = parent[a];
                }
                while parent[b] != b {
                    b = parent[b];
                }
                if a != b {
                    parent[a] = b;
                    joins += 1;
                }
            }
        }
        if joins + 1 != n {
            continue;
        }
        for map in &group {
            let mut image = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                image |= 1 << map[i];
                rest &= rest - 1;
            }
            if image < mask {
                continue 'masks;
            }
        }
        let mut b = CspPattern::builder(counts.to_vec()).distinct(&(0..n).collect::<Vec<_>>());
        for (i, &(u, v, a, c)) in bits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b = b.f((u, a as Value), (v, c as Value));
            }
        }
        out.push(b.build().map_err(|e| AnalysisError::Internal(e.to_string()))?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cycle, negtrans, path, pivot};
    use crate::model::CspInstance;

    fn instance(domains: Vec<Vec<Value>>, pairs: &[((usize, Value), (usize, Value))]) -> CspInstance {
        let mut b = CspInstance::builder(domains);
        for &(p, q) in pairs {
            b.disallow(p, q);
        }
        b.build().unwrap()
    }

    #[test]
    fn structure_graphs() {
        let g = negative_structure_graph(&negtrans().neg()).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert!(g.is_connected());
        assert_eq!(negative_structure_graph(&crate::catalog::valency()).unwrap().components().len(), 2);
        let pg = negative_structure_graph(&pivot(3).unwrap()).unwrap();
        assert!(pg.is_connected() && pg.find_cycle().is_none());
        assert_eq!(pg.degree(0), 3);
        assert_eq!(negative_structure_graph(&negtrans()), Err(AnalysisError::NotNegative));
        let c5 = negative_structure_graph(&cycle(5).unwrap()).unwrap();
        assert_eq!(c5.find_cycle().unwrap().len(), 5);
    }

    #[test]
    fn valencies() {
        let p = pivot(2).unwrap();
        assert_eq!(valency(&p, 0), 3);
        assert_eq!(valency(&p, 2), 1);
        let lonely = CspPattern::builder(vec![1]).build().unwrap();
        assert_eq!(valency(&lonely, 0), 0);
    }

    #[test]
    fn inconsistency_graph_of_small_alldiff() {
        let p = instance(vec![vec![0, 1]; 2], &[((0, 0), (1, 0)), ((0, 1), (1, 1))]);
        let g = inconsistency_graph(&p);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.components().len(), 2);
        for h in g.components() {
            assert_eq!(classify_component(&g, h).unwrap(), ComponentClass::InconsistencyClique);
        }
        let free = inconsistency_graph(&CspInstance::unconstrained(vec![vec![0, 1]; 3]));
        assert_eq!(free.num_edges(), 0);
        assert_eq!(free.components().len(), 6);
    }

    #[test]
    fn two_variable_component() {
        // 4-cycle minus two edges: x0-y0, x0-y1, x1-y1
        let p = instance(vec![vec![0, 1]; 2], &[((0, 0), (1, 0)), ((0, 0), (1, 1)), ((0, 1), (1, 1))]);
        let g = inconsistency_graph(&p);
        assert_eq!(g.components().len(), 1);
        assert_eq!(
            classify_component(&g, &g.components()[0]).unwrap(),
            ComponentClass::TwoVariable { free_pair: (Point::new(0, 1), Point::new(1, 0)) }
        );
    }

    #[test]
    fn violation_component() {
        let p = instance(vec![vec![0]; 3], &[((0, 0), (2, 0)), ((1, 0), (2, 0))]);
        let g = inconsistency_graph(&p);
        let ComponentClass::Violation(occ) = classify_component(&g, &g.components()[0]).unwrap() else {
            panic!("expected a violation");
        };
        crate::occurrence::verify_instance_occurrence(&negtrans(), &p, None, &occ.renaming).unwrap();
    }

    #[test]
    fn forests() {
        let chain = instance(vec![vec![0, 1]; 3], &[((0, 0), (1, 0)), ((1, 0), (2, 0))]);
        assert!(is_forest(&chain));
        let tri = instance(vec![vec![0, 1]; 3], &[((0, 0), (1, 0)), ((1, 0), (2, 0)), ((0, 1), (2, 1))]);
        assert!(!is_forest(&tri));
    }

    #[test]
    fn classifier_examples() {
        let c3 = cycle(3).unwrap();
        match classify_negative_pattern(&c3).unwrap() {
            PatternClassification::Intractable { witness, .. } => assert_eq!(witness, NamedPattern::Cycle(3)),
            other => panic!("{other:?}"),
        }
        match classify_negative_pattern(&pivot(2).unwrap()).unwrap() {
            PatternClassification::PivotEmbeddable { r, occurrence } => {
                assert_eq!(r, 2);
                assert_eq!(occurrence.renaming, Renaming::identity(&pivot(2).unwrap()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            classify_negative_pattern(&negtrans().neg()).unwrap(),
            PatternClassification::PivotEmbeddable { r: 1, .. }
        ));
        assert_eq!(classify_negative_pattern(&path()), Err(AnalysisError::NotConnected));
        assert_eq!(classify_negative_pattern(&negtrans()), Err(AnalysisError::NotNegative));
        assert_eq!(classify_negative_pattern(&crate::catalog::tree()), Err(AnalysisError::NotFlat));
    }

    #[test]
    fn enumeration_counts_small_shapes() {
        // one variable: one class per value count; two single-valued variables: one F entry
        let pats = enumerate_connected_negative(2, 1).unwrap();
        assert_eq!(pats.len(), 2);
        let two = enumerate_connected_negative(2, 2).unwrap();
        // n=1: k=1,2 (2); n=2 (1,1): 1; (1,2): {1 F, 2 F} = 2; (2,2): up to symmetry 1,2 diag,2 row,3,4 = 5
        assert_eq!(two.len(), 2 + 1 + 2 + 5);
        let uniq: BTreeSet<_> = two.iter().collect();
        assert_eq!(uniq.len(), two.len());
    }
}
