//! Dense point-indexed view of an instance with undoable value removal.

use std::collections::VecDeque;
use std::ops::Range;

use crate::model::{CspInstance, Value};

/// Point ids are contiguous per variable, ascending by label.
#[derive(Debug, Clone)]
pub(crate) struct Network {
    labels: Vec<Value>,
    offsets: Vec<usize>,
    var_of: Vec<usize>,
    conflicts: Vec<Vec<u32>>,
    neighbours: Vec<Vec<usize>>,
    alive: Vec<bool>,
    size: Vec<usize>,
    trail: Vec<u32>,
}

impl Network {
    pub fn new(p: &CspInstance) -> Network {
        let n = p.num_vars();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut labels = Vec::new();
        let mut var_of = Vec::new();
        for v in 0..n {
            offsets.push(labels.len());
            labels.extend_from_slice(p.domain(v));
            var_of.extend(std::iter::repeat_n(v, p.domain(v).len()));
        }
        offsets.push(labels.len());
        let mut conflicts = vec![Vec::new(); labels.len()];
        let mut neighbours = vec![Vec::new(); n];
        for (s, pairs) in p.constraints() {
            let (u, v) = (s.lo(), s.hi());
            neighbours[u].push(v);
            neighbours[v].push(u);
            for &(a, b) in pairs {
                let x = offsets[u] + p.domain(u).binary_search(&a).expect("in domain");
                let y = offsets[v] + p.domain(v).binary_search(&b).expect("in domain");
                conflicts[x].push(y as u32);
                conflicts[y].push(x as u32);
            }
        }
        for c in &mut conflicts {
            c.sort_unstable();
        }
        for l in &mut neighbours {
            l.sort_unstable();
        }
        let size = (0..n).map(|v| offsets[v + 1] - offsets[v]).collect();
        Network { alive: vec![true; labels.len()], labels, offsets, var_of, conflicts, neighbours, size, trail: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.size.len()
    }

    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn ids(&self, v: usize) -> Range<u32> {
        self.offsets[v] as u32..self.offsets[v + 1] as u32
    }

    pub fn label(&self, id: u32) -> Value {
        self.labels[id as usize]
    }

    pub fn var_of(&self, id: u32) -> usize {
        self.var_of[id as usize]
    }

    pub fn is_alive(&self, id: u32) -> bool {
        self.alive[id as usize]
    }

    pub fn alive_ids(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        self.ids(v).filter(move |&id| self.alive[id as usize])
    }

    /// Conflicting point ids of `id` that belong to `y`, alive or not.
    pub fn conflicts_in(&self, id: u32, y: usize) -> &[u32] {
        let c = &self.conflicts[id as usize];
        let lo = c.partition_point(|&q| (q as usize) < self.offsets[y]);
        let hi = c.partition_point(|&q| (q as usize) < self.offsets[y + 1]);
        &c[lo..hi]
    }

    /// Some alive value of `y` is compatible with `id`.
    pub fn supported(&self, id: u32, y: usize) -> bool {
        let hits = self.conflicts_in(id, y).iter().filter(|&&q| self.alive[q as usize]).count();
        hits < self.size[y]
    }

    pub fn remove(&mut self, id: u32) {
        if std::mem::replace(&mut self.alive[id as usize], false) {
            self.size[self.var_of[id as usize]] -= 1;
            self.trail.push(id);
        }
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let id = self.trail.pop().expect("nonempty trail");
            self.alive[id as usize] = true;
            self.size[self.var_of[id as usize]] += 1;
        }
    }

    /// Removes every value of `v` except `keep`.
    pub fn assign(&mut self, v: usize, keep: u32) {
        for id in self.ids(v) {
            if id != keep {
                self.remove(id);
            }
        }
    }

    /// Removes values of `x` without support in `y`; reports whether anything changed.
    pub fn revise(&mut self, x: usize, y: usize) -> bool {
        let mut changed = false;
        for id in self.ids(x) {
            if self.alive[id as usize] && !self.supported(id, y) {
                self.remove(id);
                changed = true;
            }
        }
        changed
    }

    /// AC-3 over all arcs. With `stop_on_wipeout` it returns at the first empty domain;
    /// otherwise it runs to the fixpoint. Returns false iff some domain is empty.
    pub fn arc_consistency(&mut self, stop_on_wipeout: bool) -> bool {
        let arcs = (0..self.num_vars()).flat_map(|x| self.neighbours[x].iter().map(move |&y| (x, y))).collect();
        self.propagate(arcs, stop_on_wipeout)
    }

    /// AC-3 from the given arcs `(x, y)`, each meaning "revise `x` against `y`".
    pub fn propagate(&mut self, arcs: Vec<(usize, usize)>, stop_on_wipeout: bool) -> bool {
        let n = self.num_vars();
        let mut queued: Vec<Vec<bool>> = self.neighbours.iter().map(|l| vec![false; l.len()]).collect();
        let mut queue = VecDeque::new();
        let slot = |nb: &Vec<Vec<usize>>, x: usize, y: usize| nb[x].binary_search(&y).expect("arc between neighbours");
        for (x, y) in arcs {
            let k = slot(&self.neighbours, x, y);
            if !std::mem::replace(&mut queued[x][k], true) {
                queue.push_back((x, y));
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            let k = slot(&self.neighbours, x, y);
            queued[x][k] = false;
            if self.revise(x, y) {
                if self.size[x] == 0 && stop_on_wipeout {
                    return false;
                }
                for i in 0..self.neighbours[x].len() {
                    let z = self.neighbours[x][i];
                    if z == y {
                        continue;
                    }
                    let kz = slot(&self.neighbours, z, x);
                    if !std::mem::replace(&mut queued[z][kz], true) {
                        queue.push_back((z, x));
                    }
                }
            }
        }
        (0..n).all(|v| self.size[v] > 0)
    }

    /// Surviving labels per variable.
    pub fn domains(&self) -> Vec<Vec<Value>> {
        (0..self.num_vars()).map(|v| self.alive_ids(v).map(|id| self.label(id)).collect()).collect()
    }
}

/// Largest arc-consistent subinstance. A wipeout empties every domain connected to it.
pub fn enforce_arc_consistency(p: &CspInstance) -> CspInstance {
    let mut net = Network::new(p);
    net.arc_consistency(false);
    p.restrict(net.domains())
}
