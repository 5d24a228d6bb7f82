//! Renamings and the occurrence relation between patterns, and from patterns into instances.
//!
//! The search first fixes the variable map in lexicographic order, pruned by the merge rule,
//! the context and scope-level feasibility, then completes the point map with forward checking.
//! The first witness found therefore has the lexicographically least variable map.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::model::{Context, CspInstance, CspPattern, Point, Scope, TruthValue, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OccurrenceError {
    #[error("source context needs structure the target does not have")]
    IncompatibleContext,
    #[error("variables {0} and {1} share a non-trivial constraint but are merged")]
    IllegalMerge(usize, usize),
    #[error("renaming does not preserve the context: {0}")]
    NotHomomorphic(String),
    #[error("labellings merged onto {0}-{1} carry incomparable truth values")]
    IncomparableMerge(Point, Point),
    #[error("renaming does not fit the source or target: {0}")]
    Malformed(String),
    #[error("renamed constraint on {0} is not realised by the target")]
    NotRealised(Scope),
}

/// Variable map and per-point value map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Renaming {
    pub var_map: Vec<usize>,
    /// `point_map[v][a]` is the target value of source point `(v, a)`.
    pub point_map: Vec<Vec<Value>>,
}

impl Renaming {
    pub fn identity(chi: &CspPattern) -> Renaming {
        Renaming {
            var_map: (0..chi.num_vars()).collect(),
            point_map: chi.value_counts().iter().map(|&k| (0..k as Value).collect()).collect(),
        }
    }

    pub fn image(&self, p: Point) -> Point {
        Point::new(self.var_map[p.var], self.point_map[p.var][p.value as usize])
    }

    pub fn is_injective_on_vars(&self) -> bool {
        let set: BTreeSet<_> = self.var_map.iter().collect();
        set.len() == self.var_map.len()
    }
}

/// A renaming whose constraints are realised by the target, with the scope correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub renaming: Renaming,
    pub target_scopes: BTreeMap<Scope, Scope>,
}

impl Occurrence {
    pub(crate) fn from_renaming(chi: &CspPattern, renaming: Renaming) -> Occurrence {
        let target_scopes = chi
            .constraints()
            .map(|c| {
                let s = c.scope();
                let t = Scope::new(renaming.var_map[s.lo()], renaming.var_map[s.hi()])
                    .expect("co-scoped variables are never merged");
                (s, t)
            })
            .collect();
        Occurrence { renaming, target_scopes }
    }

    /// Image variables, ascending and deduplicated.
    pub fn image_vars(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.renaming.var_map.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// What a search may ask of the structure it maps into.
trait Host {
    fn num_vars(&self) -> usize;
    fn domain(&self, v: usize) -> &[Value];
    /// `p.var != q.var`; both points in-domain.
    fn truth(&self, p: Point, q: Point) -> TruthValue;
    fn distinct_vars(&self, u: usize, v: usize) -> bool;
    fn distinct_values(&self, p: Point, q: Point) -> bool;
    fn order_pos(&self) -> Option<&[usize]>;
    fn scope_has(&self, u: usize, v: usize, tv: TruthValue) -> bool;
    fn f_neighbours(&self, u: usize) -> &[usize];
    fn f_partners(&self, p: Point, w: usize) -> Vec<Value>;
}

fn positions(order: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

struct PatternHost<'a> {
    pattern: &'a CspPattern,
    domains: Vec<Vec<Value>>,
    pos: Option<Vec<usize>>,
    neighbours: Vec<Vec<usize>>,
    partners: HashMap<(Point, usize), Vec<Value>>,
    kinds: BTreeSet<(Scope, TruthValue)>,
}

impl<'a> PatternHost<'a> {
    fn new(pattern: &'a CspPattern) -> Self {
        let n = pattern.num_vars();
        let domains = pattern.value_counts().iter().map(|&k| (0..k as Value).collect()).collect();
        let mut neighbours = vec![BTreeSet::new(); n];
        let mut partners: HashMap<(Point, usize), Vec<Value>> = HashMap::new();
        let mut kinds = BTreeSet::new();
        for (p, q, tv) in pattern.entries() {
            kinds.insert((Scope::new(p.var, q.var).expect("entries join distinct variables"), tv));
            if tv == TruthValue::False {
                neighbours[p.var].insert(q.var);
                neighbours[q.var].insert(p.var);
                partners.entry((p, q.var)).or_default().push(q.value);
                partners.entry((q, p.var)).or_default().push(p.value);
            }
        }
        for list in partners.values_mut() {
            list.sort_unstable();
        }
        PatternHost {
            pattern,
            domains,
            pos: pattern.context().var_order().map(|o| positions(o, n)),
            neighbours: neighbours.into_iter().map(|s| s.into_iter().collect()).collect(),
            partners,
            kinds,
        }
    }
}

impl Host for PatternHost<'_> {
    fn num_vars(&self) -> usize {
        self.pattern.num_vars()
    }
    fn domain(&self, v: usize) -> &[Value] {
        &self.domains[v]
    }
    fn truth(&self, p: Point, q: Point) -> TruthValue {
        self.pattern.truth(p, q)
    }
    fn distinct_vars(&self, u: usize, v: usize) -> bool {
        self.pattern.context().distinct_vars(u, v)
    }
    fn distinct_values(&self, p: Point, q: Point) -> bool {
        self.pattern.context().distinct_values(p, q)
    }
    fn order_pos(&self) -> Option<&[usize]> {
        self.pos.as_deref()
    }
    fn scope_has(&self, u: usize, v: usize, tv: TruthValue) -> bool {
        Scope::new(u, v).is_ok_and(|s| self.kinds.contains(&(s, tv)))
    }
    fn f_neighbours(&self, u: usize) -> &[usize] {
        &self.neighbours[u]
    }
    fn f_partners(&self, p: Point, w: usize) -> Vec<Value> {
        self.partners.get(&(p, w)).cloned().unwrap_or_default()
    }
}

struct InstanceHost<'a> {
    instance: &'a CspInstance,
    pos: Option<Vec<usize>>,
    neighbours: Vec<Vec<usize>>,
    /// Disallowed pairs per scope sorted by the hi value.
    by_hi: BTreeMap<Scope, Vec<(Value, Value)>>,
}

impl<'a> InstanceHost<'a> {
    fn new(instance: &'a CspInstance, order: Option<&[usize]>) -> Self {
        let n = instance.num_vars();
        let mut neighbours = vec![Vec::new(); n];
        let mut by_hi = BTreeMap::new();
        for (s, pairs) in instance.constraints() {
            neighbours[s.lo()].push(s.hi());
            neighbours[s.hi()].push(s.lo());
            let mut rev: Vec<(Value, Value)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
            rev.sort_unstable();
            by_hi.insert(s, rev);
        }
        for l in &mut neighbours {
            l.sort_unstable();
        }
        InstanceHost { instance, pos: order.map(|o| positions(o, n)), neighbours, by_hi }
    }
}

fn partners_of(sorted: &[(Value, Value)], a: Value) -> Vec<Value> {
    let start = sorted.partition_point(|&(x, _)| x < a);
    sorted[start..].iter().take_while(|&&(x, _)| x == a).map(|&(_, y)| y).collect()
}

impl Host for InstanceHost<'_> {
    fn num_vars(&self) -> usize {
        self.instance.num_vars()
    }
    fn domain(&self, v: usize) -> &[Value] {
        self.instance.domain(v)
    }
    fn truth(&self, p: Point, q: Point) -> TruthValue {
        if self.instance.is_disallowed(p, q) {
            TruthValue::False
        } else {
            TruthValue::True
        }
    }
    fn distinct_vars(&self, u: usize, v: usize) -> bool {
        u != v
    }
    fn distinct_values(&self, p: Point, q: Point) -> bool {
        p != q
    }
    fn order_pos(&self) -> Option<&[usize]> {
        self.pos.as_deref()
    }
    fn scope_has(&self, u: usize, v: usize, tv: TruthValue) -> bool {
        let Ok(s) = Scope::new(u, v) else { return false };
        let bad = self.instance.disallowed(s).len();
        match tv {
            TruthValue::False => bad > 0,
            TruthValue::True => bad < self.instance.domain(u).len() * self.instance.domain(v).len(),
            TruthValue::Undefined => true,
        }
    }
    fn f_neighbours(&self, u: usize) -> &[usize] {
        &self.neighbours[u]
    }
    fn f_partners(&self, p: Point, w: usize) -> Vec<Value> {
        let Ok(s) = Scope::new(p.var, w) else { return Vec::new() };
        if p.var == s.lo() {
            partners_of(self.instance.disallowed(s), p.value)
        } else {
            self.by_hi.get(&s).map_or_else(Vec::new, |rev| partners_of(rev, p.value))
        }
    }
}

/// Source pattern preprocessed for search.
struct Source<'a> {
    chi: &'a CspPattern,
    /// Per point: entries towards points of other variables.
    adj: Vec<Vec<Vec<(Point, TruthValue)>>>,
    /// Per variable pair (lo, hi): whether the pair carries F / T entries.
    scope_kinds: HashMap<(usize, usize), (bool, bool)>,
    pos: Option<Vec<usize>>,
    /// Per point: values of the same variable it must differ from.
    neq_values: Vec<Vec<Vec<Value>>>,
}

impl<'a> Source<'a> {
    fn new(chi: &'a CspPattern) -> Self {
        let n = chi.num_vars();
        let mut adj: Vec<Vec<Vec<(Point, TruthValue)>>> =
            chi.value_counts().iter().map(|&k| vec![Vec::new(); k]).collect();
        let mut scope_kinds: HashMap<(usize, usize), (bool, bool)> = HashMap::new();
        for (p, q, tv) in chi.entries() {
            adj[p.var][p.value as usize].push((q, tv));
            adj[q.var][q.value as usize].push((p, tv));
            let k = scope_kinds.entry((p.var, q.var)).or_insert((false, false));
            match tv {
                TruthValue::False => k.0 = true,
                TruthValue::True => k.1 = true,
                TruthValue::Undefined => {}
            }
        }
        let mut neq_values: Vec<Vec<Vec<Value>>> =
            chi.value_counts().iter().map(|&k| vec![Vec::new(); k]).collect();
        for (p, q) in chi.context().neq_values() {
            neq_values[p.var][p.value as usize].push(q.value);
            neq_values[q.var][q.value as usize].push(p.value);
        }
        Source {
            chi,
            adj,
            scope_kinds,
            pos: chi.context().var_order().map(|o| positions(o, n)),
            neq_values,
        }
    }

    fn kinds(&self, u: usize, v: usize) -> Option<(bool, bool)> {
        self.scope_kinds.get(&(u.min(v), u.max(v))).copied()
    }

    /// Points whose image is unconstrained beyond lying in the target domain.
    fn is_free(&self, p: Point) -> bool {
        self.adj[p.var][p.value as usize].is_empty()
            && self.neq_values[p.var][p.value as usize].is_empty()
            && !self.chi.context().value_order()
    }
}

struct Search<'a, H: Host> {
    src: Source<'a>,
    host: &'a H,
    var_map: Vec<usize>,
    point_map: Vec<Vec<Option<Value>>>,
    /// Constrained points in assignment order, then free points.
    slots: Vec<Point>,
    free: Vec<Point>,
}

impl<'a, H: Host> Search<'a, H> {
    fn new(chi: &'a CspPattern, host: &'a H) -> Self {
        let src = Source::new(chi);
        let mut slots = Vec::new();
        let mut free = Vec::new();
        for v in 0..chi.num_vars() {
            for a in 0..chi.value_count(v) {
                let p = Point::new(v, a as Value);
                if src.is_free(p) {
                    free.push(p);
                } else {
                    slots.push(p);
                }
            }
        }
        Search {
            point_map: chi.value_counts().iter().map(|&k| vec![None; k]).collect(),
            var_map: Vec::with_capacity(chi.num_vars()),
            src,
            host,
            slots,
            free,
        }
    }

    fn run(mut self) -> Option<Renaming> {
        if self.vars() {
            let point_map = self
                .point_map
                .iter()
                .map(|vals| vals.iter().map(|x| x.expect("complete search")).collect())
                .collect();
            Some(Renaming { var_map: self.var_map, point_map })
        } else {
            None
        }
    }

    fn var_ok(&self, v: usize, x: usize) -> bool {
        let ctx = self.src.chi.context();
        for (u, &y) in self.var_map.iter().enumerate() {
            let kinds = self.src.kinds(u, v);
            if x == y {
                if kinds.is_some() || ctx.distinct_vars(u, v) {
                    return false;
                }
                continue;
            }
            if ctx.declares_neq(u, v) && !self.host.distinct_vars(y, x) {
                return false;
            }
            if let Some(spos) = &self.src.pos {
                let hpos = self.host.order_pos().expect("checked compatibility");
                if (spos[u] < spos[v]) != (hpos[y] < hpos[x]) {
                    return false;
                }
            }
            if let Some((has_f, has_t)) = kinds {
                if has_f && !self.host.scope_has(y, x, TruthValue::False) {
                    return false;
                }
                if has_t && !self.host.scope_has(y, x, TruthValue::True) {
                    return false;
                }
            }
        }
        true
    }

    fn vars(&mut self) -> bool {
        let v = self.var_map.len();
        if v == self.src.chi.num_vars() {
            return self.points(0);
        }
        let anchor = (0..v).find(|&u| self.src.kinds(u, v).is_some_and(|k| k.0));
        let candidates: Vec<usize> = match anchor {
            Some(u) => self.host.f_neighbours(self.var_map[u]).to_vec(),
            None => (0..self.host.num_vars()).collect(),
        };
        for x in candidates {
            if self.var_ok(v, x) {
                self.var_map.push(x);
                if self.vars() {
                    return true;
                }
                self.var_map.pop();
            }
        }
        false
    }

    fn image(&self, p: Point) -> Option<Point> {
        self.point_map[p.var][p.value as usize].map(|b| Point::new(self.var_map[p.var], b))
    }

    fn point_ok(&self, p: Point, c: Value) -> bool {
        let x = self.var_map[p.var];
        let me = Point::new(x, c);
        for &(q, tv) in &self.src.adj[p.var][p.value as usize] {
            if let Some(img) = self.image(q) {
                if self.host.truth(me, img) != tv {
                    return false;
                }
            }
        }
        for &b in &self.src.neq_values[p.var][p.value as usize] {
            if let Some(other) = self.point_map[p.var][b as usize] {
                if !self.host.distinct_values(me, Point::new(x, other)) {
                    return false;
                }
            }
        }
        true
    }

    fn points(&mut self, i: usize) -> bool {
        if i == self.slots.len() {
            return self.fill_free();
        }
        let p = self.slots[i];
        let x = self.var_map[p.var];
        let anchored = self.src.adj[p.var][p.value as usize].iter().find_map(|&(q, tv)| {
            (tv == TruthValue::False).then(|| self.image(q)).flatten()
        });
        let mut candidates = match anchored {
            Some(img) => self.host.f_partners(img, x),
            None => self.host.domain(x).to_vec(),
        };
        if self.src.chi.context().value_order() && p.value > 0 {
            let prev = self.point_map[p.var][p.value as usize - 1].expect("slots ascend per variable");
            candidates.retain(|&c| c > prev);
        }
        for c in candidates {
            if self.point_ok(p, c) {
                self.point_map[p.var][p.value as usize] = Some(c);
                if self.points(i + 1) {
                    return true;
                }
                self.point_map[p.var][p.value as usize] = None;
            }
        }
        false
    }

    fn fill_free(&mut self) -> bool {
        for i in 0..self.free.len() {
            let p = self.free[i];
            match self.host.domain(self.var_map[p.var]).first() {
                Some(&c) => self.point_map[p.var][p.value as usize] = Some(c),
                None => {
                    for q in &self.free[..i] {
                        self.point_map[q.var][q.value as usize] = None;
                    }
                    return false;
                }
            }
        }
        true
    }
}

fn check_compatible(chi: &CspPattern, host_ordered: bool, host_values_ordered: bool) -> Result<(), OccurrenceError> {
    if chi.context().var_order().is_some() && !host_ordered {
        return Err(OccurrenceError::IncompatibleContext);
    }
    if chi.context().value_order() && !host_values_ordered {
        return Err(OccurrenceError::IncompatibleContext);
    }
    Ok(())
}

/// Finds an occurrence of `chi` in `target`. Scopes absent from `target` count as all-`U`.
pub fn occurs(chi: &CspPattern, target: &CspPattern) -> Result<Option<Occurrence>, OccurrenceError> {
    check_compatible(
        chi,
        target.context().var_order().is_some(),
        target.context().value_order(),
    )?;
    let host = PatternHost::new(target);
    Ok(Search::new(chi, &host).run().map(|r| Occurrence::from_renaming(chi, r)))
}

/// Finds an occurrence of `chi` in an unordered instance.
pub fn occurs_in_instance(chi: &CspPattern, p: &CspInstance) -> Result<Option<Occurrence>, OccurrenceError> {
    check_compatible(chi, false, true)?;
    let host = InstanceHost::new(p, None);
    Ok(Search::new(chi, &host).run().map(|r| Occurrence::from_renaming(chi, r)))
}

/// Finds an occurrence of `chi` in `p` with its variables ordered as listed in `order`.
pub fn occurs_in_instance_ordered(
    chi: &CspPattern,
    p: &CspInstance,
    order: &[usize],
) -> Result<Option<Occurrence>, OccurrenceError> {
    check_order(order, p.num_vars())?;
    let host = InstanceHost::new(p, Some(order));
    Ok(Search::new(chi, &host).run().map(|r| Occurrence::from_renaming(chi, r)))
}

fn check_order(order: &[usize], n: usize) -> Result<(), OccurrenceError> {
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(OccurrenceError::Malformed("order must list every variable once".into()));
    }
    Ok(())
}

/// First pattern of `xs` occurring in `p`, with its witness; `None` when `p` forbids them all.
pub fn first_occurrence(
    p: &CspInstance,
    xs: &[CspPattern],
) -> Result<Option<(usize, Occurrence)>, OccurrenceError> {
    for (i, chi) in xs.iter().enumerate() {
        if let Some(o) = occurs_in_instance(chi, p)? {
            return Ok(Some((i, o)));
        }
    }
    Ok(None)
}

/// Whether no pattern of `xs` occurs in `p`.
pub fn forbids(p: &CspInstance, xs: &[CspPattern]) -> Result<bool, OccurrenceError> {
    Ok(first_occurrence(p, xs)?.is_none())
}

/// Ordered variant of [`first_occurrence`].
pub fn first_occurrence_ordered(
    p: &CspInstance,
    xs: &[CspPattern],
    order: &[usize],
) -> Result<Option<(usize, Occurrence)>, OccurrenceError> {
    for (i, chi) in xs.iter().enumerate() {
        if let Some(o) = occurs_in_instance_ordered(chi, p, order)? {
            return Ok(Some((i, o)));
        }
    }
    Ok(None)
}

fn check_shape(chi: &CspPattern, r: &Renaming, target_values: &[usize]) -> Result<(), OccurrenceError> {
    let bad = |m: &str| Err(OccurrenceError::Malformed(m.to_string()));
    if r.var_map.len() != chi.num_vars() || r.point_map.len() != chi.num_vars() {
        return bad("renaming does not cover every source variable");
    }
    for v in 0..chi.num_vars() {
        let x = r.var_map[v];
        if x >= target_values.len() {
            return bad("variable image out of range");
        }
        if r.point_map[v].len() != chi.value_count(v) {
            return bad("renaming does not cover every source value");
        }
        if r.point_map[v].iter().any(|&c| c as usize >= target_values[x]) {
            return bad("value image out of range");
        }
    }
    Ok(())
}

fn check_context(chi: &CspPattern, r: &Renaming, target: &Context) -> Result<(), OccurrenceError> {
    let ctx = chi.context();
    for c in chi.constraints() {
        let s = c.scope();
        if r.var_map[s.lo()] == r.var_map[s.hi()] {
            return Err(OccurrenceError::IllegalMerge(s.lo(), s.hi()));
        }
    }
    for (u, v) in ctx.neq_vars() {
        if !target.distinct_vars(r.var_map[u], r.var_map[v]) {
            return Err(OccurrenceError::NotHomomorphic(format!("{u} != {v} not preserved")));
        }
    }
    if let Some(order) = ctx.var_order() {
        let Some(t_order) = target.var_order() else {
            return Err(OccurrenceError::IncompatibleContext);
        };
        let pos = positions(t_order, t_order.len());
        for w in order.windows(2) {
            if pos[r.var_map[w[0]]] >= pos[r.var_map[w[1]]] {
                return Err(OccurrenceError::NotHomomorphic(format!("{} < {} not preserved", w[0], w[1])));
            }
        }
    }
    for (p, q) in ctx.neq_values() {
        if !target.distinct_values(r.image(p), r.image(q)) {
            return Err(OccurrenceError::NotHomomorphic(format!("{p} != {q} not preserved")));
        }
    }
    if ctx.value_order() {
        if !target.value_order() {
            return Err(OccurrenceError::IncompatibleContext);
        }
        for vals in &r.point_map {
            if vals.windows(2).any(|w| w[0] >= w[1]) {
                return Err(OccurrenceError::NotHomomorphic("value order not preserved".into()));
            }
        }
    }
    Ok(())
}

/// Image entries of every source constraint, merged by join.
fn renamed_entries(chi: &CspPattern, r: &Renaming) -> Result<BTreeMap<(Point, Point), TruthValue>, OccurrenceError> {
    let mut out: BTreeMap<(Point, Point), TruthValue> = BTreeMap::new();
    for c in chi.constraints() {
        let mut local: BTreeMap<(Point, Point), TruthValue> = BTreeMap::new();
        let s = c.scope();
        for ((a, b), tv) in c.entries() {
            let (p, q) = (r.image(Point::new(s.lo(), a)), r.image(Point::new(s.hi(), b)));
            let key = (p.min(q), p.max(q));
            let merged = local.get(&key).map_or(Some(tv), |&old| old.join(tv));
            local.insert(key, merged.ok_or(OccurrenceError::IncomparableMerge(key.0, key.1))?);
        }
        for (key, tv) in local {
            let merged = out.get(&key).map_or(Some(tv), |&old| old.join(tv));
            out.insert(key, merged.ok_or(OccurrenceError::IncomparableMerge(key.0, key.1))?);
        }
    }
    Ok(out)
}

/// Renamed pattern over the target's variables and values.
pub fn apply_renaming(
    chi: &CspPattern,
    r: &Renaming,
    target_values: &[usize],
    target_context: &Context,
) -> Result<CspPattern, OccurrenceError> {
    check_shape(chi, r, target_values)?;
    check_context(chi, r, target_context)?;
    let entries = renamed_entries(chi, r)?;
    let mut b = CspPattern::builder(target_values.to_vec());
    for ((p, q), tv) in entries {
        b = b.entry((p.var, p.value), (q.var, q.value), tv);
    }
    let renamed = b.build().map_err(|e| OccurrenceError::Malformed(e.to_string()))?;
    renamed
        .with_context(target_context.clone())
        .map_err(|e| OccurrenceError::Malformed(e.to_string()))
}

/// Checks a claimed occurrence of `chi` in a pattern against the definition.
pub fn verify_occurrence(chi: &CspPattern, target: &CspPattern, r: &Renaming) -> Result<(), OccurrenceError> {
    let renamed = apply_renaming(chi, r, target.value_counts(), target.context())?;
    for c in renamed.constraints() {
        let s = c.scope();
        let realised = c.entries().all(|((a, b), tv)| {
            tv.leq(target.truth(Point::new(s.lo(), a), Point::new(s.hi(), b)))
        });
        if !realised {
            return Err(OccurrenceError::NotRealised(s));
        }
    }
    Ok(())
}

/// Checks a claimed occurrence of `chi` in an instance, optionally under a variable order.
/// Instance variables and values are all distinct; values are ordered by label.
pub fn verify_instance_occurrence(
    chi: &CspPattern,
    p: &CspInstance,
    order: Option<&[usize]>,
    r: &Renaming,
) -> Result<(), OccurrenceError> {
    let bad = |m: &str| Err(OccurrenceError::Malformed(m.to_string()));
    if r.var_map.len() != chi.num_vars() || r.point_map.len() != chi.num_vars() {
        return bad("renaming does not cover every source variable");
    }
    for v in 0..chi.num_vars() {
        if r.var_map[v] >= p.num_vars() || r.point_map[v].len() != chi.value_count(v) {
            return bad("renaming does not fit");
        }
        if r.point_map[v].iter().any(|&c| !p.in_domain(r.var_map[v], c)) {
            return bad("value image outside the target domain");
        }
    }
    let ctx = chi.context();
    for c in chi.constraints() {
        let s = c.scope();
        if r.var_map[s.lo()] == r.var_map[s.hi()] {
            return Err(OccurrenceError::IllegalMerge(s.lo(), s.hi()));
        }
    }
    for (u, v) in ctx.neq_vars() {
        if r.var_map[u] == r.var_map[v] {
            return Err(OccurrenceError::NotHomomorphic(format!("{u} != {v} not preserved")));
        }
    }
    if let Some(src_order) = ctx.var_order() {
        let Some(o) = order else {
            return Err(OccurrenceError::IncompatibleContext);
        };
        check_order(o, p.num_vars())?;
        let pos = positions(o, o.len());
        if src_order.windows(2).any(|w| pos[r.var_map[w[0]]] >= pos[r.var_map[w[1]]]) {
            return Err(OccurrenceError::NotHomomorphic("variable order not preserved".into()));
        }
    }
    for (a, b) in ctx.neq_values() {
        if r.image(a) == r.image(b) {
            return Err(OccurrenceError::NotHomomorphic(format!("{a} != {b} not preserved")));
        }
    }
    if ctx.value_order() && r.point_map.iter().any(|v| v.windows(2).any(|w| w[0] >= w[1])) {
        return Err(OccurrenceError::NotHomomorphic("value order not preserved".into()));
    }
    for ((a, b), tv) in renamed_entries(chi, r)? {
        let host = if p.is_disallowed(a, b) { TruthValue::False } else { TruthValue::True };
        if !tv.leq(host) {
            return Err(OccurrenceError::NotRealised(Scope::new(a.var, b.var).expect("never merged")));
        }
    }
    Ok(())
}
