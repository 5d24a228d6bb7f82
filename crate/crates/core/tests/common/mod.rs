//! Definition-level oracles shared by the integration tests. Nothing here calls the search engine.
#![allow(dead_code)]

use std::collections::BTreeMap;

use csppat::model::{is_solution, Assignment, CspInstance, CspPattern, Point, TruthValue, Value};

fn leq(a: TruthValue, b: TruthValue) -> bool {
    a == TruthValue::Undefined || a == b
}

fn distinct_in(target: &CspPattern, x: usize, y: usize) -> bool {
    x != y && (target.context().var_order().is_some() || target.context().declares_neq(x, y))
}

/// Whether some renaming of `chi` into `target` satisfies the definition, found by enumerating
/// every variable map and then every value map point by point.
pub fn brute_occurs(chi: &CspPattern, target: &CspPattern) -> bool {
    let (n, m) = (chi.num_vars(), target.num_vars());
    if chi.context().var_order().is_some() && target.context().var_order().is_none() {
        return false;
    }
    if chi.context().value_order() && !target.context().value_order() {
        return false;
    }
    if n > 0 && m == 0 {
        return false;
    }
    let mut var_map = vec![0usize; n];
    loop {
        if vars_ok(chi, target, &var_map) && points_exist(chi, target, &var_map) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            var_map[i] += 1;
            if var_map[i] < m {
                break;
            }
            var_map[i] = 0;
            i += 1;
        }
    }
}

fn vars_ok(chi: &CspPattern, target: &CspPattern, s: &[usize]) -> bool {
    for c in chi.constraints() {
        if s[c.scope().lo()] == s[c.scope().hi()] {
            return false;
        }
    }
    if chi.context().neq_vars().any(|(u, v)| !distinct_in(target, s[u], s[v])) {
        return false;
    }
    if let Some(order) = chi.context().var_order() {
        let t = target.context().var_order().expect("checked by caller");
        let pos = |x: usize| t.iter().position(|&y| y == x).unwrap();
        if order.windows(2).any(|w| pos(s[w[0]]) >= pos(s[w[1]])) {
            return false;
        }
    }
    (0..chi.num_vars()).all(|v| target.value_count(s[v]) >= 1 || chi.value_count(v) == 0)
}

/// Points mentioned by entries or value context; the others may map anywhere.
fn relevant(chi: &CspPattern) -> Vec<Vec<bool>> {
    let mut r: Vec<Vec<bool>> = chi.value_counts().iter().map(|&k| vec![chi.context().value_order(); k]).collect();
    for (p, q, _) in chi.entries() {
        r[p.var][p.value as usize] = true;
        r[q.var][q.value as usize] = true;
    }
    for (p, q) in chi.context().neq_values() {
        r[p.var][p.value as usize] = true;
        r[q.var][q.value as usize] = true;
    }
    r
}

fn points_exist(chi: &CspPattern, target: &CspPattern, s: &[usize]) -> bool {
    let rel = relevant(chi);
    let points: Vec<Point> = (0..chi.num_vars())
        .flat_map(|v| (0..chi.value_count(v)).map(move |a| Point::new(v, a as Value)))
        .filter(|p| rel[p.var][p.value as usize])
        .collect();
    let mut t: BTreeMap<Point, Value> = BTreeMap::new();
    extend(chi, target, s, &points, 0, &mut t)
}

fn extend(
    chi: &CspPattern,
    target: &CspPattern,
    s: &[usize],
    points: &[Point],
    i: usize,
    t: &mut BTreeMap<Point, Value>,
) -> bool {
    if !partial_ok(chi, target, s, t) {
        return false;
    }
    let Some(&p) = points.get(i) else {
        return true;
    };
    for c in 0..target.value_count(s[p.var]) as Value {
        t.insert(p, c);
        if extend(chi, target, s, points, i + 1, t) {
            return true;
        }
    }
    t.remove(&p);
    false
}

/// Checks every condition whose points are all mapped.
fn partial_ok(chi: &CspPattern, target: &CspPattern, s: &[usize], t: &BTreeMap<Point, Value>) -> bool {
    let img = |p: Point| t.get(&p).map(|&c| Point::new(s[p.var], c));
    for (p, q) in chi.context().neq_values() {
        if let (Some(x), Some(y)) = (img(p), img(q)) {
            if !target.context().distinct_values(x, y) {
                return false;
            }
        }
    }
    if chi.context().value_order() {
        for v in 0..chi.num_vars() {
            let vals: Vec<Value> = (0..chi.value_count(v)).filter_map(|a| t.get(&Point::new(v, a as Value)).copied()).collect();
            if vals.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
    }
    // images of defined labellings: comparable where they coincide, realised by the target
    let mut seen: BTreeMap<(Point, Point), TruthValue> = BTreeMap::new();
    for (p, q, tv) in chi.entries() {
        let (Some(x), Some(y)) = (img(p), img(q)) else { continue };
        let key = (x.min(y), x.max(y));
        if let Some(&old) = seen.get(&key) {
            if old != tv {
                return false;
            }
        }
        seen.insert(key, tv);
        if !leq(tv, target.truth(key.0, key.1)) {
            return false;
        }
    }
    true
}

/// Satisfiability by enumerating every total assignment.
pub fn brute_satisfiable(p: &CspInstance) -> bool {
    let n = p.num_vars();
    if p.has_empty_domain() {
        return false;
    }
    let mut idx = vec![0usize; n];
    loop {
        let s = Assignment::total((0..n).map(|v| p.domain(v)[idx[v]]).collect());
        if is_solution(p, &s).unwrap() {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            idx[i] += 1;
            if idx[i] < p.domain(i).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
