//! Instance families: the 3SAT gadget reduction, the `P_n` family, AllDifferent with unary
//! domains, and seeded random instances and patterns.
//!
//! Randomness comes from ChaCha8 seeded with [`SeededRng::new`]. Floats are the top 53 bits of
//! a `u64` scaled by `2^-53`; bounded integers are `(x * n) >> 64` on a fresh `u64`. Both are
//! fixed here so streams are bit-stable across platforms and crate upgrades.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::model::{CspInstance, CspPattern, TruthValue, Value};
use crate::occurrence::{first_occurrence, first_occurrence_ordered, OccurrenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no acceptable sample within {attempts} attempts")]
    SamplingFailed { attempts: usize },
    #[error(transparent)]
    Occurrence(#[from] OccurrenceError),
}

fn bad(msg: impl Into<String>) -> GenError {
    GenError::BadParameter(msg.into())
}

/// Deterministic pseudo-random stream.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

/// A CNF formula with exactly three literals per clause. Literals are non-zero integers whose
/// magnitude is a variable in `1..=num_vars` and whose sign is the polarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula3Sat {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl Formula3Sat {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, GenError> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(bad(format!("literal {l} outside 1..={num_vars}")));
                }
            }
        }
        Ok(Formula3Sat { num_vars, clauses })
    }

    /// Clauses with fewer than three literals repeat their last literal.
    pub fn padded(num_vars: usize, clauses: &[Vec<i32>]) -> Result<Self, GenError> {
        let mut out = Vec::with_capacity(clauses.len());
        for c in clauses {
            match c.len() {
                0 => return Err(bad("empty clause")),
                1..=3 => {
                    let last = *c.last().expect("nonempty");
                    out.push([c[0], *c.get(1).unwrap_or(&last), *c.get(2).unwrap_or(&last)]);
                }
                k => return Err(bad(format!("clause with {k} literals"))),
            }
        }
        Formula3Sat::new(num_vars, out)
    }

    /// Reads DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header, and
    /// zero-terminated clauses, padded as in [`Formula3Sat::padded`].
    pub fn parse_dimacs(text: &str) -> Result<Self, GenError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| GenError::Parse { line: line_no, message };
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
                continue;
            }
            if t.starts_with('p') {
                let f: Vec<&str> = t.split_whitespace().collect();
                if f.len() != 4 || f[1] != "cnf" || header.is_some() {
                    return Err(err(format!("bad header {t:?}")));
                }
                let n = f[2].parse().map_err(|_| err(format!("bad variable count {:?}", f[2])))?;
                let m = f[3].parse().map_err(|_| err(format!("bad clause count {:?}", f[3])))?;
                header = Some((n, m));
                continue;
            }
            let Some((n, _)) = header else {
                return Err(err("clause before header".into()));
            };
            for tok in t.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| err(format!("bad literal {tok:?}")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if l.unsigned_abs() as usize > n {
                    return Err(err(format!("literal {l} exceeds {n} variables")));
                } else {
                    current.push(l);
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(GenError::Parse { line: text.lines().count(), message: "missing header".into() });
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != m {
            return Err(bad(format!("header promises {m} clauses, found {}", clauses.len())));
        }
        Formula3Sat::padded(n, &clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// `values[i]` is the truth value of variable `i + 1`.
    pub fn evaluate(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| values[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// Truth-table search; meant for small formulas.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 32, "truth tables limited to 31 variables");
        (0u32..1 << self.num_vars)
            .map(|m| (0..self.num_vars).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .find(|v| self.evaluate(v))
    }

    pub fn random(rng: &mut SeededRng, num_vars: usize, num_clauses: usize) -> Result<Self, GenError> {
        if num_vars == 0 {
            return Err(bad("formula needs a variable"));
        }
        let clauses = (0..num_clauses)
            .map(|_| {
                [0; 3].map(|_| {
                    let v = rng.between(1, num_vars) as i32;
                    if rng.chance(0.5) {
                        v
                    } else {
                        -v
                    }
                })
            })
            .collect();
        Formula3Sat::new(num_vars, clauses)
    }
}

/// Output of [`gen_3sat_instance`] with the variable layout needed to read solutions back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub instance: CspInstance,
    pub ell: usize,
    /// `(i, j)` with `i` in `1..=n` and `j` in `1..=cycle_len` to the variable `x_i^j`.
    pub cycle_index: BTreeMap<(usize, usize), usize>,
    /// `(w, slot)` with `w` in `1..=m` and `slot` in `1..=3` to the first variable of the slot's line.
    pub clause_index: BTreeMap<(usize, usize), usize>,
    /// Clause `w` to its selector variable, whose value names the satisfied slot.
    pub selector_index: BTreeMap<usize, usize>,
    pub cycle_len: usize,
}

impl ReductionArtifact {
    /// Formula assignment read from the first variable of each cycle.
    pub fn decode(&self, solution: &crate::model::Assignment) -> Vec<bool> {
        let n = self.cycle_index.keys().map(|k| k.0).max().unwrap_or(0);
        (1..=n).map(|i| solution.get(self.cycle_index[&(i, 1)]) == Some(TRUE)).collect()
    }
}

const FALSE: Value = 0;
const TRUE: Value = 1;

/// Boolean-domain instance that is satisfiable iff `f` is, with one disallowed pair per
/// constraint, cycles of length `m(ell+1)` and lines of `ell+1` variables.
///
/// Values `0` and `1` stand for false and true; clause selectors take `1..=3`. An implication
/// `a ⇒ b` disallows `(a = 1, b = 0)`.
pub fn gen_3sat_instance(f: &Formula3Sat, ell: usize) -> Result<ReductionArtifact, GenError> {
    let (n, m) = (f.num_vars(), f.clauses().len());
    if ell < 1 {
        return Err(bad("ell must be at least 1"));
    }
    if m < 1 {
        return Err(bad("formula needs a clause"));
    }
    let len = m * (ell + 1);
    if len < 3 {
        return Err(bad(format!("cycle length {len} < 3")));
    }
    let mut domains: Vec<Vec<Value>> = Vec::new();
    let mut fresh = |dom: Vec<Value>| {
        domains.push(dom);
        domains.len() - 1
    };
    let mut cycle_index = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=len {
            cycle_index.insert((i, j), fresh(vec![FALSE, TRUE]));
        }
    }
    let mut pairs: Vec<((usize, Value), (usize, Value))> = Vec::new();
    for i in 1..=n {
        for j in 1..=len {
            let next = cycle_index[&(i, j % len + 1)];
            pairs.push(((cycle_index[&(i, j)], FALSE), (next, TRUE)));
        }
    }
    let mut clause_index = BTreeMap::new();
    let mut selector_index = BTreeMap::new();
    for (w0, clause) in f.clauses().iter().enumerate() {
        let w = w0 + 1;
        let sel = fresh(vec![1, 2, 3]);
        selector_index.insert(w, sel);
        for (slot0, &lit) in clause.iter().enumerate() {
            let slot = slot0 + 1;
            let positive = lit > 0;
            // the line carries the variable's value; the selector forces the literal true
            let line: Vec<usize> = (0..=ell).map(|_| fresh(vec![FALSE, TRUE])).collect();
            clause_index.insert((w, slot), line[0]);
            let forbidden = if positive { FALSE } else { TRUE };
            pairs.push(((sel, slot as Value), (line[0], forbidden)));
            let target = cycle_index[&(lit.unsigned_abs() as usize, w * (ell + 1))];
            let mut chain = line.clone();
            chain.push(target);
            if !positive {
                chain.reverse();
            }
            for k in 0..chain.len() - 1 {
                pairs.push(((chain[k], TRUE), (chain[k + 1], FALSE)));
            }
        }
    }
    let mut b = CspInstance::builder(domains);
    for (p, q) in pairs {
        b.disallow(p, q);
    }
    let instance = b.build().map_err(|e| bad(e.to_string()))?;
    Ok(ReductionArtifact { instance, ell, cycle_index, clause_index, selector_index, cycle_len: len })
}

/// `n` variables over `1..=n`; each pair `v_i, v_j` disallows only `(v_i = j, v_j = i)`.
pub fn gen_pn_family(n: usize) -> Result<CspInstance, GenError> {
    if n < 2 {
        return Err(bad("P_n needs n >= 2"));
    }
    let mut b = CspInstance::builder(vec![(1..=n as Value).collect(); n]);
    for i in 1..=n {
        for j in i + 1..=n {
            b.disallow((i - 1, j as Value), (j - 1, i as Value));
        }
    }
    b.build().map_err(|e| bad(e.to_string()))
}

/// Pairwise disequality over the given domains.
pub fn gen_alldiff_unary(n: usize, domains: &[Vec<Value>]) -> Result<CspInstance, GenError> {
    if domains.len() != n {
        return Err(bad(format!("{} domains for {n} variables", domains.len())));
    }
    let mut b = CspInstance::builder(domains.to_vec());
    for u in 0..n {
        for v in u + 1..n {
            for &a in &domains[u] {
                if domains[v].contains(&a) {
                    b.disallow((u, a), (v, a));
                }
            }
        }
    }
    b.build().map_err(|e| bad(e.to_string()))
}

fn check_density(name: &str, x: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(bad(format!("{name} {x} outside [0, 1]")))
    }
}

/// Domains `0..d`. Each scope, in lexicographic order, is constrained with probability
/// `constraint_density`; each pair of a constrained scope is disallowed with probability
/// `disallowed_density`.
pub fn gen_random_instance(
    n: usize,
    d: usize,
    constraint_density: f64,
    disallowed_density: f64,
    seed: u64,
) -> Result<CspInstance, GenError> {
    check_density("constraint density", constraint_density)?;
    check_density("disallowed density", disallowed_density)?;
    Ok(random_instance(&mut SeededRng::new(seed), n, d, constraint_density, disallowed_density))
}

fn random_instance(rng: &mut SeededRng, n: usize, d: usize, cd: f64, dd: f64) -> CspInstance {
    let mut b = CspInstance::builder(vec![(0..d as Value).collect(); n]);
    for u in 0..n {
        for v in u + 1..n {
            if !rng.chance(cd) {
                continue;
            }
            for a in 0..d as Value {
                for c in 0..d as Value {
                    if rng.chance(dd) {
                        b.disallow((u, a), (v, c));
                    }
                }
            }
        }
    }
    b.build().expect("pairs lie in the domains")
}

/// Size bounds for sampled instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub max_vars: usize,
    pub max_domain: usize,
}

/// One instance from a mixture of proposals: uniform density, one conflict per constrained
/// scope, and coloured points with conflicts between equal colours.
pub fn propose_instance(rng: &mut SeededRng, shape: Shape) -> CspInstance {
    let n = rng.between(1, shape.max_vars.max(1));
    let d = rng.between(1, shape.max_domain.max(1));
    match rng.below(3) {
        0 => {
            let cd = 0.1 + 0.6 * rng.unit();
            let dd = 0.05 + 0.35 * rng.unit();
            random_instance(rng, n, d, cd, dd)
        }
        1 => {
            let cd = 0.2 + 0.8 * rng.unit();
            let mut b = CspInstance::builder(vec![(0..d as Value).collect(); n]);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(cd) {
                        let (a, c) = (rng.below(d) as Value, rng.below(d) as Value);
                        b.disallow((u, a), (v, c));
                    }
                }
            }
            b.build().expect("pairs lie in the domains")
        }
        _ => {
            let colours = rng.between(1, d + 1);
            let colour: Vec<Vec<usize>> = (0..n).map(|_| (0..d).map(|_| rng.below(colours)).collect()).collect();
            let mut b = CspInstance::builder(vec![(0..d as Value).collect(); n]);
            for u in 0..n {
                for v in u + 1..n {
                    for a in 0..d {
                        for c in 0..d {
                            if colour[u][a] == colour[v][c] {
                                b.disallow((u, a as Value), (v, c as Value));
                            }
                        }
                    }
                }
            }
            b.build().expect("pairs lie in the domains")
        }
    }
}

/// Draws proposals until one passes `accept`, giving up after `cap` attempts.
pub fn rejection_sample<T>(
    rng: &mut SeededRng,
    cap: usize,
    mut propose: impl FnMut(&mut SeededRng) -> T,
    mut accept: impl FnMut(&T) -> Result<bool, GenError>,
) -> Result<T, GenError> {
    for _ in 0..cap {
        let x = propose(rng);
        if accept(&x)? {
            return Ok(x);
        }
    }
    Err(GenError::SamplingFailed { attempts: cap })
}

/// An instance in which none of `patterns` occurs (under `order` when given).
pub fn sample_forbidding(
    rng: &mut SeededRng,
    shape: Shape,
    patterns: &[CspPattern],
    order: Option<fn(usize) -> Vec<usize>>,
    cap: usize,
) -> Result<CspInstance, GenError> {
    rejection_sample(
        rng,
        cap,
        |r| propose_instance(r, shape),
        |p| {
            let found = match order {
                Some(f) => first_occurrence_ordered(p, patterns, &f(p.num_vars()))?,
                None => first_occurrence(p, patterns)?,
            };
            Ok(found.is_none())
        },
    )
}

/// A random forest of constraints, each with random disallowed pairs.
pub fn random_forest_instance(rng: &mut SeededRng, shape: Shape) -> CspInstance {
    let n = rng.between(1, shape.max_vars.max(1));
    let d = rng.between(1, shape.max_domain.max(1));
    let dd = 0.1 + 0.5 * rng.unit();
    let mut b = CspInstance::builder(vec![(0..d as Value).collect(); n]);
    for v in 1..n {
        if rng.chance(0.85) {
            let parent = rng.below(v);
            for a in 0..d as Value {
                for c in 0..d as Value {
                    if rng.chance(dd) {
                        b.disallow((parent, a), (v, c));
                    }
                }
            }
        }
    }
    b.build().expect("pairs lie in the domains")
}

/// Random relations closed under componentwise maximum in the numeric value order.
pub fn random_max_closed_instance(rng: &mut SeededRng, shape: Shape) -> CspInstance {
    let n = rng.between(1, shape.max_vars.max(1));
    let d = rng.between(1, shape.max_domain.max(1));
    let cd = 0.2 + 0.6 * rng.unit();
    let keep = 0.2 + 0.5 * rng.unit();
    let mut b = CspInstance::builder(vec![(0..d as Value).collect(); n]);
    for u in 0..n {
        for v in u + 1..n {
            if !rng.chance(cd) {
                continue;
            }
            let mut allowed = vec![vec![false; d]; d];
            for row in allowed.iter_mut() {
                for x in row.iter_mut() {
                    *x = rng.chance(keep);
                }
            }
            let mut changed = true;
            while changed {
                changed = false;
                let pairs: Vec<(usize, usize)> =
                    (0..d).flat_map(|a| (0..d).map(move |c| (a, c))).filter(|&(a, c)| allowed[a][c]).collect();
                for &(a, c) in &pairs {
                    for &(x, y) in &pairs {
                        let (ma, mc) = (a.max(x), c.max(y));
                        if !allowed[ma][mc] {
                            allowed[ma][mc] = true;
                            changed = true;
                        }
                    }
                }
            }
            for a in 0..d {
                for c in 0..d {
                    if !allowed[a][c] {
                        b.disallow((u, a as Value), (v, c as Value));
                    }
                }
            }
        }
    }
    b.build().expect("pairs lie in the domains")
}

/// Knobs for [`random_pattern`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternShape {
    pub max_vars: usize,
    pub max_values: usize,
    /// Probability that a labelling is defined.
    pub entry_density: f64,
    /// Probability that a defined labelling is `F` rather than `T`.
    pub false_share: f64,
    /// Probability that a variable pair is declared distinct.
    pub neq_density: f64,
    /// Probability that two values of one variable are declared distinct.
    pub value_neq_density: f64,
    /// Probability that the pattern orders each variable's values.
    pub value_order_chance: f64,
}

impl PatternShape {
    /// Flat patterns with a given size and entry density.
    pub fn flat(max_vars: usize, max_values: usize, entry_density: f64) -> Self {
        PatternShape {
            max_vars,
            max_values,
            entry_density,
            false_share: 0.5,
            neq_density: 0.5,
            value_neq_density: 0.0,
            value_order_chance: 0.0,
        }
    }
}

pub fn random_pattern(rng: &mut SeededRng, shape: PatternShape) -> CspPattern {
    let n = rng.between(1, shape.max_vars.max(1));
    let values: Vec<usize> = (0..n).map(|_| rng.between(1, shape.max_values.max(1))).collect();
    let mut b = CspPattern::builder(values.clone());
    if rng.chance(shape.value_order_chance) {
        b = b.value_order();
    }
    for (u, &k) in values.iter().enumerate() {
        for a in 0..k as Value {
            for c in a + 1..k as Value {
                if rng.chance(shape.value_neq_density) {
                    b = b.distinct_values(u, a, c);
                }
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(shape.neq_density) {
                b = b.distinct(&[u, v]);
            }
            for a in 0..values[u] as Value {
                for c in 0..values[v] as Value {
                    if rng.chance(shape.entry_density) {
                        let tv = if rng.chance(shape.false_share) { TruthValue::False } else { TruthValue::True };
                        b = b.entry((u, a), (v, c), tv);
                    }
                }
            }
        }
    }
    b.build().expect("random entries are consistent")
}

/// The pattern induced on a random nonempty subset of `tau`'s variables, with some entries
/// forgotten and some distinctness dropped. It occurs in `tau` by inclusion.
pub fn random_subpattern(rng: &mut SeededRng, tau: &CspPattern) -> CspPattern {
    let n = tau.num_vars();
    let mut keep: Vec<usize> = (0..n).filter(|_| rng.chance(0.7)).collect();
    if keep.is_empty() {
        keep.push(rng.below(n));
    }
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut b = CspPattern::builder(keep.iter().map(|&v| tau.value_count(v)).collect());
    for (p, q, tv) in tau.entries() {
        if let (Some(&i), Some(&j)) = (pos.get(&p.var), pos.get(&q.var)) {
            if rng.chance(0.8) {
                b = b.entry((i, p.value), (j, q.value), tv);
            }
        }
    }
    for (u, v) in tau.context().neq_vars() {
        if let (Some(&i), Some(&j)) = (pos.get(&u), pos.get(&v)) {
            if rng.chance(0.8) {
                b = b.distinct(&[i, j]);
            }
        }
    }
    for (p, q) in tau.context().neq_values() {
        if let (Some(&i), Some(&j)) = (pos.get(&p.var), pos.get(&q.var)) {
            if rng.chance(0.8) && i == j {
                b = b.distinct_values(i, p.value, q.value);
            }
        }
    }
    if tau.context().value_order() && rng.chance(0.8) {
        b = b.value_order();
    }
    b.build().expect("entries come from a valid pattern")
}
