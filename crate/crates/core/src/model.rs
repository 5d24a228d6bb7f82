//! Three-valued relations, patterns, instances and their contexts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Value label. Pattern values are dense per-variable indices; instance values are arbitrary labels.
pub type Value = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("variable {0} out of range")]
    VariableOutOfRange(usize),
    #[error("value {value} is not available to variable {var}")]
    ValueOutOfRange { var: usize, value: Value },
    #[error("scope joins variable {0} to itself")]
    SelfScope(usize),
    #[error("entry ({0}, {1}) is given two different truth values")]
    ConflictingEntry(Point, Point),
    #[error("variable order must list every variable exactly once")]
    BadVariableOrder,
    #[error("value disequality {0} != {1} must relate distinct values of one variable")]
    BadValueDisequality(Point, Point),
    #[error("two constraints share scope {0}")]
    DuplicateScope(Scope),
    #[error("pattern carries an order, but a flat pattern is required")]
    IncompatibleContext,
    #[error("assignment leaves variable {0} unassigned")]
    PartialAssignment(usize),
    #[error("assignment covers {got} variables, instance has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("realisation compares constraints over different scopes or value sets")]
    ScopeMismatch,
}

/// Element of the three-valued logic.
///
/// The derived `Ord` is a storage order only. The information order is
/// [`TruthValue::leq`]: `Undefined` lies below both `True` and `False`, which are incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    Undefined,
    True,
    False,
}

impl TruthValue {
    pub fn leq(self, other: TruthValue) -> bool {
        self == other || self == TruthValue::Undefined
    }

    pub fn comparable(self, other: TruthValue) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Least upper bound, `None` for `True` against `False`.
    pub fn join(self, other: TruthValue) -> Option<TruthValue> {
        if self.leq(other) {
            Some(other)
        } else if other.leq(self) {
            Some(self)
        } else {
            None
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue::True => "T",
            TruthValue::False => "F",
            TruthValue::Undefined => "U",
        }
    }
}

/// `truth_leq(a, b)` holds iff `a <= b` in the information order.
pub fn truth_leq(a: TruthValue, b: TruthValue) -> bool {
    a.leq(b)
}

/// Assignment of one value to one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub var: usize,
    pub value: Value,
}

impl Point {
    pub fn new(var: usize, value: Value) -> Self {
        Point { var, value }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.var, self.value)
    }
}

/// Unordered pair of distinct variables, stored lower index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scope {
    lo: usize,
    hi: usize,
}

impl Scope {
    pub fn new(u: usize, v: usize) -> Result<Scope, ModelError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Scope { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Scope { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(ModelError::SelfScope(u)),
        }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }

    /// Orients a labelling of `(p.var, q.var)` to `(lo value, hi value)`.
    pub fn orient(self, p: Point, q: Point) -> (Value, Value) {
        if p.var == self.lo {
            (p.value, q.value)
        } else {
            (q.value, p.value)
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Three-valued relation on one scope. Only non-`Undefined` entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintPattern {
    scope: Scope,
    entries: BTreeMap<(Value, Value), TruthValue>,
}

impl ConstraintPattern {
    pub fn new(scope: Scope) -> Self {
        ConstraintPattern { scope, entries: BTreeMap::new() }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// Value at an oriented labelling `(lo value, hi value)`.
    pub fn get(&self, a: Value, b: Value) -> TruthValue {
        self.entries.get(&(a, b)).copied().unwrap_or(TruthValue::Undefined)
    }

    pub fn at(&self, p: Point, q: Point) -> TruthValue {
        let (a, b) = self.scope.orient(p, q);
        self.get(a, b)
    }

    pub fn set(&mut self, a: Value, b: Value, tv: TruthValue) {
        if tv == TruthValue::Undefined {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), tv);
        }
    }

    /// Oriented non-`Undefined` entries.
    pub fn entries(&self) -> impl Iterator<Item = ((Value, Value), TruthValue)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, tv: TruthValue) -> usize {
        self.entries.values().filter(|&&x| x == tv).count()
    }
}

/// `rho` realises `rho_prime` iff it is pointwise at least as defined.
pub fn realises(
    rho: &ConstraintPattern,
    rho_prime: &ConstraintPattern,
) -> Result<bool, ModelError> {
    if rho.scope != rho_prime.scope {
        return Err(ModelError::ScopeMismatch);
    }
    Ok(rho_prime.entries().all(|((a, b), tv)| tv.leq(rho.get(a, b))))
}

/// Like [`realises`], additionally checking both constraints against the value counts of `pattern`.
pub fn realises_within(
    pattern: &CspPattern,
    rho: &ConstraintPattern,
    rho_prime: &ConstraintPattern,
) -> Result<bool, ModelError> {
    let s = rho.scope;
    let fits = |c: &ConstraintPattern| {
        s.hi < pattern.num_vars()
            && c.entries().all(|((a, b), _)| {
                (a as usize) < pattern.value_count(s.lo) && (b as usize) < pattern.value_count(s.hi)
            })
    };
    if !fits(rho) || !fits(rho_prime) {
        return Err(ModelError::ScopeMismatch);
    }
    realises(rho, rho_prime)
}

/// Disequalities and orders a renaming must preserve.
///
/// Value order compares value indices within one variable: a renaming of an
/// ordered pattern maps each variable's values strictly increasingly.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    neq_vars: BTreeSet<(usize, usize)>,
    var_order: Option<Vec<usize>>,
    neq_values: BTreeSet<(Point, Point)>,
    value_order: bool,
}

impl Context {
    pub fn neq_vars(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neq_vars.iter().copied()
    }

    /// Variables listed from least to greatest.
    pub fn var_order(&self) -> Option<&[usize]> {
        self.var_order.as_deref()
    }

    pub fn neq_values(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.neq_values.iter().copied()
    }

    pub fn value_order(&self) -> bool {
        self.value_order
    }

    pub fn declares_neq(&self, u: usize, v: usize) -> bool {
        self.neq_vars.contains(&(u.min(v), u.max(v)))
    }

    /// Variables known to be distinct, either declared or separated by the order.
    pub fn distinct_vars(&self, u: usize, v: usize) -> bool {
        u != v && (self.var_order.is_some() || self.declares_neq(u, v))
    }

    pub fn distinct_values(&self, p: Point, q: Point) -> bool {
        self.neq_values.contains(&(p.min(q), p.max(q)))
    }

    /// Flat contexts carry variable disequalities only.
    pub fn is_flat(&self) -> bool {
        self.var_order.is_none() && self.neq_values.is_empty() && !self.value_order
    }
}

/// Variables with per-variable value sets, partially defined binary relations and a context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CspPattern {
    values: Vec<usize>,
    constraints: BTreeMap<Scope, ConstraintPattern>,
    context: Context,
}

impl CspPattern {
    pub fn builder(values: Vec<usize>) -> PatternBuilder {
        PatternBuilder {
            values,
            entries: Vec::new(),
            neq_vars: Vec::new(),
            var_order: None,
            neq_values: Vec::new(),
            value_order: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn value_count(&self, v: usize) -> usize {
        self.values[v]
    }

    pub fn value_counts(&self) -> &[usize] {
        &self.values
    }

    pub fn num_points(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    /// Non-trivial constraints in scope order.
    pub fn constraints(&self) -> impl Iterator<Item = &ConstraintPattern> {
        self.constraints.values()
    }

    pub fn constraint(&self, scope: Scope) -> Option<&ConstraintPattern> {
        self.constraints.get(&scope)
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Truth value of a labelling; absent scopes read as all-`Undefined`.
    pub fn truth(&self, p: Point, q: Point) -> TruthValue {
        match Scope::new(p.var, q.var) {
            Ok(s) => self.constraints.get(&s).map_or(TruthValue::Undefined, |c| c.at(p, q)),
            Err(_) => TruthValue::Undefined,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.constraints.values().all(|c| c.count(TruthValue::True) == 0)
    }

    pub fn is_flat(&self) -> bool {
        self.context.is_flat()
    }

    pub fn count_entries(&self, tv: TruthValue) -> usize {
        self.constraints.values().map(|c| c.count(tv)).sum()
    }

    /// All entries as `(point, point, value)` with the lower variable first.
    pub fn entries(&self) -> impl Iterator<Item = (Point, Point, TruthValue)> + '_ {
        self.constraints.values().flat_map(|c| {
            let s = c.scope();
            c.entries().map(move |((a, b), tv)| (Point::new(s.lo, a), Point::new(s.hi, b), tv))
        })
    }

    /// `T` entries become `U`; orders and value disequalities are dropped.
    /// Variable disequalities survive, together with those implied by shared non-trivial scopes.
    pub fn neg(&self) -> CspPattern {
        let mut constraints = BTreeMap::new();
        let mut neq_vars = self.context.neq_vars.clone();
        for c in self.constraints.values() {
            neq_vars.insert((c.scope.lo, c.scope.hi));
            let mut d = ConstraintPattern::new(c.scope);
            for ((a, b), tv) in c.entries() {
                if tv == TruthValue::False {
                    d.set(a, b, tv);
                }
            }
            if !d.is_trivial() {
                constraints.insert(c.scope, d);
            }
        }
        if let Some(order) = &self.context.var_order {
            for (i, &u) in order.iter().enumerate() {
                for &v in &order[i + 1..] {
                    let s = (u.min(v), u.max(v));
                    if self.constraints.contains_key(&Scope { lo: s.0, hi: s.1 }) {
                        neq_vars.insert(s);
                    }
                }
            }
        }
        CspPattern {
            values: self.values.clone(),
            constraints,
            context: Context { neq_vars, ..Context::default() },
        }
    }

    /// Disjoint union of two flat patterns. Cross labellings are `U`; all cross variable pairs are distinct.
    pub fn disjoint_union(&self, other: &CspPattern) -> Result<CspPattern, ModelError> {
        if self.context.var_order.is_some() || other.context.var_order.is_some() {
            return Err(ModelError::IncompatibleContext);
        }
        if self.context.value_order || other.context.value_order {
            return Err(ModelError::IncompatibleContext);
        }
        let shift = self.num_vars();
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        let mut constraints = self.constraints.clone();
        for c in other.constraints.values() {
            let s = Scope { lo: c.scope.lo + shift, hi: c.scope.hi + shift };
            constraints.insert(s, ConstraintPattern { scope: s, entries: c.entries.clone() });
        }
        let mut neq_vars = self.context.neq_vars.clone();
        neq_vars.extend(other.context.neq_vars.iter().map(|&(u, v)| (u + shift, v + shift)));
        for u in 0..shift {
            for v in shift..values.len() {
                neq_vars.insert((u, v));
            }
        }
        let mut neq_values = self.context.neq_values.clone();
        let lift = |p: Point| Point::new(p.var + shift, p.value);
        neq_values.extend(other.context.neq_values.iter().map(|&(p, q)| (lift(p), lift(q))));
        Ok(CspPattern {
            values,
            constraints,
            context: Context { neq_vars, var_order: None, neq_values, value_order: false },
        })
    }

    /// Same relations with every pair of variables and every pair of values of one variable declared distinct.
    pub fn with_distinct_closure(&self) -> CspPattern {
        let n = self.num_vars();
        let mut context = self.context.clone();
        for u in 0..n {
            for v in u + 1..n {
                context.neq_vars.insert((u, v));
            }
            for a in 0..self.values[u] {
                for b in a + 1..self.values[u] {
                    context
                        .neq_values
                        .insert((Point::new(u, a as Value), Point::new(u, b as Value)));
                }
            }
        }
        CspPattern { values: self.values.clone(), constraints: self.constraints.clone(), context }
    }

    /// Replaces the context wholesale after validating it.
    pub fn with_context(&self, context: Context) -> Result<CspPattern, ModelError> {
        validate_context(&self.values, &context)?;
        Ok(CspPattern { values: self.values.clone(), constraints: self.constraints.clone(), context })
    }
}

/// Accumulates entries and context, validating on [`PatternBuilder::build`].
#[derive(Debug, Clone)]
pub struct PatternBuilder {
    values: Vec<usize>,
    entries: Vec<(Point, Point, TruthValue)>,
    neq_vars: Vec<(usize, usize)>,
    var_order: Option<Vec<usize>>,
    neq_values: Vec<(Point, Point)>,
    value_order: bool,
}

impl PatternBuilder {
    pub fn entry(mut self, p: (usize, Value), q: (usize, Value), tv: TruthValue) -> Self {
        self.entries.push((Point::new(p.0, p.1), Point::new(q.0, q.1), tv));
        self
    }

    pub fn f(self, p: (usize, Value), q: (usize, Value)) -> Self {
        self.entry(p, q, TruthValue::False)
    }

    pub fn t(self, p: (usize, Value), q: (usize, Value)) -> Self {
        self.entry(p, q, TruthValue::True)
    }

    /// Declares the listed variables pairwise distinct.
    pub fn distinct(mut self, vars: &[usize]) -> Self {
        for (i, &u) in vars.iter().enumerate() {
            for &v in &vars[i + 1..] {
                self.neq_vars.push((u, v));
            }
        }
        self
    }

    pub fn distinct_values(mut self, var: usize, a: Value, b: Value) -> Self {
        self.neq_values.push((Point::new(var, a), Point::new(var, b)));
        self
    }

    pub fn var_order(mut self, order: Vec<usize>) -> Self {
        self.var_order = Some(order);
        self
    }

    pub fn value_order(mut self) -> Self {
        self.value_order = true;
        self
    }

    pub fn build(self) -> Result<CspPattern, ModelError> {
        let n = self.values.len();
        let mut constraints: BTreeMap<Scope, ConstraintPattern> = BTreeMap::new();
        for (p, q, tv) in self.entries {
            check_point(&self.values, p)?;
            check_point(&self.values, q)?;
            let s = Scope::new(p.var, q.var)?;
            let c = constraints.entry(s).or_insert_with(|| ConstraintPattern::new(s));
            let (a, b) = s.orient(p, q);
            let old = c.get(a, b);
            if old != TruthValue::Undefined && old != tv {
                return Err(ModelError::ConflictingEntry(p, q));
            }
            c.set(a, b, tv);
        }
        constraints.retain(|_, c| !c.is_trivial());
        let mut context = Context { value_order: self.value_order, ..Context::default() };
        for (u, v) in self.neq_vars {
            let s = Scope::new(u, v)?;
            if s.hi >= n {
                return Err(ModelError::VariableOutOfRange(s.hi));
            }
            context.neq_vars.insert((s.lo, s.hi));
        }
        for (p, q) in self.neq_values {
            context.neq_values.insert((p.min(q), p.max(q)));
        }
        context.var_order = self.var_order;
        validate_context(&self.values, &context)?;
        Ok(CspPattern { values: self.values, constraints, context })
    }
}

fn check_point(values: &[usize], p: Point) -> Result<(), ModelError> {
    match values.get(p.var) {
        None => Err(ModelError::VariableOutOfRange(p.var)),
        Some(&k) if (p.value as usize) < k => Ok(()),
        Some(_) => Err(ModelError::ValueOutOfRange { var: p.var, value: p.value }),
    }
}

fn validate_context(values: &[usize], context: &Context) -> Result<(), ModelError> {
    let n = values.len();
    for &(u, v) in &context.neq_vars {
        if u >= v {
            return Err(ModelError::SelfScope(u));
        }
        if v >= n {
            return Err(ModelError::VariableOutOfRange(v));
        }
    }
    if let Some(order) = &context.var_order {
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(ModelError::BadVariableOrder);
        }
        for &v in order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(ModelError::BadVariableOrder);
            }
        }
    }
    for &(p, q) in &context.neq_values {
        check_point(values, p)?;
        check_point(values, q)?;
        if p.var != q.var || p.value == q.value {
            return Err(ModelError::BadValueDisequality(p, q));
        }
    }
    Ok(())
}

/// Binary CSP instance. Domains fold in unary constraints; scopes without
/// disallowed pairs carry the complete relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CspInstance {
    domains: Vec<Vec<Value>>,
    constraints: BTreeMap<Scope, Vec<(Value, Value)>>,
}

impl CspInstance {
    pub fn builder(domains: Vec<Vec<Value>>) -> InstanceBuilder {
        let domains = domains
            .into_iter()
            .map(|mut d| {
                d.sort_unstable();
                d.dedup();
                d
            })
            .collect();
        InstanceBuilder { domains, pairs: BTreeMap::new() }
    }

    /// Instance without constraints.
    pub fn unconstrained(domains: Vec<Vec<Value>>) -> CspInstance {
        CspInstance::builder(domains).build().expect("no pairs to validate")
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    /// Sorted domain of `v`.
    pub fn domain(&self, v: usize) -> &[Value] {
        &self.domains[v]
    }

    pub fn domains(&self) -> &[Vec<Value>] {
        &self.domains
    }

    pub fn in_domain(&self, v: usize, a: Value) -> bool {
        self.domains[v].binary_search(&a).is_ok()
    }

    /// Constraints with at least one disallowed pair, as sorted `(lo value, hi value)` lists.
    pub fn constraints(&self) -> impl Iterator<Item = (Scope, &[(Value, Value)])> {
        self.constraints.iter().map(|(&s, v)| (s, v.as_slice()))
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn disallowed(&self, scope: Scope) -> &[(Value, Value)] {
        self.constraints.get(&scope).map_or(&[], |v| v.as_slice())
    }

    pub fn num_disallowed(&self) -> usize {
        self.constraints.values().map(Vec::len).sum()
    }

    pub fn is_disallowed(&self, p: Point, q: Point) -> bool {
        match Scope::new(p.var, q.var) {
            Ok(s) => self
                .constraints
                .get(&s)
                .is_some_and(|pairs| pairs.binary_search(&s.orient(p, q)).is_ok()),
            Err(_) => false,
        }
    }

    /// In-domain and not disallowed.
    pub fn is_allowed(&self, p: Point, q: Point) -> bool {
        self.in_domain(p.var, p.value) && self.in_domain(q.var, q.value) && !self.is_disallowed(p, q)
    }

    pub fn has_empty_domain(&self) -> bool {
        self.domains.iter().any(Vec::is_empty)
    }

    /// Variables sharing a non-complete constraint with `v`, ascending.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.constraints.keys().filter(|s| s.contains(v)).map(|s| s.other(v)).collect();
        out.sort_unstable();
        out
    }

    /// Same constraints over smaller domains; pairs leaving the domains are dropped.
    pub fn restrict(&self, domains: Vec<Vec<Value>>) -> CspInstance {
        debug_assert_eq!(domains.len(), self.domains.len());
        let mut out = CspInstance { domains, constraints: BTreeMap::new() };
        for (&s, pairs) in &self.constraints {
            let kept: Vec<_> = pairs
                .iter()
                .copied()
                .filter(|&(a, b)| out.in_domain(s.lo, a) && out.in_domain(s.hi, b))
                .collect();
            if !kept.is_empty() {
                out.constraints.insert(s, kept);
            }
        }
        out
    }

    /// Subinstance on `vars`, renumbered in the given order.
    pub fn induced(&self, vars: &[usize]) -> CspInstance {
        let mut pos = vec![usize::MAX; self.num_vars()];
        for (i, &v) in vars.iter().enumerate() {
            pos[v] = i;
        }
        let domains = vars.iter().map(|&v| self.domains[v].clone()).collect();
        let mut b = CspInstance::builder(domains);
        for (&s, pairs) in &self.constraints {
            let (i, j) = (pos[s.lo], pos[s.hi]);
            if i != usize::MAX && j != usize::MAX {
                for &(a, c) in pairs {
                    b.disallow((i, a), (j, c));
                }
            }
        }
        b.build().expect("pairs come from a valid instance")
    }

    /// Total pattern with `T` on allowed and `F` on disallowed labellings.
    /// Domain values become indices in ascending label order; all variables and values are distinct
    /// and each variable's values are ordered.
    pub fn as_pattern(&self) -> CspPattern {
        let n = self.num_vars();
        let mut constraints = BTreeMap::new();
        for u in 0..n {
            for v in u + 1..n {
                let s = Scope { lo: u, hi: v };
                let mut c = ConstraintPattern::new(s);
                for (i, &a) in self.domains[u].iter().enumerate() {
                    for (j, &b) in self.domains[v].iter().enumerate() {
                        let tv = if self.is_disallowed(Point::new(u, a), Point::new(v, b)) {
                            TruthValue::False
                        } else {
                            TruthValue::True
                        };
                        c.set(i as Value, j as Value, tv);
                    }
                }
                if !c.is_trivial() {
                    constraints.insert(s, c);
                }
            }
        }
        let values = self.domains.iter().map(Vec::len).collect();
        let pattern = CspPattern { values, constraints, context: Context::default() };
        let mut closed = pattern.with_distinct_closure();
        closed.context.value_order = true;
        closed
    }

    /// Inverse of [`CspInstance::as_pattern`] given the domain labels.
    pub fn from_total_pattern(
        pattern: &CspPattern,
        domains: Vec<Vec<Value>>,
    ) -> Result<CspInstance, ModelError> {
        let mut b = CspInstance::builder(domains.clone());
        for (p, q, tv) in pattern.entries() {
            if tv != TruthValue::False {
                continue;
            }
            let label = |x: Point| {
                domains
                    .get(x.var)
                    .and_then(|d| d.get(x.value as usize))
                    .copied()
                    .ok_or(ModelError::ValueOutOfRange { var: x.var, value: x.value })
            };
            b.disallow((p.var, label(p)?), (q.var, label(q)?));
        }
        b.build()
    }
}

/// Collects disallowed pairs; [`InstanceBuilder::build`] validates them against the domains.
#[derive(Debug, Clone)]
pub struct InstanceBuilder {
    domains: Vec<Vec<Value>>,
    pairs: BTreeMap<(usize, usize), Vec<(Value, Value)>>,
}

impl InstanceBuilder {
    pub fn disallow(&mut self, p: (usize, Value), q: (usize, Value)) -> &mut Self {
        let (p, q) = if p.0 <= q.0 { (p, q) } else { (q, p) };
        self.pairs.entry((p.0, q.0)).or_default().push((p.1, q.1));
        self
    }

    pub fn build(self) -> Result<CspInstance, ModelError> {
        let n = self.domains.len();
        let mut constraints = BTreeMap::new();
        for ((u, v), mut pairs) in self.pairs {
            let s = Scope::new(u, v)?;
            if v >= n {
                return Err(ModelError::VariableOutOfRange(v));
            }
            for &(a, b) in &pairs {
                if self.domains[u].binary_search(&a).is_err() {
                    return Err(ModelError::ValueOutOfRange { var: u, value: a });
                }
                if self.domains[v].binary_search(&b).is_err() {
                    return Err(ModelError::ValueOutOfRange { var: v, value: b });
                }
            }
            pairs.sort_unstable();
            pairs.dedup();
            constraints.insert(s, pairs);
        }
        Ok(CspInstance { domains: self.domains, constraints })
    }
}

/// Possibly partial map from variables to values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<Option<Value>>,
}

impl Assignment {
    pub fn empty(n: usize) -> Self {
        Assignment { values: vec![None; n] }
    }

    pub fn total(values: Vec<Value>) -> Self {
        Assignment { values: values.into_iter().map(Some).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Value> {
        self.values.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, a: Value) {
        self.values[v] = Some(a);
    }

    pub fn unset(&mut self, v: usize) {
        self.values[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Values of a total assignment.
    pub fn to_vec(&self) -> Option<Vec<Value>> {
        self.values.iter().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Option<Value>)> + '_ {
        self.values.iter().copied().enumerate()
    }
}

/// Every variable takes an in-domain value and no disallowed pair is hit.
pub fn is_solution(p: &CspInstance, s: &Assignment) -> Result<bool, ModelError> {
    if s.len() != p.num_vars() {
        return Err(ModelError::AssignmentLength { expected: p.num_vars(), got: s.len() });
    }
    let mut vals = Vec::with_capacity(s.len());
    for (v, a) in s.iter() {
        vals.push(a.ok_or(ModelError::PartialAssignment(v))?);
    }
    if (0..p.num_vars()).any(|v| !p.in_domain(v, vals[v])) {
        return Ok(false);
    }
    Ok(p.constraints().all(|(sc, pairs)| pairs.binary_search(&(vals[sc.lo], vals[sc.hi])).is_err()))
}
