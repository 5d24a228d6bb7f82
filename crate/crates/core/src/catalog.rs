//! Named patterns and pattern sets generated from polymorphisms.
//!
//! Two-valued chain variables use local value `0` for `a` and `1` for `b`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{CspPattern, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown pattern name `{0}`")]
    UnknownName(String),
    #[error("enumeration needs {needed} tuple choices, bound is {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
}

/// Identifier of a catalog pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedPattern {
    Simple,
    Max2,
    Tree,
    Btp,
    Negtrans,
    Cycle(usize),
    Valency,
    Path,
    ValencyPath,
    Pivot(usize),
    SepPivot(usize),
}

impl NamedPattern {
    pub fn build(self) -> Result<CspPattern, CatalogError> {
        match self {
            NamedPattern::Simple => Ok(simple()),
            NamedPattern::Max2 => Ok(max2()),
            NamedPattern::Tree => Ok(tree()),
            NamedPattern::Btp => Ok(btp()),
            NamedPattern::Negtrans => Ok(negtrans()),
            NamedPattern::Cycle(k) => cycle(k),
            NamedPattern::Valency => Ok(valency()),
            NamedPattern::Path => Ok(path()),
            NamedPattern::ValencyPath => Ok(valency_path()),
            NamedPattern::Pivot(r) => pivot(r),
            NamedPattern::SepPivot(r) => sep_pivot(r),
        }
    }
}

impl fmt::Display for NamedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedPattern::Simple => write!(f, "simple"),
            NamedPattern::Max2 => write!(f, "max2"),
            NamedPattern::Tree => write!(f, "tree"),
            NamedPattern::Btp => write!(f, "btp"),
            NamedPattern::Negtrans => write!(f, "negtrans"),
            NamedPattern::Cycle(k) => write!(f, "cycle:{k}"),
            NamedPattern::Valency => write!(f, "valency"),
            NamedPattern::Path => write!(f, "path"),
            NamedPattern::ValencyPath => write!(f, "valency-path"),
            NamedPattern::Pivot(r) => write!(f, "pivot:{r}"),
            NamedPattern::SepPivot(r) => write!(f, "sep-pivot:{r}"),
        }
    }
}

impl FromStr for NamedPattern {
    type Err = CatalogError;

    /// Parses `name` or `name:param`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((n, p)) => {
                let k = p
                    .parse::<usize>()
                    .map_err(|_| CatalogError::BadParameter(format!("`{p}` is not an integer")))?;
                (n.to_string(), Some(k))
            }
            None => (lower.clone(), None),
        };
        let need = |p: Option<usize>| {
            p.ok_or_else(|| CatalogError::BadParameter(format!("`{name}` needs a parameter")))
        };
        let plain = |x: NamedPattern| match param {
            None => Ok(x),
            Some(_) => Err(CatalogError::BadParameter(format!("`{name}` takes no parameter"))),
        };
        match name.as_str() {
            "simple" => plain(NamedPattern::Simple),
            "max2" => plain(NamedPattern::Max2),
            "tree" => plain(NamedPattern::Tree),
            "btp" => plain(NamedPattern::Btp),
            "negtrans" => plain(NamedPattern::Negtrans),
            "cycle" => Ok(NamedPattern::Cycle(need(param)?)),
            "valency" => plain(NamedPattern::Valency),
            "path" => plain(NamedPattern::Path),
            "valency-path" | "valencypath" | "valency+path" => plain(NamedPattern::ValencyPath),
            "pivot" => Ok(NamedPattern::Pivot(need(param)?)),
            "sep-pivot" | "seppivot" => Ok(NamedPattern::SepPivot(need(param)?)),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

/// Builds a catalog pattern; the parameter is required for `Cycle` (k ≥ 2) and the pivots (r ≥ 1).
pub fn build(name: NamedPattern) -> Result<CspPattern, CatalogError> {
    name.build()
}

fn done(b: crate::model::PatternBuilder) -> CspPattern {
    b.build().expect("catalog patterns are well formed")
}

/// `x` has two distinct values, each in conflict with a different variable.
pub fn simple() -> CspPattern {
    // v = 0 {a}, w = 1 {b}, x = 2 {c, c'}
    done(
        CspPattern::builder(vec![1, 1, 2])
            .f((0, 0), (2, 0))
            .f((1, 0), (2, 1))
            .distinct(&[0, 1, 2])
            .distinct_values(2, 0, 1),
    )
}

/// Two ordered Boolean variables whose constraint is not closed under max.
pub fn max2() -> CspPattern {
    done(
        CspPattern::builder(vec![2, 2])
            .t((0, 0), (1, 1))
            .t((0, 1), (1, 0))
            .f((0, 1), (1, 1))
            .distinct(&[0, 1])
            .value_order(),
    )
}

/// A variable with two earlier constrained neighbours.
pub fn tree() -> CspPattern {
    done(
        CspPattern::builder(vec![1, 1, 2])
            .f((0, 0), (2, 1))
            .f((1, 0), (2, 0))
            .var_order(vec![0, 1, 2]),
    )
}

/// Broken triangle over `v1 < v2 < v3`, with `v3` taking `a = 0` and `b = 1`.
pub fn btp() -> CspPattern {
    done(
        CspPattern::builder(vec![1, 1, 2])
            .t((0, 0), (1, 0))
            .t((0, 0), (2, 0))
            .t((1, 0), (2, 1))
            .f((0, 0), (2, 1))
            .f((1, 0), (2, 0))
            .var_order(vec![0, 1, 2]),
    )
}

/// `v` and `w` both conflict with `x` but are compatible with each other.
pub fn negtrans() -> CspPattern {
    // v = 0, w = 1, x = 2
    done(
        CspPattern::builder(vec![1, 1, 1])
            .f((0, 0), (2, 0))
            .f((1, 0), (2, 0))
            .t((0, 0), (1, 0))
            .distinct(&[0, 1, 2]),
    )
}

/// `k` Boolean variables in a ring; each conflict leaves from value 1 and enters value 0.
pub fn cycle(k: usize) -> Result<CspPattern, CatalogError> {
    if k < 2 {
        return Err(CatalogError::BadParameter(format!("cycle length {k} < 2")));
    }
    let vars: Vec<usize> = (0..k).collect();
    let mut b = CspPattern::builder(vec![2; k]).distinct(&vars);
    for i in 0..k {
        b = b.f((i, 1), ((i + 1) % k, 0));
    }
    if k == 2 {
        b = b.distinct_values(0, 0, 1);
    }
    Ok(done(b))
}

/// Two three-leaf stars. Centers `x = 0`, `x' = 4`; leaves `1..=3` and `5..=7`.
pub fn valency() -> CspPattern {
    let mut b = CspPattern::builder(vec![3, 1, 1, 1, 3, 1, 1, 1]);
    for i in 0..3 {
        b = b.f((0, i as Value), (1 + i, 0)).f((4, i as Value), (5 + i, 0));
    }
    done(b.distinct(&[1, 2, 3, 5]).distinct(&[5, 6, 7]))
}

/// Two paths of two conflicts each: `v1 v2 v3 = 0 1 2` and `w1 w2 w3 = 3 4 5`.
pub fn path() -> CspPattern {
    done(
        CspPattern::builder(vec![1; 6])
            .f((0, 0), (1, 0))
            .f((1, 0), (2, 0))
            .f((3, 0), (4, 0))
            .f((4, 0), (5, 0))
            .distinct(&[0, 1, 2, 3])
            .distinct(&[3, 4, 5]),
    )
}

/// A three-leaf star (center `0`, leaves `1..=3`) and a path `w1 w2 w3 = 4 5 6`.
pub fn valency_path() -> CspPattern {
    let mut b = CspPattern::builder(vec![3, 1, 1, 1, 1, 1, 1]);
    for i in 0..3 {
        b = b.f((0, i as Value), (1 + i, 0));
    }
    done(
        b.f((4, 0), (5, 0))
            .f((5, 0), (6, 0))
            .distinct(&[1, 2, 3])
            .distinct(&[4, 5, 6])
            .distinct(&[0, 5]),
    )
}

/// Variable indices of a three-armed star: the pivot is `0`; arm `j` occupies `1 + j*r ..= (j+1)*r`.
pub fn arm_var(r: usize, arm: usize, i: usize) -> usize {
    1 + arm * r + i
}

fn pivot_like(r: usize, anchors: [Value; 3], pivot_values: usize) -> Result<CspPattern, CatalogError> {
    if r < 1 {
        return Err(CatalogError::BadParameter("arm length must be at least 1".into()));
    }
    let n = 3 * r + 1;
    let mut values = vec![2; n];
    values[0] = pivot_values;
    let mut b = CspPattern::builder(values).distinct(&(0..n).collect::<Vec<_>>());
    for (arm, &anchor) in anchors.iter().enumerate() {
        b = b.f((0, anchor), (arm_var(r, arm, 0), 1));
        for i in 0..r - 1 {
            b = b.f((arm_var(r, arm, i), 0), (arm_var(r, arm, i + 1), 1));
        }
    }
    Ok(done(b))
}

/// Three chains of length `r` on a pivot: two anchored at the pivot's `a`, one at `b`.
pub fn pivot(r: usize) -> Result<CspPattern, CatalogError> {
    pivot_like(r, [0, 0, 1], 2)
}

/// As [`pivot`], with each chain anchored at its own pivot value `a`, `b`, `c`.
pub fn sep_pivot(r: usize) -> Result<CspPattern, CatalogError> {
    pivot_like(r, [0, 1, 2], 3)
}

/// Small patterns illustrating bijective, value-merging and variable-merging containment.
pub mod demo {
    use super::done;
    use crate::model::CspPattern;

    /// `x = 0 {a, b}`, `y = 1 {c, d}` with `ad`, `bc` allowed and `bd` forbidden.
    pub fn host() -> CspPattern {
        done(CspPattern::builder(vec![2, 2]).t((0, 0), (1, 1)).t((0, 1), (1, 0)).f((0, 1), (1, 1)))
    }

    /// [`host`] with `bd` left undefined; contained by a bijection.
    pub fn crossed() -> CspPattern {
        done(CspPattern::builder(vec![2, 2]).t((0, 0), (1, 1)).t((0, 1), (1, 0)))
    }

    /// `y` has values `d, c, d'`; `d` and `d'` behave alike and merge onto `d`.
    pub fn value_merge() -> CspPattern {
        done(
            CspPattern::builder(vec![2, 3])
                .f((0, 1), (1, 0))
                .t((0, 1), (1, 1))
                .f((0, 1), (1, 2))
                .t((0, 0), (1, 0))
                .t((0, 0), (1, 2)),
        )
    }

    /// `x = 0 {a}`, `y = 1 {c, d}`, `z = 2 {b}`; `x` and `z` share no constraint and merge onto `x`.
    pub fn variable_merge() -> CspPattern {
        done(
            CspPattern::builder(vec![1, 2, 1])
                .t((0, 0), (1, 1))
                .t((2, 0), (1, 0))
                .f((2, 0), (1, 1)),
        )
    }
}

/// Two-variable patterns forbidding exactly the binary relations not closed under `f`.
///
/// Each choice of `k` labellings `x_1..x_k` over `domain²` yields one pattern with every `x_i`
/// allowed and the componentwise image forbidden. Values are relabelled per variable in
/// increasing order and the pattern carries a value order, so the set is exact for operations
/// that commute with order-preserving injections (max, min, medians).
pub fn patterns_from_polymorphism(
    f: &dyn Fn(&[Value]) -> Value,
    k: usize,
    domain: &[Value],
    bound: u128,
) -> Result<BTreeSet<CspPattern>, CatalogError> {
    if k == 0 || domain.is_empty() {
        return Err(CatalogError::BadParameter("arity and domain must be nonempty".into()));
    }
    let d = domain.len() as u128;
    let needed = d.checked_pow(2 * k as u32).unwrap_or(u128::MAX);
    if needed > bound {
        return Err(CatalogError::BoundExceeded { needed, bound });
    }
    let pairs: Vec<(Value, Value)> =
        domain.iter().flat_map(|&a| domain.iter().map(move |&b| (a, b))).collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let tuples: Vec<(Value, Value)> = idx.iter().map(|&i| pairs[i]).collect();
        let firsts: Vec<Value> = tuples.iter().map(|t| t.0).collect();
        let seconds: Vec<Value> = tuples.iter().map(|t| t.1).collect();
        let image = (f(&firsts), f(&seconds));
        if !tuples.contains(&image) {
            out.insert(two_variable_pattern(&tuples, image));
        }
        let mut i = 0;
        while i < k {
            idx[i] += 1;
            if idx[i] < pairs.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(out)
}

fn two_variable_pattern(allowed: &[(Value, Value)], forbidden: (Value, Value)) -> CspPattern {
    let mut xs: Vec<Value> = allowed.iter().map(|t| t.0).chain([forbidden.0]).collect();
    let mut ys: Vec<Value> = allowed.iter().map(|t| t.1).chain([forbidden.1]).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let rank = |list: &[Value], v: Value| list.binary_search(&v).expect("collected above") as Value;
    let mut b = CspPattern::builder(vec![xs.len(), ys.len()]).distinct(&[0, 1]).value_order();
    for &(a, c) in allowed {
        b = b.t((0, rank(&xs, a)), (1, rank(&ys, c)));
    }
    b = b.f((0, rank(&xs, forbidden.0)), (1, rank(&ys, forbidden.1)));
    done(b)
}
