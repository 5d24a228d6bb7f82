//! Arc consistency, a backtracking oracle and one dedicated solver per tractable class.
//!
//! Every dedicated solver checks class membership first and answers
//! [`SolveOutcome::NotInClass`] with an occurrence witness rather than risk a wrong answer.
//! Every returned solution has been checked with [`is_solution`].

mod backtracking;
mod btp;
pub mod matching;
mod max_closed;
mod negtrans;
mod network;
mod pivot1;
mod simple;
mod tree;
mod union;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::NamedPattern;
use crate::model::{is_solution, Assignment, CspInstance, CspPattern, ModelError};
use crate::occurrence::{Occurrence, OccurrenceError};

pub use backtracking::solve_backtracking;
pub use btp::{solve_btp, solve_btp_with};
pub use max_closed::{solve_max_closed, solve_max_closed_with};
pub use negtrans::{solve_negtrans, solve_negtrans_with};
pub use network::enforce_arc_consistency;
pub use pivot1::{solve_pivot1, solve_pivot1_with};
pub use simple::{solve_simple, solve_simple_with};
pub use tree::{solve_tree, solve_tree_with};
pub use union::solve_disjoint_union;

/// A pattern found in an instance, proving it lies outside a solver's class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub pattern: CspPattern,
    /// Variable order the occurrence respects, for ordered patterns.
    pub order: Option<Vec<usize>>,
    pub occurrence: Occurrence,
}

impl Witness {
    pub(crate) fn named(name: NamedPattern, occurrence: Occurrence, order: Option<Vec<usize>>) -> Witness {
        Witness {
            name: name.to_string(),
            pattern: name.build().expect("catalog names build"),
            order,
            occurrence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Assignment),
    Unsatisfiable,
    NotInClass(Box<Witness>),
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution(_))
    }

    pub fn solution(&self) -> Option<&Assignment> {
        match self {
            SolveOutcome::Solution(s) => Some(s),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SolveOutcome::NotInClass(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Occurrence(#[from] OccurrenceError),
    #[error("bad order: {0}")]
    BadOrder(String),
}

fn invariant(msg: impl Into<String>) -> SolveError {
    SolveError::InternalInvariantViolation(msg.into())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Trust the caller that the instance is in class. Wrong answers are possible otherwise.
    pub skip_class_check: bool,
    /// Re-run the class check after every elimination step (Pivot(1) solver).
    pub audit_eliminations: bool,
}

/// Wraps a candidate solution after checking it against `p`.
pub(crate) fn checked(p: &CspInstance, s: Assignment) -> Result<SolveOutcome, SolveError> {
    if is_solution(p, &s)? {
        Ok(SolveOutcome::Solution(s))
    } else {
        Err(invariant("candidate assignment violates a constraint"))
    }
}

/// Solver selection for front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverClass {
    Auto,
    Tree,
    Btp,
    MaxClosed,
    Negtrans,
    Pivot1,
    Simple,
    Generic,
}

impl SolverClass {
    pub const ALL: [SolverClass; 8] = [
        SolverClass::Auto,
        SolverClass::Tree,
        SolverClass::Btp,
        SolverClass::MaxClosed,
        SolverClass::Negtrans,
        SolverClass::Pivot1,
        SolverClass::Simple,
        SolverClass::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverClass::Auto => "auto",
            SolverClass::Tree => "tree",
            SolverClass::Btp => "btp",
            SolverClass::MaxClosed => "maxclosed",
            SolverClass::Negtrans => "negtrans",
            SolverClass::Pivot1 => "pivot1",
            SolverClass::Simple => "simple",
            SolverClass::Generic => "generic",
        }
    }
}

impl fmt::Display for SolverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown solver class {s:?}"))
    }
}

/// Runs the chosen solver; BTP uses the natural variable order and max-closure the numeric value order.
pub fn solve_with_class(p: &CspInstance, class: SolverClass) -> Result<(SolverClass, SolveOutcome), SolveError> {
    let natural: Vec<usize> = (0..p.num_vars()).collect();
    let out = match class {
        SolverClass::Auto => return solve_auto(p),
        SolverClass::Tree => solve_tree(p)?,
        SolverClass::Btp => solve_btp(p, &natural)?,
        SolverClass::MaxClosed => solve_max_closed(p, None)?,
        SolverClass::Negtrans => solve_negtrans(p)?,
        SolverClass::Pivot1 => solve_pivot1(p)?,
        SolverClass::Simple => solve_simple(p)?,
        SolverClass::Generic => solve_backtracking(p),
    };
    Ok((class, out))
}

/// Tries the class solvers cheapest check first and falls back to backtracking.
pub fn solve_auto(p: &CspInstance) -> Result<(SolverClass, SolveOutcome), SolveError> {
    for class in [
        SolverClass::Tree,
        SolverClass::MaxClosed,
        SolverClass::Negtrans,
        SolverClass::Simple,
        SolverClass::Btp,
        SolverClass::Pivot1,
    ] {
        let (c, out) = solve_with_class(p, class)?;
        if !matches!(out, SolveOutcome::NotInClass(_)) {
            return Ok((c, out));
        }
    }
    Ok((SolverClass::Generic, solve_backtracking(p)))
}
