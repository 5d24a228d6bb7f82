//! Forbidden-pattern analysis for binary constraint satisfaction problems.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod generators;
pub mod io;
pub mod model;
pub mod occurrence;
pub mod solvers;
