//! Randomized rule-based labeling that builds small dominating sets in cubic
//! graphs of large girth.
//!
//! A maximum matching splits the graph into short paths whose vertices are
//! paired with mates; paths receive random levels and are labeled level by
//! level by a complete, correct rule set. The [`analysis`] module computes
//! the ideal-case label laws and the size bound, [`labeling`] runs the
//! procedure on actual graphs, and [`oracle`] supplies exact and baseline
//! references plus the Monte Carlo harness.

pub mod analysis;
pub mod bundled;
pub mod error;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod reproduce;
pub mod rules;

pub use analysis::{analyze, bound, AnalysisTable, BoundResult, LevelProbabilities};
pub use error::{Error, Result};
pub use graph::{Graph, Matching, PathSystem};
pub use labeling::{run, DominatingSet, Labeling, RunStats};
pub use rules::{InputSymbol, OutputSymbol, RuleSet};
