//! Redundancy elimination for finite-domain constraint knowledge bases.
//!
//! A knowledge base ([`model::KnowledgeBase`]) is an ordered list of labeled
//! constraints over variables with finite domains. A constraint is redundant
//! when the remaining ones entail it. This crate finds minimal cores, i.e.
//! smallest-by-inclusion subsets with the same solutions, with two
//! procedures:
//!
//! - [`extraction::sequential`] checks each constraint once.
//! - [`extraction::corediag`] uses divide-and-conquer and needs fewer checks
//!   when most constraints are redundant.
//!
//! Both are driven by a complete backtracking checker
//! ([`consistency::Solver`]) whose calls are counted in
//! [`consistency::CheckStats`]. [`bench`] reproduces redundancy benchmarks by
//! duplicating constraints and shuffling their order, and [`format`] reads and
//! writes the text KB format used by the `corediag` binary.
//!
//! ```
//! use corediag::{extraction, fixtures, consistency::CheckStats};
//!
//! let kb = fixtures::car_prime();
//! let result = extraction::corediag(&kb, &mut CheckStats::new()).unwrap();
//! assert_eq!(result.redundant, vec!["ca".to_string()]);
//! ```

pub mod bench;
pub mod cli;
pub mod consistency;
pub mod extraction;
pub mod fixtures;
pub mod format;
pub mod model;

pub use consistency::{CheckStats, Solver};
pub use extraction::{CoreError, CoreResult, Extractor};
pub use model::{Assignment, Constraint, Expr, KnowledgeBase, Variable};
