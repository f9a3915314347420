//! Unrefinable partitions into distinct parts, numerical sets and Young
//! diagrams.
//!
//! A partition `λ = (λ_1 < … < λ_t)` is *unrefinable* when no part is the sum
//! of two distinct values missing from it. Reading the parts as the gaps of a
//! numerical set and drawing that set as a Young diagram turns the question
//! into one about hook lengths. On top of that the crate enumerates the
//! maximal unrefinable partitions of a weight and realizes their
//! correspondences with partitions into distinct parts.

pub mod bijection;
pub mod criteria;
pub mod error;
pub mod harness;
pub mod maximal;
pub mod numset;
pub mod partition;
pub mod young;

pub use bijection::{backward, classify, forward, BijectionCase, CaseKind, EtaPartition};
pub use criteria::{is_unrefinable, is_unrefinable_definitional, is_unrefinable_geometric, verdicts_agree};
pub use error::{Error, Result};
pub use maximal::{lambda_t_bound, maximal_unrefinable, max_missing_subfamily, SearchMode};
pub use numset::NumericalSet;
pub use partition::{enumerate_distinct, triangular_decompose, DistinctPartition, PartClassFilter, Parity};
pub use young::{kn_inverse, kn_transform, YoungDiagram};
