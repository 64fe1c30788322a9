//! The (𝔤,K)-module structure: generator matrices, structural checks, invariant subspaces,
//! invariant Hermitian forms and the classification verdict.

pub mod checks;
pub mod classify;
pub mod form;
pub mod operator;
pub mod reach;

pub use checks::{band_check, commutator_check, compact_matrix, compact_subalgebra_check, CompactGenerator};
pub use classify::{classify, expected_classification, ClassificationReport, DISCREPANCY_KIND};
pub use form::{invariant_form, FormKind, FormResult};
pub use operator::{action_matrix, ActionModel, GradedOperator};
pub use reach::{reachability, reachability_at, submodule_scan, InvariantSet, ReachGraph};
