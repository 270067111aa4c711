//! Ground answer set and epistemic logic programs: answer sets, world views
//! under several semantics, and bottom-up and top-down epistemic splitting.

pub mod error;
pub mod generate;
pub mod semantics;
pub mod solver;
pub mod splitting;
pub mod stratify;
pub mod syntax;
pub mod topdown;

pub use error::{Error, Result};
pub use semantics::{is_world_view, reduct, world_views, Limits, Semantics, WorldView};
pub use solver::{answer_sets, Interpretation};
pub use splitting::{esp_layered, esp_world_views, split, Splitting};
pub use stratify::{stratify, Stratification};
pub use syntax::{ground, parse_program, Atom, AtomSet, ObjectiveLiteral, Program, Rule, SubjectiveLiteral};
pub use topdown::{
    check_equivalence, tdesp_candidates, tdespb_candidates, EquivalenceReport, RequisiteSets, SubsetPolicy,
};
