//! Formulas to stratified logic programs, their least models, and ProbLog text.

pub mod least_model;
pub mod naming;
pub mod problog;
pub mod program;
pub mod strata;
pub mod translate;

pub use least_model::{least_model, GroundProgram};
pub use problog::emit_problog;
pub use program::{Literal, Rule, StratifiedProgram, DOM};
pub use strata::check_stratification;
pub use translate::{compile_fo, compile_prop, compile_theory, size_bound};
