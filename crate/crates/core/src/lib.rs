//! Forgetting and loss of inferential strength.
//!
//! * [`logic`]: formulas, worlds, evaluation, simplification, grounding.
//! * [`textio`]: theory-file syntax and formula rendering.
//! * [`forgetting`]: strong (`∃`) and weak (`∀`) forgetting.
//! * [`compile`]: formulas to stratified programs and ProbLog text.
//! * [`measure`]: probabilities, model counts, sampling, loss measures.
//! * [`cli`]: the `floss` command-line front end.

pub mod cli;
pub mod compile;
pub mod error;
pub mod forgetting;
pub mod logic;
pub mod measure;
pub mod textio;

pub use error::{Error, Result};
pub use forgetting::{eliminate, forget_fo, forget_strong, forget_weak, ForgettingPolicy, Op};
pub use logic::{Atom, Formula, Term, Theory, Vocabulary, World};
pub use measure::{LossReport, Mode, ProbabilitySpec};
