pub mod eval;
pub mod formula;
pub mod simplify;
pub mod theory;
pub mod vocab;

pub use eval::{count_models, entails, equivalent, evaluate, CompiledFormula, DEFAULT_CAP};
pub use formula::{Atom, Formula, Term};
pub use simplify::simplify;
pub use theory::{ground_formula, satisfies_relational, GroundTheory, Theory};
pub use vocab::{vocabulary_of, Vocabulary, World};
