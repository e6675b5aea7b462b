//! Concrete syntax for theory files and formulas.
//!
//! ```text
//! % comment
//! domain: eve.
//! prob 0.5::ms(eve) ; 0.5::ss(eve).
//! prob 0.8::ich(eve).
//! theory: forall X. ms(X) -> (h(X) & t(X)).
//!         forall X. (ss(X) | t(X)) -> ich(X).
//! forget: t.
//! ```

mod lexer;
mod parser;
mod render;

use num_rational::BigRational;

pub use parser::{parse_formula, parse_theory_file};
pub use render::render;

use crate::error::Result;
use crate::logic::{Atom, Formula, Theory};
use crate::measure::ProbabilitySpec;

/// One `prob` line: a single alternative is a probabilistic fact, several
/// form an annotated disjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbDecl {
    pub alternatives: Vec<(BigRational, Atom)>,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoryFile {
    pub domain: Option<Vec<String>>,
    pub probabilities: Vec<ProbDecl>,
    pub formulas: Vec<Formula>,
    pub policy: Option<Vec<String>>,
}

impl TheoryFile {
    pub fn theory(&self, name: impl Into<String>) -> Result<Theory> {
        Theory::new(name, self.formulas.clone())
    }

    pub fn domain(&self) -> &[String] {
        self.domain.as_deref().unwrap_or(&[])
    }

    /// The validated distribution declared by the `prob` lines.
    pub fn spec(&self) -> Result<ProbabilitySpec> {
        let mut facts = Vec::new();
        let mut disjunctions = Vec::new();
        for d in &self.probabilities {
            if d.alternatives.len() == 1 {
                let (w, a) = d.alternatives[0].clone();
                facts.push((a, w));
            } else {
                disjunctions.push(
                    d.alternatives
                        .iter()
                        .map(|(w, a)| (a.clone(), w.clone()))
                        .collect(),
                );
            }
        }
        ProbabilitySpec::new(facts, disjunctions)
    }
}
