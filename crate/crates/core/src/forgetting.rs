//! Strong and weak forgetting by Boolean quantifier elimination.
//!
//! Strong forgetting of `p` from `A` is `∃p A ≡ A[p:=F] ∨ A[p:=T]`; weak
//! forgetting is `∀p A ≡ A[p:=F] ∧ A[p:=T]`. Policies with several atoms are
//! eliminated one atom at a time in ascending vocabulary order, simplifying
//! after every step.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{simplify, Formula, Theory, Vocabulary};
use crate::textio::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Strong,
    Weak,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Strong => "strong",
            Op::Weak => "weak",
        }
    }
}

/// Symbols selected for forgetting: propositional atom names, ground atom
/// names such as `t(eve)`, or bare predicate names standing for all their
/// ground atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForgettingPolicy {
    symbols: Vec<String>,
}

impl ForgettingPolicy {
    /// Duplicates are dropped; first occurrence order is kept.
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Self {
        let mut seen = BTreeSet::new();
        let symbols = symbols
            .iter()
            .map(|s| s.as_ref().trim().to_string())
            .filter(|s| !s.is_empty() && seen.insert(s.clone()))
            .collect();
        ForgettingPolicy { symbols }
    }

    /// Comma separated list, as on the command line.
    pub fn parse_list(text: &str) -> Self {
        let parts: Vec<&str> = text.split(',').collect();
        ForgettingPolicy::new(&parts)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Ground atom names of `vocab` selected by the policy, in vocabulary
    /// order. Symbols matching nothing are ignored.
    pub fn expand(&self, vocab: &Vocabulary) -> Vec<String> {
        let wanted: BTreeSet<&str> = self.symbols.iter().map(String::as_str).collect();
        vocab
            .atoms()
            .iter()
            .filter(|a| wanted.contains(a.predicate.as_str()) || wanted.contains(a.name().as_str()))
            .map(|a| a.name())
            .collect()
    }
}

/// Eliminate `atoms` from a propositional formula.
pub fn eliminate<S: AsRef<str>>(f: &Formula, atoms: &[S], op: Op) -> Result<Formula> {
    if !f.is_propositional() {
        return Err(Error::NotPropositional(render(f)));
    }
    let mut order: Vec<&str> = atoms.iter().map(AsRef::as_ref).collect();
    order.sort_unstable();
    order.dedup();
    let mut current = simplify(f);
    for p in order {
        if current.is_const() {
            break;
        }
        let (lo, hi) = rayon::join(
            || simplify(&current.substitute_bool(p, false)),
            || simplify(&current.substitute_bool(p, true)),
        );
        current = simplify(&match op {
            Op::Strong => Formula::or([lo, hi]),
            Op::Weak => Formula::and([lo, hi]),
        });
    }
    Ok(current)
}

fn forget(t: &Theory, pol: &ForgettingPolicy, op: Op) -> Result<Formula> {
    let atoms = pol.expand(&t.vocabulary());
    eliminate(&t.conjunction(), &atoms, op)
}

/// `∃p̄ T` for a propositional theory.
pub fn forget_strong(t: &Theory, pol: &ForgettingPolicy) -> Result<Formula> {
    forget(t, pol, Op::Strong)
}

/// `∀p̄ T` for a propositional theory.
pub fn forget_weak(t: &Theory, pol: &ForgettingPolicy) -> Result<Formula> {
    forget(t, pol, Op::Weak)
}

/// Forgetting from a first-order theory: ground over the domain (declared
/// constants plus those occurring), expand predicate names to all their
/// ground atoms, then eliminate.
pub fn forget_fo(t: &Theory, domain: &[String], pol: &ForgettingPolicy, op: Op) -> Result<Formula> {
    let g = t.ground(domain)?;
    let atoms = pol.expand(&g.vocabulary);
    eliminate(&g.conjunction(), &atoms, op)
}
