//! Two-valued evaluation and exhaustive world sweeps.

use std::sync::Arc;

use super::formula::Formula;
use super::vocab::{vocabulary_of, Vocabulary, World};
use crate::error::{Error, Result};

/// Default largest vocabulary the exact (enumerating) operations accept.
pub const DEFAULT_CAP: usize = 30;

/// Truth value of a ground, quantifier-free formula in a world.
pub fn evaluate(f: &Formula, w: &World) -> Result<bool> {
    let compiled = CompiledFormula::new(f, w.vocabulary())?;
    Ok(compiled.eval_words(w.words()))
}

/// A formula with atoms resolved to vocabulary indices.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    node: Node,
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Var(usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Equiv(Box<Node>, Box<Node>),
}

impl CompiledFormula {
    pub fn new(f: &Formula, vocab: &Vocabulary) -> Result<Self> {
        Ok(CompiledFormula {
            node: Self::lower(f, vocab)?,
        })
    }

    fn lower(f: &Formula, vocab: &Vocabulary) -> Result<Node> {
        Ok(match f {
            Formula::Atom(a) => {
                if !a.is_ground() {
                    return Err(Error::NotPropositional(crate::textio::render(f)));
                }
                let name = a.name();
                Node::Var(vocab.index_of(&name).ok_or(Error::UnknownAtom(name))?)
            }
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Not(x) => Node::Not(Box::new(Self::lower(x, vocab)?)),
            Formula::And(cs) => Node::And(
                cs.iter()
                    .map(|c| Self::lower(c, vocab))
                    .collect::<Result<_>>()?,
            ),
            Formula::Or(cs) => Node::Or(
                cs.iter()
                    .map(|c| Self::lower(c, vocab))
                    .collect::<Result<_>>()?,
            ),
            Formula::Implies(a, b) => Node::Implies(
                Box::new(Self::lower(a, vocab)?),
                Box::new(Self::lower(b, vocab)?),
            ),
            Formula::Equiv(a, b) => Node::Equiv(
                Box::new(Self::lower(a, vocab)?),
                Box::new(Self::lower(b, vocab)?),
            ),
            Formula::Exists(..) | Formula::Forall(..) => {
                return Err(Error::NotPropositional(crate::textio::render(f)))
            }
        })
    }

    /// Evaluate on a world given as bit words (atom `i` is bit `i % 64` of word `i / 64`).
    pub fn eval_words(&self, words: &[u64]) -> bool {
        Self::eval_node(&self.node, &|i| (words[i / 64] >> (i % 64)) & 1 == 1)
    }

    /// Evaluate on a world index (vocabularies of at most 64 atoms).
    pub fn eval_index(&self, index: u64) -> bool {
        Self::eval_node(&self.node, &|i| (index >> i) & 1 == 1)
    }

    fn eval_node(n: &Node, val: &impl Fn(usize) -> bool) -> bool {
        match n {
            Node::Const(b) => *b,
            Node::Var(i) => val(*i),
            Node::Not(x) => !Self::eval_node(x, val),
            Node::And(cs) => cs.iter().all(|c| Self::eval_node(c, val)),
            Node::Or(cs) => cs.iter().any(|c| Self::eval_node(c, val)),
            Node::Implies(a, b) => !Self::eval_node(a, val) || Self::eval_node(b, val),
            Node::Equiv(a, b) => Self::eval_node(a, val) == Self::eval_node(b, val),
        }
    }
}

/// Number of worlds of `vocab` satisfying `f`.
pub fn count_models(f: &Formula, vocab: &Vocabulary, cap: usize) -> Result<u64> {
    use rayon::prelude::*;
    vocab.check_cap(cap.min(63))?;
    let compiled = CompiledFormula::new(f, vocab)?;
    let total = 1u64 << vocab.len();
    Ok(world_chunks(total)
        .into_par_iter()
        .map(|(lo, hi)| (lo..hi).filter(|&w| compiled.eval_index(w)).count() as u64)
        .sum())
}

/// Split `0..total` into contiguous ranges for parallel sweeps.
pub(crate) fn world_chunks(total: u64) -> Vec<(u64, u64)> {
    const CHUNK: u64 = 1 << 14;
    (0..total.div_ceil(CHUNK))
        .map(|k| (k * CHUNK, ((k + 1) * CHUNK).min(total)))
        .collect()
}

fn joint_vocabulary(a: &Formula, b: &Formula) -> Vocabulary {
    vocabulary_of(a).union(&vocabulary_of(b))
}

/// `a ⊨ b`, decided by enumerating every world of the combined vocabulary.
pub fn entails(a: &Formula, b: &Formula, cap: usize) -> Result<bool> {
    let vocab = joint_vocabulary(a, b);
    vocab.check_cap(cap.min(63))?;
    let ca = CompiledFormula::new(a, &vocab)?;
    let cb = CompiledFormula::new(b, &vocab)?;
    let total = 1u64 << vocab.len();
    use rayon::prelude::*;
    Ok(world_chunks(total)
        .into_par_iter()
        .all(|(lo, hi)| (lo..hi).all(|w| !ca.eval_index(w) || cb.eval_index(w))))
}

pub fn equivalent(a: &Formula, b: &Formula, cap: usize) -> Result<bool> {
    let vocab = joint_vocabulary(a, b);
    vocab.check_cap(cap.min(63))?;
    let ca = CompiledFormula::new(a, &vocab)?;
    let cb = CompiledFormula::new(b, &vocab)?;
    let total = 1u64 << vocab.len();
    use rayon::prelude::*;
    Ok(world_chunks(total)
        .into_par_iter()
        .all(|(lo, hi)| (lo..hi).all(|w| ca.eval_index(w) == cb.eval_index(w))))
}

/// Every world of a vocabulary of at most 64 atoms, in index order.
pub fn all_worlds(vocab: &Arc<Vocabulary>) -> impl Iterator<Item = World> + '_ {
    assert!(vocab.len() < 64);
    (0..(1u64 << vocab.len())).map(move |i| World::from_index(vocab.clone(), i))
}
