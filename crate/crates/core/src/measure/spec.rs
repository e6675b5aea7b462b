use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logic::{Atom, Vocabulary, World};

/// Independent probabilistic facts and annotated disjunctions. Atoms not
/// mentioned are independent with probability 1/2.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbabilitySpec {
    facts: Vec<(Atom, BigRational)>,
    disjunctions: Vec<Vec<(Atom, BigRational)>>,
}

/// How one independent block of atoms contributes to a world's weight.
#[derive(Debug, Clone)]
pub(crate) enum Block {
    /// `u::a`: weight `u` when true, `1-u` when false.
    Fact { index: usize, weight: BigRational },
    /// Mutually exclusive alternatives plus the null choice.
    Choice {
        indices: Vec<usize>,
        weights: Vec<BigRational>,
    },
}

impl ProbabilitySpec {
    /// The uniform distribution: every atom independent with probability 1/2.
    pub fn uniform() -> Self {
        ProbabilitySpec::default()
    }

    pub fn new(
        facts: Vec<(Atom, BigRational)>,
        disjunctions: Vec<Vec<(Atom, BigRational)>>,
    ) -> Result<Self> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut seen = BTreeSet::new();
        let all = facts.iter().chain(disjunctions.iter().flatten());
        for (a, w) in all {
            if !a.is_ground() {
                return Err(Error::InvalidSpec(format!("atom `{a}` is not ground")));
            }
            if *w < zero || *w > one {
                return Err(Error::InvalidSpec(format!(
                    "weight of `{a}` is outside [0,1]"
                )));
            }
            if !seen.insert(a.name()) {
                return Err(Error::InvalidSpec(format!("atom `{a}` is declared twice")));
            }
        }
        for d in &disjunctions {
            if d.is_empty() {
                return Err(Error::InvalidSpec("empty annotated disjunction".into()));
            }
            let sum: BigRational = d.iter().map(|(_, w)| w.clone()).sum();
            if sum > one {
                let names: Vec<String> = d.iter().map(|(a, _)| a.name()).collect();
                return Err(Error::InvalidSpec(format!(
                    "weights of annotated disjunction {} sum above 1",
                    names.join("; ")
                )));
            }
        }
        Ok(ProbabilitySpec {
            facts,
            disjunctions,
        })
    }

    pub fn facts(&self) -> &[(Atom, BigRational)] {
        &self.facts
    }

    pub fn disjunctions(&self) -> &[Vec<(Atom, BigRational)>] {
        &self.disjunctions
    }

    /// True when every world of any vocabulary is equally likely.
    pub fn is_uniform(&self) -> bool {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.disjunctions.is_empty() && self.facts.iter().all(|(_, w)| *w == half)
    }

    pub fn atom_names(&self) -> BTreeSet<String> {
        self.facts
            .iter()
            .chain(self.disjunctions.iter().flatten())
            .map(|(a, _)| a.name())
            .collect()
    }

    pub fn vocabulary(&self) -> Vocabulary {
        Vocabulary::from_atoms(
            self.facts
                .iter()
                .chain(self.disjunctions.iter().flatten())
                .map(|(a, _)| a.clone()),
        )
    }

    /// Spec atoms resolved against `vocab`, disjunctions first.
    pub(crate) fn blocks(&self, vocab: &Vocabulary) -> Result<Vec<Block>> {
        let index = |a: &Atom| {
            let n = a.name();
            vocab.index_of(&n).ok_or(Error::UnknownAtom(n))
        };
        let mut out = Vec::new();
        for d in &self.disjunctions {
            out.push(Block::Choice {
                indices: d.iter().map(|(a, _)| index(a)).collect::<Result<_>>()?,
                weights: d.iter().map(|(_, w)| w.clone()).collect(),
            });
        }
        for (a, w) in &self.facts {
            out.push(Block::Fact {
                index: index(a)?,
                weight: w.clone(),
            });
        }
        Ok(out)
    }

    /// Product-form probability of a single world.
    pub fn world_probability(&self, w: &World) -> Result<BigRational> {
        let vocab = w.vocabulary();
        let blocks = self.blocks(vocab)?;
        let mut covered = vec![false; vocab.len()];
        let mut p = BigRational::one();
        for b in &blocks {
            match b {
                Block::Fact { index, weight } => {
                    covered[*index] = true;
                    p *= if w.value(*index) {
                        weight.clone()
                    } else {
                        BigRational::one() - weight
                    };
                }
                Block::Choice { indices, weights } => {
                    let chosen: Vec<usize> = (0..indices.len())
                        .filter(|&k| w.value(indices[k]))
                        .collect();
                    for &i in indices {
                        covered[i] = true;
                    }
                    p *= match chosen.as_slice() {
                        [] => BigRational::one() - weights.iter().sum::<BigRational>(),
                        [k] => weights[*k].clone(),
                        _ => BigRational::zero(),
                    };
                }
            }
        }
        let defaults = covered.iter().filter(|c| !**c).count();
        Ok(p / BigRational::from_integer(BigInt::one() << defaults))
    }
}

impl Block {
    /// Common denominator of the block's outcome weights.
    pub(crate) fn denominator(&self) -> BigInt {
        match self {
            Block::Fact { weight, .. } => weight.denom().clone(),
            Block::Choice { weights, .. } => weights
                .iter()
                .fold(BigInt::one(), |acc, w| acc.lcm(w.denom())),
        }
    }

    /// Integer weight numerators over [`Block::denominator`]: for a fact
    /// `[false, true]`, for a choice `[null, alt_1, ..., alt_k]`.
    pub(crate) fn numerators(&self) -> Vec<BigInt> {
        let d = BigRational::from_integer(self.denominator());
        let scale = |q: BigRational| (q * &d).to_integer();
        match self {
            Block::Fact { weight, .. } => {
                vec![scale(BigRational::one() - weight), scale(weight.clone())]
            }
            Block::Choice { weights, .. } => {
                let null = BigRational::one() - weights.iter().sum::<BigRational>();
                std::iter::once(scale(null))
                    .chain(weights.iter().cloned().map(scale))
                    .collect()
            }
        }
    }
}
