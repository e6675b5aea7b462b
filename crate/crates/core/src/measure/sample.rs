//! Monte Carlo estimates under the distribution semantics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{Block, ProbabilitySpec};
use crate::error::{Error, Result};
use crate::logic::{CompiledFormula, Formula, Vocabulary};

/// Generator and draw scheme, recorded in reports.
///
/// ChaCha8 seeded with `seed_from_u64`. Blocks are drawn in order
/// (annotated disjunctions, facts, then unlisted atoms by vocabulary index).
/// A fact `a/d` is true iff a uniform integer in `0..d` is below `a`; a
/// disjunction compares one uniform integer against cumulative numerators.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64-exact-rational-draws";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub successes: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.successes.into(), self.samples.into())
    }

    pub fn value_f64(&self) -> f64 {
        self.successes as f64 / self.samples as f64
    }

    /// Binomial standard error `sqrt(p(1-p)/N)` at the estimate.
    pub fn std_error(&self) -> f64 {
        let p = self.value_f64();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

enum Draw {
    Fact {
        index: usize,
        numer: u128,
        denom: u128,
    },
    Choice {
        indices: Vec<usize>,
        cumulative: Vec<u128>,
        denom: u128,
    },
    Fair(usize),
}

fn to_u128(n: &BigInt) -> Result<u128> {
    n.to_u128()
        .ok_or_else(|| Error::InvalidSpec("weight denominator too large for sampling".into()))
}

fn plan(spec: &ProbabilitySpec, vocab: &Vocabulary) -> Result<Vec<Draw>> {
    let blocks = spec.blocks(vocab)?;
    let mut covered = vec![false; vocab.len()];
    let mut draws = Vec::new();
    for b in &blocks {
        match b {
            Block::Fact { index, weight } => {
                covered[*index] = true;
                draws.push(Draw::Fact {
                    index: *index,
                    numer: to_u128(weight.numer())?,
                    denom: to_u128(weight.denom())?,
                });
            }
            Block::Choice { indices, .. } => {
                for &i in indices {
                    covered[i] = true;
                }
                let nums = b.numerators();
                let mut acc = 0u128;
                let mut cumulative = Vec::new();
                for n in &nums[1..] {
                    acc += to_u128(n)?;
                    cumulative.push(acc);
                }
                draws.push(Draw::Choice {
                    indices: indices.clone(),
                    cumulative,
                    denom: to_u128(&b.denominator())?,
                });
            }
        }
    }
    draws.extend((0..vocab.len()).filter(|i| !covered[*i]).map(Draw::Fair));
    Ok(draws)
}

/// Success counts of each formula on the same `samples` sampled worlds.
pub fn sample_counts(
    spec: &ProbabilitySpec,
    formulas: &[Formula],
    vocab: &Vocabulary,
    samples: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let vocab = vocab.union(&spec.vocabulary());
    let compiled = formulas
        .iter()
        .map(|f| CompiledFormula::new(f, &vocab))
        .collect::<Result<Vec<_>>>()?;
    let draws = plan(spec, &vocab)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = vec![0u64; vocab.len().div_ceil(64).max(1)];
    let mut counts = vec![0u64; formulas.len()];
    let set = |words: &mut [u64], i: usize| words[i / 64] |= 1 << (i % 64);
    for _ in 0..samples {
        words.iter_mut().for_each(|w| *w = 0);
        for d in &draws {
            match d {
                Draw::Fact {
                    index,
                    numer,
                    denom,
                } => {
                    if rng.random_range(0..*denom) < *numer {
                        set(&mut words, *index);
                    }
                }
                Draw::Choice {
                    indices,
                    cumulative,
                    denom,
                } => {
                    let r = rng.random_range(0..*denom);
                    if let Some(k) = cumulative.iter().position(|c| r < *c) {
                        set(&mut words, indices[k]);
                    }
                }
                Draw::Fair(i) => {
                    if rng.random_range(0..2u128) < 1 {
                        set(&mut words, *i);
                    }
                }
            }
        }
        for (c, f) in counts.iter_mut().zip(&compiled) {
            if f.eval_words(&words) {
                *c += 1;
            }
        }
    }
    Ok(counts)
}

pub fn estimate_probability(
    spec: &ProbabilitySpec,
    f: &Formula,
    vocab: &Vocabulary,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    let successes = sample_counts(spec, std::slice::from_ref(f), vocab, samples, seed)?[0];
    Ok(Estimate {
        successes,
        samples,
        seed,
    })
}
