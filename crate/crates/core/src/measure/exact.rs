//! Exact probabilities by sweeping every world.
//!
//! A world's weight is a product of block numerators over a fixed common
//! denominator, so sums are plain integer additions: `u128` when the
//! denominator is small enough, `BigUint` otherwise. Partial sums are
//! combined associatively, so results do not depend on the partition.

use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::spec::{Block, ProbabilitySpec};
use crate::error::Result;
use crate::logic::eval::world_chunks;
use crate::logic::{CompiledFormula, Formula, Vocabulary};

/// Probability and model count of one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub probability: BigRational,
    pub models: u64,
}

enum Lookup {
    Fact(usize),
    /// Bit mask of the alternatives and their indices in order.
    Choice(u64, Vec<usize>),
}

impl Lookup {
    /// Position in the block's numerator table, or `None` for a zero-weight world.
    fn outcome(&self, w: u64) -> Option<usize> {
        match self {
            Lookup::Fact(i) => Some(((w >> i) & 1) as usize),
            Lookup::Choice(mask, idx) => {
                let bits = w & mask;
                if bits == 0 {
                    Some(0)
                } else if bits.is_power_of_two() {
                    let i = bits.trailing_zeros() as usize;
                    idx.iter().position(|&k| k == i).map(|p| p + 1)
                } else {
                    None
                }
            }
        }
    }
}

/// Probability and model count of each formula over `vocab` extended by the
/// spec's atoms.
pub fn sweep(
    spec: &ProbabilitySpec,
    formulas: &[Formula],
    vocab: &Vocabulary,
    cap: usize,
) -> Result<Vec<SweepOutcome>> {
    let vocab = vocab.union(&spec.vocabulary());
    vocab.check_cap(cap.min(62))?;
    let compiled = formulas
        .iter()
        .map(|f| CompiledFormula::new(f, &vocab))
        .collect::<Result<Vec<_>>>()?;
    let blocks = spec.blocks(&vocab)?;
    let covered: usize = blocks
        .iter()
        .map(|b| match b {
            Block::Fact { .. } => 1,
            Block::Choice { indices, .. } => indices.len(),
        })
        .sum();
    let defaults = vocab.len() - covered;
    let block_den: BigInt = blocks.iter().map(Block::denominator).product();
    let total_den: BigInt = &block_den << defaults;
    let lookups: Vec<Lookup> = blocks
        .iter()
        .map(|b| match b {
            Block::Fact { index, .. } => Lookup::Fact(*index),
            Block::Choice { indices, .. } => Lookup::Choice(
                indices.iter().fold(0, |m, i| m | (1u64 << i)),
                indices.clone(),
            ),
        })
        .collect();
    let numerators: Vec<Vec<BigInt>> = blocks.iter().map(Block::numerators).collect();
    let total = 1u64 << vocab.len();

    let (sums, models): (Vec<BigInt>, Vec<u64>) = if total_den.bits() <= 126 {
        let tables: Vec<Vec<u128>> = numerators
            .iter()
            .map(|t| t.iter().map(|n| n.to_u128().expect("fits")).collect())
            .collect();
        let (s, m) = run(&compiled, &lookups, &tables, total);
        (s.into_iter().map(BigInt::from).collect(), m)
    } else {
        let tables: Vec<Vec<BigUint>> = numerators
            .iter()
            .map(|t| {
                t.iter()
                    .map(|n| n.to_biguint().expect("non-negative"))
                    .collect()
            })
            .collect();
        let (s, m) = run(&compiled, &lookups, &tables, total);
        (s.into_iter().map(BigInt::from).collect(), m)
    };
    Ok(sums
        .into_iter()
        .zip(models)
        .map(|(s, models)| SweepOutcome {
            probability: BigRational::new(s, total_den.clone()),
            models,
        })
        .collect())
}

fn run<T>(
    compiled: &[CompiledFormula],
    lookups: &[Lookup],
    tables: &[Vec<T>],
    total: u64,
) -> (Vec<T>, Vec<u64>)
where
    T: Clone + Zero + One + Send + Sync + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    let k = compiled.len();
    let zero = || (vec![T::zero(); k], vec![0u64; k]);
    world_chunks(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let (mut sums, mut models) = zero();
            let mut truth = vec![false; k];
            for w in lo..hi {
                let mut any = false;
                for (j, c) in compiled.iter().enumerate() {
                    truth[j] = c.eval_index(w);
                    if truth[j] {
                        models[j] += 1;
                        any = true;
                    }
                }
                if !any {
                    continue;
                }
                let mut weight = T::one();
                let mut possible = true;
                for (l, t) in lookups.iter().zip(tables) {
                    match l.outcome(w) {
                        Some(o) => weight = weight * &t[o],
                        None => {
                            possible = false;
                            break;
                        }
                    }
                }
                if !possible || weight.is_zero() {
                    continue;
                }
                for j in 0..k {
                    if truth[j] {
                        sums[j] = std::mem::replace(&mut sums[j], T::zero()) + weight.clone();
                    }
                }
            }
            (sums, models)
        })
        .reduce(zero, |(a, am), (b, bm)| {
            (
                a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
                am.into_iter().zip(bm).map(|(x, y)| x + y).collect(),
            )
        })
}

/// Probability of `f` with worlds over `vocab` (extended by the spec's atoms).
pub fn theory_probability(
    spec: &ProbabilitySpec,
    f: &Formula,
    vocab: &Vocabulary,
    cap: usize,
) -> Result<BigRational> {
    Ok(sweep(spec, std::slice::from_ref(f), vocab, cap)?
        .remove(0)
        .probability)
}

/// Number of worlds of `vocab` satisfying `f`.
pub fn model_count(f: &Formula, vocab: &Vocabulary, cap: usize) -> Result<BigUint> {
    Ok(BigUint::from(crate::logic::count_models(f, vocab, cap)?))
}
