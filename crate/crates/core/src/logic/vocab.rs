use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;

use super::formula::{Atom, Formula, Term};
use crate::error::{Error, Result};

/// Ground atoms, predicate symbols and constants of a theory.
///
/// Atoms are kept in lexicographic order of their names; that order fixes
/// world indexing (atom `i` is bit `i` of a world index).
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    atoms: Vec<Atom>,
    names: Vec<String>,
    index: HashMap<String, usize>,
    predicates: BTreeSet<(String, usize)>,
    constants: BTreeSet<String>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.predicates == other.predicates
            && self.constants == other.constants
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    pub fn new(
        atoms: impl IntoIterator<Item = Atom>,
        predicates: impl IntoIterator<Item = (String, usize)>,
        constants: impl IntoIterator<Item = String>,
    ) -> Self {
        let mut by_name: BTreeMap<String, Atom> = BTreeMap::new();
        let mut preds: BTreeSet<(String, usize)> = predicates.into_iter().collect();
        let mut consts: BTreeSet<String> = constants.into_iter().collect();
        for a in atoms {
            debug_assert!(a.is_ground(), "vocabulary atoms must be ground");
            preds.insert((a.predicate.clone(), a.arity()));
            for t in &a.args {
                consts.insert(t.name().to_string());
            }
            by_name.entry(a.name()).or_insert(a);
        }
        let (names, atoms): (Vec<_>, Vec<_>) = by_name.into_iter().unzip();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Vocabulary {
            atoms,
            names,
            index,
            predicates: preds,
            constants: consts,
        }
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Vocabulary::new(atoms, [], [])
    }

    /// Propositional vocabulary from atom names.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Self {
        Vocabulary::from_atoms(names.iter().map(|n| Atom::prop(n.as_ref())))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn predicates(&self) -> &BTreeSet<(String, usize)> {
        &self.predicates
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn union(&self, other: &Vocabulary) -> Vocabulary {
        Vocabulary::new(
            self.atoms.iter().chain(other.atoms.iter()).cloned(),
            self.predicates
                .iter()
                .chain(other.predicates.iter())
                .cloned(),
            self.constants.iter().chain(other.constants.iter()).cloned(),
        )
    }

    /// Every ground atom of the given predicates over the given constants.
    pub fn herbrand<'a>(
        predicates: impl IntoIterator<Item = &'a (String, usize)>,
        constants: &BTreeSet<String>,
    ) -> Vocabulary {
        let consts: Vec<&String> = constants.iter().collect();
        let mut atoms = Vec::new();
        let mut preds = Vec::new();
        for (name, arity) in predicates {
            preds.push((name.clone(), *arity));
            let total = consts.len().pow(*arity as u32);
            for k in 0..total {
                // decode k in base |constants|, last argument fastest
                let mut rest = k;
                let mut args = vec![Term::constant(""); *arity];
                for slot in args.iter_mut().rev() {
                    *slot = Term::constant(consts[rest % consts.len()].as_str());
                    rest /= consts.len();
                }
                atoms.push(Atom::new(name.clone(), args));
            }
        }
        Vocabulary::new(atoms, preds, constants.iter().cloned())
    }

    /// 2^n.
    pub fn world_count(&self) -> BigUint {
        BigUint::from(1u8) << self.len()
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::Capacity {
                atoms: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Syntactic vocabulary: ground atoms that occur, plus every predicate symbol
/// and constant that occurs (also inside non-ground atoms).
pub fn vocabulary_of(f: &Formula) -> Vocabulary {
    let mut atoms = Vec::new();
    let mut preds = Vec::new();
    let mut consts = Vec::new();
    f.visit_atoms(&mut |a| {
        preds.push((a.predicate.clone(), a.arity()));
        for t in &a.args {
            if let Term::Const(c) = t {
                consts.push(c.clone());
            }
        }
        if a.is_ground() {
            atoms.push(a.clone());
        }
    });
    Vocabulary::new(atoms, preds, consts)
}

/// Total truth assignment over a vocabulary, one bit per atom in vocabulary order.
#[derive(Debug, Clone)]
pub struct World {
    vocab: Arc<Vocabulary>,
    bits: Vec<u64>,
}

impl PartialEq for World {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vocab, &other.vocab) || self.vocab == other.vocab)
            && self.bits == other.bits
    }
}

impl Eq for World {}

impl World {
    /// All atoms false.
    pub fn new(vocab: Arc<Vocabulary>) -> Self {
        let words = vocab.len().div_ceil(64).max(1);
        World {
            vocab,
            bits: vec![0; words],
        }
    }

    /// World number `index`: bit `i` of the index is the value of atom `i`.
    pub fn from_index(vocab: Arc<Vocabulary>, index: u64) -> Self {
        assert!(vocab.len() <= 64, "index worlds need at most 64 atoms");
        let mut w = World::new(vocab);
        let mask = if w.vocab.len() == 64 {
            u64::MAX
        } else {
            (1u64 << w.vocab.len()) - 1
        };
        w.bits[0] = index & mask;
        w
    }

    /// World where exactly the listed atoms are true.
    pub fn from_true_atoms<S: AsRef<str>>(
        vocab: Arc<Vocabulary>,
        true_atoms: &[S],
    ) -> Result<Self> {
        let mut w = World::new(vocab);
        for a in true_atoms {
            let i = w
                .vocab
                .index_of(a.as_ref())
                .ok_or_else(|| Error::UnknownAtom(a.as_ref().to_string()))?;
            w.set(i, true);
        }
        Ok(w)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn value(&self, i: usize) -> bool {
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.vocab.index_of(name).map(|i| self.value(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    /// The world index when the vocabulary has at most 64 atoms.
    pub fn index(&self) -> Option<u64> {
        (self.vocab.len() <= 64).then(|| self.bits[0])
    }

    pub fn true_atoms(&self) -> Vec<&str> {
        self.vocab
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.value(*i))
            .map(|(_, n)| n.as_str())
            .collect()
    }
}
