use std::collections::{BTreeMap, HashMap};

use super::program::{StratifiedProgram, DOM};
use crate::error::{Error, Result};
use crate::logic::{Atom, Term, Vocabulary, World};

#[derive(Debug, Clone)]
struct GroundRule {
    head: usize,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// A program instantiated over its domain, with atoms interned, ready to be
/// evaluated against many worlds of one vocabulary.
#[derive(Debug, Clone)]
pub struct GroundProgram {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Rules grouped by stratum, lowest first.
    strata: Vec<Vec<GroundRule>>,
    /// (vocabulary index, atom index) of atoms read from the world.
    inputs: Vec<(usize, usize)>,
    root: usize,
}

impl GroundProgram {
    pub fn new(p: &StratifiedProgram, vocab: &Vocabulary) -> Result<Self> {
        let mut g = GroundProgram {
            names: Vec::new(),
            index: HashMap::new(),
            strata: Vec::new(),
            inputs: Vec::new(),
            root: 0,
        };
        let mut by_stratum: BTreeMap<usize, Vec<GroundRule>> = BTreeMap::new();
        for rule in &p.rules {
            let vars: Vec<String> = rule.variables().into_iter().collect();
            let n = p.domain.len();
            if !vars.is_empty() && n == 0 {
                continue;
            }
            let instances = n.pow(vars.len() as u32);
            let stratum = p.strata.get(&rule.head.predicate).copied().unwrap_or(1);
            for k in 0..instances {
                let mut rest = k;
                let mut env: HashMap<&str, &str> = HashMap::new();
                for v in vars.iter().rev() {
                    env.insert(v, &p.domain[rest % n]);
                    rest /= n;
                }
                let subst = |a: &Atom| -> String {
                    Atom::new(
                        a.predicate.clone(),
                        a.args
                            .iter()
                            .map(|t| match t {
                                Term::Var(v) => Term::constant(env[v.as_str()]),
                                c => c.clone(),
                            })
                            .collect(),
                    )
                    .name()
                };
                let head = g.intern(subst(&rule.head));
                let mut gr = GroundRule {
                    head,
                    pos: vec![],
                    neg: vec![],
                };
                for l in &rule.body {
                    // every instantiated dom(c) holds
                    if l.atom.predicate == DOM {
                        continue;
                    }
                    let a = g.intern(subst(&l.atom));
                    if l.positive {
                        gr.pos.push(a);
                    } else {
                        gr.neg.push(a);
                    }
                }
                by_stratum.entry(stratum).or_default().push(gr);
            }
        }
        g.strata = by_stratum.into_values().collect();
        if !p.root.is_ground() {
            return Err(Error::OpenFormula {
                var: p.root.vars().next().unwrap_or_default().to_string(),
                formula: p.root.name(),
            });
        }
        g.root = g.intern(p.root.name());
        for (i, name) in vocab.names().iter().enumerate() {
            if let Some(&a) = g.index.get(name) {
                g.inputs.push((i, a));
            }
        }
        Ok(g)
    }

    fn intern(&mut self, name: String) -> usize {
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub fn atom_names(&self) -> &[String] {
        &self.names
    }

    /// Least model on the world given as bit words; atoms that are neither
    /// defined nor in the vocabulary are false.
    pub fn eval_words(&self, words: &[u64]) -> Vec<bool> {
        let mut val = vec![false; self.names.len()];
        for &(i, a) in &self.inputs {
            val[a] = (words[i / 64] >> (i % 64)) & 1 == 1;
        }
        for rules in &self.strata {
            loop {
                let mut changed = false;
                for r in rules {
                    if !val[r.head]
                        && r.pos.iter().all(|&a| val[a])
                        && r.neg.iter().all(|&a| !val[a])
                    {
                        val[r.head] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        val
    }

    pub fn eval_index(&self, index: u64) -> Vec<bool> {
        self.eval_words(&[index])
    }

    pub fn root_holds(&self, words: &[u64]) -> bool {
        self.eval_words(words)[self.root]
    }

    pub fn value(&self, model: &[bool], name: &str) -> Option<bool> {
        self.index.get(name).map(|&i| model[i])
    }
}

/// Truth values of every atom of the world and every ground instance in the
/// program's least model over that world.
pub fn least_model(p: &StratifiedProgram, base: &World) -> Result<BTreeMap<String, bool>> {
    let g = GroundProgram::new(p, base.vocabulary())?;
    let model = g.eval_words(base.words());
    let mut out: BTreeMap<String, bool> = base
        .vocabulary()
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), base.value(i)))
        .collect();
    for (n, v) in g.names.iter().zip(model) {
        out.entry(n.clone()).or_insert(v);
    }
    Ok(out)
}
