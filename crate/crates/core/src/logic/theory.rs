use std::collections::{BTreeSet, HashMap};

use super::formula::{Atom, Formula, Term};
use super::vocab::{vocabulary_of, Vocabulary};
use crate::error::{Error, Result};
use crate::textio::render;

/// A named finite set of closed formulas, read as their conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    name: String,
    formulas: Vec<Formula>,
}

impl Theory {
    /// Fails with [`Error::OpenFormula`] when a member has a free variable.
    pub fn new(name: impl Into<String>, formulas: Vec<Formula>) -> Result<Self> {
        for f in &formulas {
            if let Some(v) = f.free_vars().into_iter().next() {
                return Err(Error::OpenFormula {
                    var: v,
                    formula: render(f),
                });
            }
        }
        Ok(Theory {
            name: name.into(),
            formulas,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    /// The conjunction of all members (`True` for the empty theory).
    pub fn conjunction(&self) -> Formula {
        Formula::and(self.formulas.iter().cloned())
    }

    pub fn vocabulary(&self) -> Vocabulary {
        self.formulas
            .iter()
            .fold(Vocabulary::default(), |acc, f| acc.union(&vocabulary_of(f)))
    }

    pub fn is_propositional(&self) -> bool {
        self.formulas.iter().all(Formula::is_propositional)
    }

    /// Ground under domain closure. The domain is `extra_domain` together with
    /// every constant occurring in the theory.
    pub fn ground(&self, extra_domain: &[String]) -> Result<GroundTheory> {
        let syntactic = self.vocabulary();
        let mut domain: BTreeSet<String> = syntactic.constants().clone();
        domain.extend(extra_domain.iter().cloned());
        if domain.is_empty() && self.formulas.iter().any(Formula::has_quantifier) {
            return Err(Error::EmptyDomain);
        }
        let consts: Vec<String> = domain.iter().cloned().collect();
        let formulas = self
            .formulas
            .iter()
            .map(|f| ground_formula(f, &consts, &mut HashMap::new()))
            .collect::<Result<Vec<_>>>()?;
        let vocabulary = Vocabulary::herbrand(syntactic.predicates().iter(), &domain);
        Ok(GroundTheory {
            name: self.name.clone(),
            formulas,
            vocabulary,
        })
    }
}

/// A theory after grounding: quantifier-free ground formulas plus the full set
/// of ground atoms its worlds range over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTheory {
    pub name: String,
    pub formulas: Vec<Formula>,
    pub vocabulary: Vocabulary,
}

impl GroundTheory {
    pub fn conjunction(&self) -> Formula {
        Formula::and(self.formulas.iter().cloned())
    }

    pub fn domain(&self) -> Vec<String> {
        self.vocabulary.constants().iter().cloned().collect()
    }
}

/// Expand quantifiers over `domain`: `forall` to a flattened conjunction,
/// `exists` to a flattened disjunction.
pub fn ground_formula(
    f: &Formula,
    domain: &[String],
    env: &mut HashMap<String, String>,
) -> Result<Formula> {
    Ok(match f {
        Formula::Atom(a) => {
            let mut args = Vec::with_capacity(a.args.len());
            for t in &a.args {
                args.push(match t {
                    Term::Const(_) => t.clone(),
                    Term::Var(v) => match env.get(v) {
                        Some(c) => Term::Const(c.clone()),
                        None => {
                            return Err(Error::OpenFormula {
                                var: v.clone(),
                                formula: render(f),
                            })
                        }
                    },
                });
            }
            Formula::Atom(Atom::new(a.predicate.clone(), args))
        }
        Formula::True | Formula::False => f.clone(),
        Formula::Not(x) => Formula::not(ground_formula(x, domain, env)?),
        Formula::And(cs) => Formula::and(
            cs.iter()
                .map(|c| ground_formula(c, domain, env))
                .collect::<Result<Vec<_>>>()?,
        ),
        Formula::Or(cs) => Formula::or(
            cs.iter()
                .map(|c| ground_formula(c, domain, env))
                .collect::<Result<Vec<_>>>()?,
        ),
        Formula::Implies(a, b) => Formula::implies(
            ground_formula(a, domain, env)?,
            ground_formula(b, domain, env)?,
        ),
        Formula::Equiv(a, b) => Formula::equiv(
            ground_formula(a, domain, env)?,
            ground_formula(b, domain, env)?,
        ),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            if domain.is_empty() {
                return Err(Error::EmptyDomain);
            }
            let saved = env.get(v).cloned();
            let mut instances = Vec::with_capacity(domain.len());
            for c in domain {
                env.insert(v.clone(), c.clone());
                instances.push(ground_formula(body, domain, env));
            }
            match saved {
                Some(s) => env.insert(v.clone(), s),
                None => env.remove(v),
            };
            let instances = instances.into_iter().collect::<Result<Vec<_>>>()?;
            if matches!(f, Formula::Forall(..)) {
                Formula::and(instances)
            } else {
                Formula::or(instances)
            }
        }
    })
}

/// First-order satisfaction of a closed formula in the relational structure
/// over `domain` whose true ground atoms are given by `holds`. Independent of
/// [`ground_formula`]; used to cross-check it.
pub fn satisfies_relational(
    f: &Formula,
    domain: &[String],
    holds: &impl Fn(&str) -> bool,
) -> Result<bool> {
    fn go(
        f: &Formula,
        domain: &[String],
        holds: &impl Fn(&str) -> bool,
        env: &mut Vec<(String, String)>,
    ) -> Result<bool> {
        Ok(match f {
            Formula::Atom(a) => {
                let mut name = a.predicate.clone();
                if !a.args.is_empty() {
                    name.push('(');
                    for (i, t) in a.args.iter().enumerate() {
                        if i > 0 {
                            name.push(',');
                        }
                        match t {
                            Term::Const(c) => name.push_str(c),
                            Term::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
                                Some((_, c)) => name.push_str(c),
                                None => {
                                    return Err(Error::OpenFormula {
                                        var: v.clone(),
                                        formula: render(f),
                                    })
                                }
                            },
                        }
                    }
                    name.push(')');
                }
                holds(&name)
            }
            Formula::True => true,
            Formula::False => false,
            Formula::Not(x) => !go(x, domain, holds, env)?,
            Formula::And(cs) => {
                for c in cs {
                    if !go(c, domain, holds, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(cs) => {
                for c in cs {
                    if go(c, domain, holds, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !go(a, domain, holds, env)? || go(b, domain, holds, env)?,
            Formula::Equiv(a, b) => go(a, domain, holds, env)? == go(b, domain, holds, env)?,
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let want = matches!(f, Formula::Exists(..));
                let mut result = !want;
                for c in domain {
                    env.push((v.clone(), c.clone()));
                    let r = go(body, domain, holds, env);
                    env.pop();
                    if r? == want {
                        result = want;
                        break;
                    }
                }
                result
            }
        })
    }
    go(f, domain, holds, &mut Vec::new())
}
