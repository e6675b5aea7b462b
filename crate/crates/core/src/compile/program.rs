use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::logic::{Atom, Formula, Term};

/// The guard predicate binding a variable to the domain.
pub const DOM: &str = "dom";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("\\+ ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// `head :- l1, ..., lk.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Atom,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn new(head: Atom, body: Vec<Literal>) -> Self {
        Rule { head, body }
    }

    pub fn fact(head: Atom) -> Self {
        Rule { head, body: vec![] }
    }

    fn vars_of<'a>(atoms: impl Iterator<Item = &'a Atom>) -> BTreeSet<String> {
        atoms.flat_map(|a| a.vars().map(str::to_string)).collect()
    }

    /// Every variable of the head and of negated literals occurs in some
    /// positive body literal.
    pub fn is_safe(&self) -> bool {
        let covered = Self::vars_of(self.body.iter().filter(|l| l.positive).map(|l| &l.atom));
        let needed = Self::vars_of(
            std::iter::once(&self.head)
                .chain(self.body.iter().filter(|l| !l.positive).map(|l| &l.atom)),
        );
        needed.is_subset(&covered)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        Self::vars_of(std::iter::once(&self.head).chain(self.body.iter().map(|l| &l.atom)))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, l) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{l}")?;
            }
        }
        f.write_str(".")
    }
}

/// Output of the formula compilers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedProgram {
    pub rules: Vec<Rule>,
    /// The atom equivalent to the whole source formula.
    pub root: Atom,
    /// Auxiliary atom of every compiled non-atomic subformula, in creation order.
    pub aux_map: Vec<(Formula, Atom)>,
    /// Stratum of every predicate occurring in the program.
    pub strata: BTreeMap<String, usize>,
    /// Constants the program is instantiated over.
    pub domain: Vec<String>,
}

impl StratifiedProgram {
    pub fn aux_for(&self, f: &Formula) -> Option<&Atom> {
        self.aux_map.iter().find(|(g, _)| g == f).map(|(_, a)| a)
    }

    /// Predicates defined by some rule.
    pub fn defined(&self) -> BTreeSet<String> {
        self.rules
            .iter()
            .map(|r| r.head.predicate.clone())
            .collect()
    }

    pub fn uses_dom(&self) -> bool {
        self.rules
            .iter()
            .flat_map(|r| &r.body)
            .any(|l| l.atom.predicate == DOM)
    }

    /// Source atoms the program reads: body atoms whose predicate no rule
    /// defines, instantiated over the domain when they carry variables.
    pub fn source_atoms(&self) -> BTreeSet<Atom> {
        let defined = self.defined();
        let mut preds: BTreeSet<(String, usize)> = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut visit = |a: &Atom| {
            if a.predicate == DOM || defined.contains(&a.predicate) {
                return;
            }
            if a.is_ground() {
                out.insert(a.clone());
            } else {
                preds.insert((a.predicate.clone(), a.arity()));
            }
        };
        for r in &self.rules {
            for l in &r.body {
                visit(&l.atom);
            }
        }
        visit(&self.root);
        for (p, k) in preds {
            let n = self.domain.len();
            for idx in 0..n.pow(k as u32) {
                let mut rest = idx;
                let mut args = vec![Term::constant(""); k];
                for slot in args.iter_mut().rev() {
                    *slot = Term::constant(self.domain[rest % n].clone());
                    rest /= n;
                }
                out.insert(Atom::new(p.clone(), args));
            }
        }
        out
    }
}

impl fmt::Display for StratifiedProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
