use std::collections::BTreeSet;
use std::fmt;

/// An argument of an atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `predicate(t1, ..., tk)`; a propositional variable is a predicate with no arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Atom::new(name, Vec::new())
    }

    /// Ground atom over the given constants.
    pub fn ground<S: AsRef<str>>(predicate: impl Into<String>, constants: &[S]) -> Self {
        Atom::new(
            predicate,
            constants
                .iter()
                .map(|c| Term::constant(c.as_ref()))
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    /// The identifier of a ground atom: `p` or `p(c1,...,ck)`.
    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Propositional or first-order formula.
///
/// Values built through the constructor functions keep `And`/`Or` flattened
/// with at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    True,
    False,
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Equiv(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(Atom::prop(name))
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(name, args))
    }

    pub fn constant(value: bool) -> Self {
        if value {
            Formula::True
        } else {
            Formula::False
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Flattened conjunction. Empty input is `True`, a single child is returned as is.
    pub fn and(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Flattened disjunction. Empty input is `False`.
    pub fn or(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn equiv(a: Formula, b: Formula) -> Self {
        Formula::Equiv(Box::new(a), Box::new(b))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Formula::True | Formula::False)
    }

    /// Ground and quantifier-free.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(a) => a.is_ground(),
            Formula::True | Formula::False => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_propositional),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => false,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().any(Formula::has_quantifier),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => {
                a.has_quantifier() || b.has_quantifier()
            }
            Formula::Exists(..) | Formula::Forall(..) => true,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => Vec::new(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => vec![f],
            Formula::And(cs) | Formula::Or(cs) => cs.iter().collect(),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => vec![a, b],
        }
    }

    /// Variables with at least one free occurrence.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for v in a.vars() {
                    if !bound.iter().any(|b| b == v) {
                        out.insert(v.to_string());
                    }
                }
            }
            Formula::True | Formula::False => {}
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every atom occurrence, deduplicated and sorted.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.clone());
        });
        out
    }

    pub fn visit_atoms(&self, visit: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Atom(a) => visit(a),
            _ => {
                for c in self.children() {
                    c.visit_atoms(visit);
                }
            }
        }
    }

    /// Replace every occurrence of the ground atom named `atom` by a truth constant.
    pub fn substitute_bool(&self, atom: &str, value: bool) -> Formula {
        self.map_atoms(&mut |a| {
            if a.is_ground() && a.name() == atom {
                Some(Formula::constant(value))
            } else {
                None
            }
        })
    }

    /// Rebuild the formula replacing atoms for which `f` returns a value.
    /// Structure is otherwise preserved (no re-flattening).
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(a) => f(a).unwrap_or_else(|| self.clone()),
            Formula::True | Formula::False => self.clone(),
            Formula::Not(x) => Formula::Not(Box::new(x.map_atoms(f))),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Formula::Implies(a, b) => {
                Formula::Implies(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f)))
            }
            Formula::Equiv(a, b) => {
                Formula::Equiv(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f)))
            }
            Formula::Exists(v, x) => Formula::Exists(v.clone(), Box::new(x.map_atoms(f))),
            Formula::Forall(v, x) => Formula::Forall(v.clone(), Box::new(x.map_atoms(f))),
        }
    }

    /// Re-apply the flattening constructors bottom-up.
    pub fn normalized(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => self.clone(),
            Formula::Not(x) => Formula::not(x.normalized()),
            Formula::And(cs) => Formula::and(cs.iter().map(Formula::normalized)),
            Formula::Or(cs) => Formula::or(cs.iter().map(Formula::normalized)),
            Formula::Implies(a, b) => Formula::implies(a.normalized(), b.normalized()),
            Formula::Equiv(a, b) => Formula::equiv(a.normalized(), b.normalized()),
            Formula::Exists(v, x) => Formula::exists(v.clone(), x.normalized()),
            Formula::Forall(v, x) => Formula::forall(v.clone(), x.normalized()),
        }
    }

    /// Number of binary connectives (an n-ary `And`/`Or` counts n-1), negations
    /// and quantifiers.
    pub fn connective_count(&self) -> usize {
        let own = match self {
            Formula::Atom(_) | Formula::True | Formula::False => 0,
            Formula::And(cs) | Formula::Or(cs) => cs.len().saturating_sub(1),
            _ => 1,
        };
        own + self
            .children()
            .iter()
            .map(|c| c.connective_count())
            .sum::<usize>()
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}
