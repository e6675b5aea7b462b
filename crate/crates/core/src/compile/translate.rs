//! Formula to stratified program.
//!
//! Every non-atomic subformula `B` gets an auxiliary atom `r_B` over the free
//! variables of `B` (sorted), defined so that `r_B` holds exactly when `B`
//! does. Structurally equal subformulas share one auxiliary atom.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::naming::aux_name;
use super::program::{Literal, Rule, StratifiedProgram, DOM};
use super::strata::check_stratification;
use crate::error::{Error, Result};
use crate::logic::{vocabulary_of, Atom, Formula, Term, Theory};
use crate::textio::render;

struct Compiler {
    rules: Vec<Rule>,
    aux: HashMap<Formula, Atom>,
    order: Vec<(Formula, Atom)>,
    taken: HashSet<String>,
}

impl Compiler {
    fn new(f: &Formula) -> Self {
        let mut taken = HashSet::new();
        f.visit_atoms(&mut |a| {
            taken.insert(a.predicate.clone());
        });
        taken.insert(DOM.to_string());
        Compiler {
            rules: Vec::new(),
            aux: HashMap::new(),
            order: Vec::new(),
            taken,
        }
    }

    fn fresh(&mut self, f: &Formula) -> Atom {
        let mut len = 4;
        let name = loop {
            let n = aux_name(f, len);
            let pair = [format!("{n}_1"), format!("{n}_2")];
            if !self.taken.contains(&n) && !pair.iter().any(|p| self.taken.contains(p)) {
                self.taken.insert(n.clone());
                self.taken.extend(pair);
                break n;
            }
            len += 2;
        };
        let args = f.free_vars().into_iter().map(Term::Var).collect();
        let atom = Atom::new(name, args);
        self.aux.insert(f.clone(), atom.clone());
        self.order.push((f.clone(), atom.clone()));
        atom
    }

    /// Add a rule, guarding head and negated-literal variables that no
    /// positive literal binds with `dom(V)`.
    fn push(&mut self, head: Atom, mut body: Vec<Literal>) {
        let bound: BTreeSet<&str> = body
            .iter()
            .filter(|l| l.positive)
            .flat_map(|l| l.atom.vars())
            .collect();
        let needed: BTreeSet<&str> = head
            .vars()
            .chain(
                body.iter()
                    .filter(|l| !l.positive)
                    .flat_map(|l| l.atom.vars()),
            )
            .collect();
        let guards: Vec<Literal> = needed
            .difference(&bound)
            .map(|v| Literal::pos(Atom::new(DOM, vec![Term::var(*v)])))
            .collect();
        body.extend(guards);
        let rule = Rule::new(head, body);
        debug_assert!(rule.is_safe(), "unsafe rule {rule}");
        self.rules.push(rule);
    }

    fn go(&mut self, f: &Formula) -> Atom {
        if let Formula::Atom(a) = f {
            return a.clone();
        }
        if let Some(a) = self.aux.get(f) {
            return a.clone();
        }
        match f {
            Formula::Atom(_) => unreachable!(),
            Formula::True => {
                let h = self.fresh(f);
                self.push(h.clone(), vec![]);
                h
            }
            Formula::False => {
                let t = self.go(&Formula::True);
                let h = self.fresh(f);
                self.push(h.clone(), vec![Literal::neg(t)]);
                h
            }
            Formula::Not(b) => {
                let b = self.go(b);
                let h = self.fresh(f);
                self.push(h.clone(), vec![Literal::neg(b)]);
                h
            }
            Formula::And(cs) => {
                let body: Vec<Literal> = cs.iter().map(|c| Literal::pos(self.go(c))).collect();
                let h = self.fresh(f);
                self.push(h.clone(), body);
                h
            }
            Formula::Or(cs) => {
                let parts: Vec<Atom> = cs.iter().map(|c| self.go(c)).collect();
                let h = self.fresh(f);
                for p in parts {
                    self.push(h.clone(), vec![Literal::pos(p)]);
                }
                h
            }
            Formula::Implies(c, d) => {
                let (c, d) = (self.go(c), self.go(d));
                let h = self.fresh(f);
                self.push(h.clone(), vec![Literal::neg(c)]);
                self.push(h.clone(), vec![Literal::pos(d)]);
                h
            }
            Formula::Equiv(c, d) => {
                let (c, d) = (self.go(c), self.go(d));
                let h = self.fresh(f);
                let h1 = Atom::new(format!("{}_1", h.predicate), h.args.clone());
                let h2 = Atom::new(format!("{}_2", h.predicate), h.args.clone());
                self.push(h1.clone(), vec![Literal::neg(c.clone())]);
                self.push(h1.clone(), vec![Literal::pos(d.clone())]);
                self.push(h2.clone(), vec![Literal::neg(d)]);
                self.push(h2.clone(), vec![Literal::pos(c)]);
                self.push(h.clone(), vec![Literal::pos(h1), Literal::pos(h2)]);
                h
            }
            Formula::Exists(_, b) => {
                let b = self.go(b);
                let h = self.fresh(f);
                self.push(h.clone(), vec![Literal::pos(b)]);
                h
            }
            Formula::Forall(y, b) => {
                // forall y B  ==  ~ exists y ~B
                let witness = Formula::exists(y.clone(), Formula::not((**b).clone()));
                let e = self.go(&witness);
                let h = self.fresh(f);
                self.push(h.clone(), vec![Literal::neg(e)]);
                h
            }
        }
    }
}

/// Upper bound on the rule count: five per connective, quantifier or truth constant.
pub fn size_bound(f: &Formula) -> usize {
    fn constants(f: &Formula) -> usize {
        match f {
            Formula::True | Formula::False => 1,
            _ => f.children().into_iter().map(constants).sum(),
        }
    }
    5 * (f.connective_count() + constants(f))
}

fn finish(f: &Formula, domain: Vec<String>) -> Result<StratifiedProgram> {
    let mut c = Compiler::new(f);
    let root = c.go(f);
    assert!(
        c.rules.len() <= size_bound(f),
        "rule count {} exceeds the linear bound for {}",
        c.rules.len(),
        render(f)
    );
    let strata = check_stratification(&c.rules)?;
    if let Some(r) = c.rules.iter().find(|r| !r.is_safe()) {
        return Err(Error::UnsafeRule(r.to_string()));
    }
    Ok(StratifiedProgram {
        rules: c.rules,
        root,
        aux_map: c.order,
        strata,
        domain,
    })
}

/// Compile a ground, quantifier-free formula.
pub fn compile_prop(f: &Formula) -> Result<StratifiedProgram> {
    if !f.is_propositional() {
        return Err(Error::NotPropositional(render(f)));
    }
    finish(f, Vec::new())
}

/// Compile a closed first-order formula. The domain used for `dom` facts
/// and instantiation is `domain` together with the constants of `f`.
pub fn compile_fo(f: &Formula, domain: &[String]) -> Result<StratifiedProgram> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::OpenFormula {
            var: v,
            formula: render(f),
        });
    }
    let mut d: BTreeSet<String> = vocabulary_of(f).constants().clone();
    d.extend(domain.iter().cloned());
    if d.is_empty() && f.has_quantifier() {
        return Err(Error::EmptyDomain);
    }
    finish(f, d.into_iter().collect())
}

/// Compile the conjunction of a theory's formulas.
pub fn compile_theory(t: &Theory, domain: &[String]) -> Result<StratifiedProgram> {
    let f = t.conjunction();
    if f.is_propositional() && domain.is_empty() {
        compile_prop(&f)
    } else {
        compile_fo(&f, domain)
    }
}
