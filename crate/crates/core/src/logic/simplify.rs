use super::formula::Formula;

/// One bottom-up rewriting pass: constant folding, unit/annihilator laws for
/// every connective, double negation, duplicate and complementary children in
/// flattened `And`/`Or`. Quantifier bodies are simplified but the quantifier is
/// kept (its truth on a constant body depends on the domain being nonempty).
///
/// The result is equivalent to the input and contains no truth constant unless
/// it is one.
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(x) => negate(simplify(x)),
        Formula::And(cs) => conjoin(cs.iter().map(simplify)),
        Formula::Or(cs) => disjoin(cs.iter().map(simplify)),
        Formula::Implies(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (&a, &b) {
                (Formula::False, _) | (_, Formula::True) => Formula::True,
                (Formula::True, _) => b,
                (_, Formula::False) => negate(a),
                _ if a == b => Formula::True,
                _ => Formula::implies(a, b),
            }
        }
        Formula::Equiv(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (&a, &b) {
                (Formula::True, _) => b,
                (_, Formula::True) => a,
                (Formula::False, _) => negate(b),
                (_, Formula::False) => negate(a),
                _ if a == b => Formula::True,
                _ => Formula::equiv(a, b),
            }
        }
        Formula::Exists(v, x) => Formula::exists(v.clone(), simplify(x)),
        Formula::Forall(v, x) => Formula::forall(v.clone(), simplify(x)),
    }
}

/// Negation of an already simplified formula.
fn negate(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(inner) => *inner,
        other => Formula::not(other),
    }
}

fn is_complement(a: &Formula, b: &Formula) -> bool {
    matches!(a, Formula::Not(x) if **x == *b) || matches!(b, Formula::Not(x) if **x == *a)
}

/// Conjunction of already simplified formulas.
fn conjoin(children: impl IntoIterator<Item = Formula>) -> Formula {
    let mut out: Vec<Formula> = Vec::new();
    for c in children {
        let parts = match c {
            Formula::True => continue,
            Formula::False => return Formula::False,
            Formula::And(inner) => inner,
            other => vec![other],
        };
        for p in parts {
            if out.iter().any(|o| is_complement(o, &p)) {
                return Formula::False;
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Formula::and(out)
}

/// Disjunction of already simplified formulas.
fn disjoin(children: impl IntoIterator<Item = Formula>) -> Formula {
    let mut out: Vec<Formula> = Vec::new();
    for c in children {
        let parts = match c {
            Formula::False => continue,
            Formula::True => return Formula::True,
            Formula::Or(inner) => inner,
            other => vec![other],
        };
        for p in parts {
            if out.iter().any(|o| is_complement(o, &p)) {
                return Formula::True;
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Formula::or(out)
}
