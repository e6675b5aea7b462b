//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's evaluator, compiler and
//! sweep: formulas are evaluated by a direct recursion over a name->bool map
//! and world weights are multiplied out from the spec's facts and choices.
#![allow(dead_code)]

pub mod problog;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use floss::logic::{Atom, Formula, Term};
use floss::measure::ProbabilitySpec;

pub type Assignment = HashMap<String, bool>;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dec(s: &str) -> BigRational {
    floss::measure::decimal::parse_decimal(s).unwrap()
}

pub fn atom_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

/// Propositional formulas over `a0..a{n-1}` of depth at most `depth`.
pub fn prop_formula(n: usize, depth: u32) -> BoxedStrategy<Formula> {
    let names = atom_names(n);
    let leaf = prop_oneof![
        8 => proptest::sample::select(names).prop_map(Formula::prop),
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ];
    leaf.prop_recursive(depth, 48, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::and),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::equiv(a, b)),
        ]
    })
    .boxed()
}

const VARS: [&str; 2] = ["X", "Y"];

fn fo_body(domain: Vec<String>, depth: u32) -> BoxedStrategy<Formula> {
    let term = prop_oneof![
        3 => proptest::sample::select(VARS.to_vec()).prop_map(Term::var),
        1 => proptest::sample::select(domain).prop_map(Term::constant),
    ];
    let leaf = prop_oneof![
        3 => term.clone().prop_map(|t| Formula::pred("p", vec![t])),
        3 => (term.clone(), term).prop_map(|(a, b)| Formula::pred("q", vec![a, b])),
        1 => Just(Formula::prop("r")),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        let var = proptest::sample::select(VARS.to_vec());
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            proptest::collection::vec(inner.clone(), 2..3).prop_map(Formula::and),
            proptest::collection::vec(inner.clone(), 2..3).prop_map(Formula::or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::equiv(a, b)),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::exists(v, b)),
            (var, inner).prop_map(|(v, b)| Formula::forall(v, b)),
        ]
    })
    .boxed()
}

/// A closed first-order formula over predicates `p/1`, `q/2`, `r/0`, with a
/// declared domain of one to three constants.
pub fn fo_formula(depth: u32) -> BoxedStrategy<(Formula, Vec<String>)> {
    (1usize..=3)
        .prop_flat_map(move |n| {
            let domain: Vec<String> = ["c", "d", "e"][..n].iter().map(|s| s.to_string()).collect();
            (
                Just(domain.clone()),
                fo_body(domain, depth),
                proptest::collection::vec(any::<bool>(), 2),
            )
        })
        .prop_map(|(domain, body, universal)| {
            let mut f = body;
            for (v, all) in VARS.iter().zip(universal) {
                if f.free_vars().contains(*v) {
                    f = if all {
                        Formula::forall(*v, f)
                    } else {
                        Formula::exists(*v, f)
                    };
                }
            }
            (f, domain)
        })
        .boxed()
}

/// A spec over some of `names`: each atom is left at the default, made a fact
/// with weight k/20, or put into one annotated disjunction.
pub fn spec_over(names: Vec<String>) -> BoxedStrategy<ProbabilitySpec> {
    let n = names.len();
    (
        proptest::collection::vec(0u8..3, n),
        proptest::collection::vec(0i64..=20, n),
        proptest::collection::vec(0i64..=10, n),
    )
        .prop_map(move |(kind, fact_w, ad_w)| {
            let mut facts = Vec::new();
            let mut ad = Vec::new();
            for i in 0..n {
                match kind[i] {
                    1 => facts.push((Atom::prop(names[i].clone()), q(fact_w[i], 20))),
                    2 if ad.len() < 3 => ad.push((names[i].clone(), ad_w[i])),
                    _ => {}
                }
            }
            let k = ad.len().max(1) as i64;
            let choice: Vec<(Atom, BigRational)> = ad
                .into_iter()
                .map(|(a, w)| (Atom::prop(a), q(w, 10 * k)))
                .collect();
            let ads = if choice.is_empty() {
                vec![]
            } else {
                vec![choice]
            };
            ProbabilitySpec::new(facts, ads).expect("generated spec is valid")
        })
        .boxed()
}

/// Direct truth value of a ground, quantifier-free formula.
pub fn eval(f: &Formula, w: &Assignment) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => w[&a.name()],
        Formula::Not(x) => !eval(x, w),
        Formula::And(cs) => cs.iter().all(|c| eval(c, w)),
        Formula::Or(cs) => cs.iter().any(|c| eval(c, w)),
        Formula::Implies(a, b) => !eval(a, w) || eval(b, w),
        Formula::Equiv(a, b) => eval(a, w) == eval(b, w),
        Formula::Exists(..) | Formula::Forall(..) => panic!("oracle needs a ground formula"),
    }
}

pub fn names_of(f: &Formula) -> BTreeSet<String> {
    f.atoms().iter().map(Atom::name).collect()
}

/// Every assignment to `names`.
pub fn assignments(names: &[String]) -> impl Iterator<Item = Assignment> + '_ {
    assert!(names.len() < 24);
    (0u64..1 << names.len()).map(move |bits| {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), bits >> i & 1 == 1))
            .collect()
    })
}

/// Probability of a world under the distribution semantics, computed straight
/// from the spec: facts contribute u or 1-u, a choice contributes the weight of
/// its single true alternative (or the remaining mass when none is true, or 0
/// when several are), every other atom 1/2.
pub fn world_weight(spec: &ProbabilitySpec, w: &Assignment) -> BigRational {
    let half = q(1, 2);
    let mut p = BigRational::one();
    let mut covered = BTreeSet::new();
    for (a, u) in spec.facts() {
        covered.insert(a.name());
        p *= if w[&a.name()] {
            u.clone()
        } else {
            BigRational::one() - u
        };
    }
    for ad in spec.disjunctions() {
        let on: Vec<&BigRational> = ad
            .iter()
            .inspect(|(a, _)| {
                covered.insert(a.name());
            })
            .filter(|(a, _)| w[&a.name()])
            .map(|(_, u)| u)
            .collect();
        p *= match on.len() {
            0 => BigRational::one() - ad.iter().map(|(_, u)| u.clone()).sum::<BigRational>(),
            1 => on[0].clone(),
            _ => BigRational::zero(),
        };
    }
    for _ in w.keys().filter(|n| !covered.contains(*n)) {
        p *= &half;
    }
    p
}

/// Vocabulary of the formulas together with the spec's atoms.
pub fn working_names(formulas: &[&Formula], spec: &ProbabilitySpec) -> Vec<String> {
    let mut names: BTreeSet<String> = spec.atom_names();
    for f in formulas {
        names.extend(names_of(f));
    }
    names.into_iter().collect()
}

pub fn oracle_probability(f: &Formula, names: &[String], spec: &ProbabilitySpec) -> BigRational {
    assignments(names)
        .filter(|w| eval(f, w))
        .map(|w| world_weight(spec, &w))
        .sum()
}

/// Strong (`exists`) or weak (`forall`) forgetting, as a predicate on
/// assignments: quantify over every assignment to `forgotten`.
pub fn oracle_forget<'a>(
    f: &'a Formula,
    forgotten: &'a [String],
    strong: bool,
) -> impl Fn(&Assignment) -> bool + 'a {
    move |w: &Assignment| {
        let mut values = assignments(forgotten).map(|part| {
            let mut full = w.clone();
            full.extend(part);
            eval(f, &full)
        });
        if strong {
            values.any(|b| b)
        } else {
            values.all(|b| b)
        }
    }
}
