//! A tiny evaluator for the ProbLog subset the compiler emits (and the
//! hand-written programs it is compared with): probabilistic facts,
//! annotated disjunctions, intensional facts guarded by `dom/1`, ground facts,
//! stratified rules with `\+`, and `query/1`. Worlds are enumerated; each
//! world's least model is computed stratum by stratum.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use floss::measure::decimal::parse_decimal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lit {
    pub positive: bool,
    pub atom: String,
}

#[derive(Debug, Clone)]
pub struct Clause {
    pub head: String,
    pub body: Vec<Lit>,
}

#[derive(Debug, Default)]
pub struct Program {
    /// Independent facts and choices, each a list of (atom, weight).
    pub blocks: Vec<Vec<(String, BigRational)>>,
    /// `true` for annotated disjunctions.
    pub exclusive: Vec<bool>,
    pub clauses: Vec<Clause>,
    pub queries: Vec<String>,
}

fn statements(text: &str) -> Vec<String> {
    let clean: String = text
        .lines()
        .map(|l| l.split('%').next().unwrap())
        .collect::<Vec<_>>()
        .join("\n");
    let chars: Vec<char> = clean.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let ends = c == '.' && chars.get(i + 1).is_none_or(|n| n.is_whitespace());
        if ends {
            out.push(cur.split_whitespace().collect::<String>());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    assert!(cur.trim().is_empty(), "unterminated statement: {cur}");
    out
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    parts.push(cur);
    parts
}

fn literal(s: &str) -> Lit {
    match s.strip_prefix("\\+") {
        Some(rest) => Lit {
            positive: false,
            atom: rest.to_string(),
        },
        None => Lit {
            positive: true,
            atom: s.to_string(),
        },
    }
}

fn args(atom: &str) -> Vec<String> {
    match atom.find('(') {
        Some(i) => atom[i + 1..atom.len() - 1]
            .split(',')
            .map(str::to_string)
            .collect(),
        None => vec![],
    }
}

fn predicate(atom: &str) -> &str {
    atom.split('(').next().unwrap()
}

fn is_var(t: &str) -> bool {
    t.starts_with(|c: char| c.is_ascii_uppercase())
}

fn substitute(atom: &str, env: &HashMap<String, String>) -> String {
    let a = args(atom);
    if a.is_empty() {
        return atom.to_string();
    }
    let a: Vec<&str> = a
        .iter()
        .map(|t| env.get(t).map_or(t.as_str(), String::as_str))
        .collect();
    format!("{}({})", predicate(atom), a.join(","))
}

fn assignments(vars: &[String], domain: &[String]) -> Vec<HashMap<String, String>> {
    let mut out = vec![HashMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|env| {
                domain.iter().map(move |c| {
                    let mut e = env.clone();
                    e.insert(v.clone(), c.clone());
                    e
                })
            })
            .collect();
    }
    out
}

pub fn parse(text: &str) -> Program {
    let mut p = Program::default();
    let mut intensional = Vec::new();
    for st in statements(text) {
        if st.is_empty() {
            continue;
        }
        if let Some(q) = st.strip_prefix("query(") {
            p.queries.push(q[..q.len() - 1].to_string());
            continue;
        }
        let (head, body) = match st.split_once(":-") {
            Some((h, b)) => (
                h.to_string(),
                split_top(b, ',').iter().map(|l| literal(l)).collect(),
            ),
            None => (st.clone(), vec![]),
        };
        if head.contains("::") {
            let alts: Vec<(String, BigRational)> = split_top(&head, ';')
                .iter()
                .map(|a| {
                    let (w, atom) = a.split_once("::").unwrap();
                    (atom.to_string(), parse_decimal(w).unwrap())
                })
                .collect();
            if body.is_empty() {
                p.exclusive.push(alts.len() > 1);
                p.blocks.push(alts);
            } else {
                intensional.push((alts, body));
            }
        } else {
            p.clauses.push(Clause { head, body });
        }
    }
    let domain = domain_of(&p);
    for (alts, body) in intensional {
        assert_eq!(alts.len(), 1);
        let (atom, w) = &alts[0];
        assert!(body.iter().all(|l| predicate(&l.atom) == "dom"));
        let vars: Vec<String> = args(atom).into_iter().filter(|t| is_var(t)).collect();
        for env in assignments(&vars, &domain) {
            p.exclusive.push(false);
            p.blocks.push(vec![(substitute(atom, &env), w.clone())]);
        }
    }
    p
}

/// `dom/1` facts if any, otherwise every constant of a ground atom.
fn domain_of(p: &Program) -> Vec<String> {
    let dom: BTreeSet<String> = p
        .clauses
        .iter()
        .filter(|c| c.body.is_empty() && predicate(&c.head) == "dom")
        .flat_map(|c| args(&c.head))
        .collect();
    if !dom.is_empty() {
        return dom.into_iter().collect();
    }
    let mut out = BTreeSet::new();
    for b in &p.blocks {
        for (a, _) in b {
            out.extend(args(a).into_iter().filter(|t| !is_var(t)));
        }
    }
    for c in &p.clauses {
        for a in std::iter::once(&c.head).chain(c.body.iter().map(|l| &l.atom)) {
            out.extend(args(a).into_iter().filter(|t| !is_var(t)));
        }
    }
    out.into_iter().collect()
}

impl Program {
    /// Ground atom -> weight of every probabilistic declaration.
    pub fn weights(&self) -> BTreeMap<String, BigRational> {
        self.blocks.iter().flatten().cloned().collect()
    }

    fn ground_clauses(&self) -> Vec<Clause> {
        let domain = domain_of(self);
        let mut out = Vec::new();
        for c in &self.clauses {
            let mut vars = BTreeSet::new();
            for a in std::iter::once(&c.head).chain(c.body.iter().map(|l| &l.atom)) {
                vars.extend(args(a).into_iter().filter(|t| is_var(t)));
            }
            let vars: Vec<String> = vars.into_iter().collect();
            for env in assignments(&vars, &domain) {
                out.push(Clause {
                    head: substitute(&c.head, &env),
                    body: c
                        .body
                        .iter()
                        .map(|l| Lit {
                            positive: l.positive,
                            atom: substitute(&l.atom, &env),
                        })
                        .collect(),
                });
            }
        }
        out
    }

    /// Predicate strata; panics on a negative cycle.
    fn strata(&self) -> HashMap<String, usize> {
        let mut s: HashMap<String, usize> = HashMap::new();
        let n = self.clauses.len() + 1;
        for _ in 0..=n {
            let mut changed = false;
            for c in &self.clauses {
                let h = predicate(&c.head).to_string();
                let need = c
                    .body
                    .iter()
                    .map(|l| {
                        s.get(predicate(&l.atom)).copied().unwrap_or(0) + usize::from(!l.positive)
                    })
                    .max()
                    .unwrap_or(0);
                let cur = s.entry(h).or_insert(0);
                if need > *cur {
                    *cur = need;
                    changed = true;
                }
            }
            if !changed {
                return s;
            }
        }
        panic!("program is not stratified");
    }

    /// Probability of each query.
    pub fn query_probabilities(&self) -> Vec<(String, BigRational)> {
        let ground = self.ground_clauses();
        let strata = self.strata();
        let mut layers: BTreeMap<usize, Vec<&Clause>> = BTreeMap::new();
        for c in &ground {
            layers
                .entry(strata[predicate(&c.head)])
                .or_default()
                .push(c);
        }
        let prob_atoms: Vec<&String> = self.blocks.iter().flatten().map(|(a, _)| a).collect();
        assert!(prob_atoms.len() <= 20);
        let mut totals = vec![BigRational::zero(); self.queries.len()];
        for bits in 0u64..1 << prob_atoms.len() {
            let mut weight = BigRational::one();
            let mut k = 0;
            let mut truth: BTreeSet<String> = BTreeSet::new();
            for (b, &excl) in self.blocks.iter().zip(&self.exclusive) {
                let on: Vec<usize> = (0..b.len()).filter(|i| bits >> (k + i) & 1 == 1).collect();
                k += b.len();
                if excl {
                    weight *= match on.len() {
                        0 => {
                            BigRational::one()
                                - b.iter().map(|(_, w)| w.clone()).sum::<BigRational>()
                        }
                        1 => b[on[0]].1.clone(),
                        _ => BigRational::zero(),
                    };
                } else {
                    weight *= if on.is_empty() {
                        BigRational::one() - &b[0].1
                    } else {
                        b[0].1.clone()
                    };
                }
                truth.extend(on.iter().map(|&i| b[i].0.clone()));
            }
            if weight.is_zero() {
                continue;
            }
            for layer in layers.values() {
                loop {
                    let mut changed = false;
                    for c in layer {
                        if !truth.contains(&c.head)
                            && c.body.iter().all(|l| truth.contains(&l.atom) == l.positive)
                        {
                            truth.insert(c.head.clone());
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
            }
            for (t, q) in totals.iter_mut().zip(&self.queries) {
                if truth.contains(q) {
                    *t += &weight;
                }
            }
        }
        self.queries.iter().cloned().zip(totals).collect()
    }
}
