use std::fmt::Write;

use super::program::{StratifiedProgram, DOM};
use crate::logic::Atom;
use crate::measure::decimal::render_decimal;
use crate::measure::ProbabilitySpec;

/// ProbLog text: annotated disjunctions, facts, `0.5::a.` for every source
/// atom the spec leaves out, `dom/1` facts when rules use them, the rules,
/// then one `query/1` per query atom.
pub fn emit_problog(p: &StratifiedProgram, spec: &ProbabilitySpec, queries: &[Atom]) -> String {
    let w = |q| render_decimal(q, 10);
    let mut out = String::new();
    for d in spec.disjunctions() {
        let alts: Vec<String> = d.iter().map(|(a, u)| format!("{}::{a}", w(u))).collect();
        writeln!(out, "{}.", alts.join("; ")).unwrap();
    }
    for (a, u) in spec.facts() {
        writeln!(out, "{}::{a}.", w(u)).unwrap();
    }
    let declared = spec.atom_names();
    let mut defaults: Vec<String> = p
        .source_atoms()
        .iter()
        .map(Atom::name)
        .filter(|n| !declared.contains(n))
        .collect();
    defaults.sort();
    for a in defaults {
        writeln!(out, "0.5::{a}.").unwrap();
    }
    if p.uses_dom() {
        for c in &p.domain {
            writeln!(out, "{DOM}({c}).").unwrap();
        }
    }
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    for q in queries {
        writeln!(out, "query({q}).").unwrap();
    }
    out
}
