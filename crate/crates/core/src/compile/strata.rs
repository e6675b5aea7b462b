use std::collections::{BTreeMap, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::program::Rule;
use crate::error::{Error, Result};

/// A stratum per predicate, or the predicates of a cycle through negation.
///
/// Predicates without rules sit in stratum 1; a defined predicate sits at the
/// maximum over its rules of the strata of positive body predicates and one
/// more than those of negated ones. Predicates in one strongly connected
/// component share a stratum, so positive recursion is allowed.
pub fn check_stratification(rules: &[Rule]) -> Result<BTreeMap<String, usize>> {
    let mut g: DiGraph<String, bool> = DiGraph::new();
    let mut ids: HashMap<String, NodeIndex> = HashMap::new();
    let mut node = |g: &mut DiGraph<String, bool>, name: &str| {
        *ids.entry(name.to_string())
            .or_insert_with(|| g.add_node(name.to_string()))
    };
    for r in rules {
        let h = node(&mut g, &r.head.predicate);
        for l in &r.body {
            let b = node(&mut g, &l.atom.predicate);
            // edge body -> head, weight true when negated
            g.add_edge(b, h, !l.positive);
        }
    }
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0usize; g.node_count()];
    for (k, scc) in sccs.iter().enumerate() {
        for n in scc {
            comp[n.index()] = k;
        }
    }
    for e in g.edge_indices() {
        let (a, b) = g.edge_endpoints(e).unwrap();
        if g[e] && comp[a.index()] == comp[b.index()] {
            let mut names: Vec<&str> = sccs[comp[a.index()]]
                .iter()
                .map(|n| g[*n].as_str())
                .collect();
            names.sort_unstable();
            return Err(Error::Unstratifiable(names.join(", ")));
        }
    }
    // tarjan_scc yields components in reverse topological order
    let mut stratum = vec![1usize; g.node_count()];
    for scc in sccs.iter().rev() {
        let mut s = 1;
        for n in scc {
            for e in g.edges_directed(*n, petgraph::Direction::Incoming) {
                use petgraph::visit::EdgeRef;
                let src = e.source();
                if comp[src.index()] == comp[n.index()] {
                    continue;
                }
                s = s.max(stratum[src.index()] + usize::from(*e.weight()));
            }
        }
        for n in scc {
            stratum[n.index()] = s;
        }
    }
    Ok(g.node_indices()
        .map(|n| (g[n].clone(), stratum[n.index()]))
        .collect())
}
