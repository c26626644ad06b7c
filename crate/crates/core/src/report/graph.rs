//! DOT export of the classification graph: one node per (family, n, m, l),
//! one edge per recognized maximal quotient.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::group::iso;
use crate::group::{Group, GroupParams, FAMILIES};

/// Build a DOT digraph of all canonical groups with l >= 2 and order at most
/// `max_order`. For each group with n >= 2, every quotient by a central
/// involution contributes one edge to its recognized target; when labels
/// coincide (degenerate l = 1 targets) the least family index is drawn.
pub fn quotient_graph(max_order: u64, budget: u64) -> Result<String> {
    let mut nodes: BTreeSet<String> = BTreeSet::new();
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    let max_log = max_order.ilog2();
    for n in 1..=max_log {
        for m in 1..=n {
            for l in 2..=max_log {
                if n + m + l > max_log {
                    continue;
                }
                for f in FAMILIES {
                    if !f.canonical_at(n, m) {
                        continue;
                    }
                    let params = GroupParams::family(f, n, m, l)?;
                    let label = params.label();
                    nodes.insert(label.clone());
                    if n < 2 {
                        continue;
                    }
                    let group = Group::new(params)?;
                    for matches in iso::maximal_quotient_matches(&group, budget)? {
                        let Some(&((qn, qm, ql), fam)) = matches
                            .iter()
                            .min_by_key(|&&((a, b, c), fam)| (fam.index(), a, b, c))
                        else {
                            continue;
                        };
                        let target = format!("{fam}({qn},{qm},{ql})");
                        nodes.insert(target.clone());
                        edges.insert((label.clone(), target));
                    }
                }
            }
        }
    }
    let mut out = String::from("digraph quotients {\n");
    out.push_str("  rankdir=BT;\n");
    for n in &nodes {
        out.push_str(&format!("  \"{n}\";\n"));
    }
    for (a, b) in &edges {
        out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_contains_required_edge() {
        let dot = quotient_graph(128, 1024).unwrap();
        assert!(dot.contains("\"D6(2,1,2)\" -> \"D2(2,1,1)\";"), "{dot}");
        // Byte stability.
        assert_eq!(dot, quotient_graph(128, 1024).unwrap());
    }
}
