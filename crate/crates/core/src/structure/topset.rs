use alloc::collections::{BTreeMap, BTreeSet};

use crate::graph::{OrientedGraph, VertexId};
use crate::tree::{derive, ensure_valid_derivation, Derivation};
use crate::Result;

/// The top-set of a derivation with top-ancestors, pivots and antennas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopSetReport {
    pub top_set: BTreeSet<VertexId>,
    pub top_ancestor: BTreeMap<VertexId, VertexId>,
    pub pivots: BTreeSet<VertexId>,
    pub antennas: BTreeSet<VertexId>,
}

/// Kept vertices that are the only kept vertex on their branch from the
/// root, with the derived data.
pub fn top_set(d: &Derivation) -> Result<TopSetReport> {
    ensure_valid_derivation(d)?;
    let mut top_ancestor = BTreeMap::new();
    let mut top_set = BTreeSet::new();
    for v in &d.kept {
        let branch = d.tree.branch_to(v);
        if let Some(a) = branch.iter().find(|x| d.kept.contains(*x)) {
            top_ancestor.insert(v.clone(), a.clone());
            if a == v {
                top_set.insert(v.clone());
            }
        }
    }
    let g = derive(d)?;
    let h = g.induced_subgraph(&top_set)?;
    Ok(TopSetReport {
        pivots: h.sinks(),
        antennas: h.sources(),
        top_set,
        top_ancestor,
    })
}

/// Checks that every arc `uv` with top-ancestors `u'`, `v'` satisfies either
/// `u' = v'` with `u' != u` and `v' != v`, or `u = u'` and `uv'` is an arc.
/// Returns the first arc that does not.
pub fn check_dichotomy(g: &OrientedGraph, top_ancestor: &BTreeMap<VertexId, VertexId>) -> Option<(VertexId, VertexId)> {
    for (u, v) in g.arc_labels() {
        let (Some(u1), Some(v1)) = (top_ancestor.get(&u), top_ancestor.get(&v)) else {
            return Some((u, v));
        };
        let first = u1 == v1 && *u1 != u && *v1 != v;
        let second = *u1 == u
            && match (g.index_of(u.as_str()), g.index_of(v1.as_str())) {
                (Some(a), Some(b)) => g.has_arc(a, b),
                _ => false,
            };
        if !first && !second {
            return Some((u, v));
        }
    }
    None
}

/// [`check_dichotomy`] on the derived graph and computed top-ancestors.
pub fn check_top_ancestor_dichotomy(d: &Derivation) -> Result<Option<(VertexId, VertexId)>> {
    let report = top_set(d)?;
    let g = derive(d)?;
    Ok(check_dichotomy(&g, &report.top_ancestor))
}
