//! k-sequential decompositions: an in-forest base, a decomposition per base
//! vertex and, for each non-sink base vertex, a stable set linked from it.
//! Conversions to and from Burling trees, an exact search and nobility.

mod convert;
mod search;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{OrientedGraph, OrientedGraphBuilder, VertexId};
use crate::structure::is_in_forest;
use crate::{Error, Result};

pub use convert::{seq_from_tree, tree_from_seq};
pub(crate) use search::optimal_sequential_with_stats;
pub use search::{find_sequential, nobility_oriented, optimal_sequential, SearchStats, DEFAULT_EXACT_BUDGET};

/// A k-sequential decomposition. Empty child decompositions and empty links
/// are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SequentialDecomposition {
    pub base: OrientedGraph,
    pub children: BTreeMap<VertexId, SequentialDecomposition>,
    /// For a non-sink `u` of the base, the linked stable set ordered from
    /// the outermost level inwards.
    pub links: BTreeMap<VertexId, Vec<VertexId>>,
}

fn invalid(msg: String) -> Error {
    Error::InvalidDecomposition(msg)
}

impl SequentialDecomposition {
    /// The empty decomposition (depth 0).
    pub fn empty() -> Self {
        SequentialDecomposition::default()
    }

    pub fn is_empty(&self) -> bool {
        self.base.vertex_count() == 0
    }

    /// A depth-1 decomposition of an in-forest.
    pub fn of_forest(base: OrientedGraph) -> Result<Self> {
        let sd = SequentialDecomposition {
            base,
            ..Default::default()
        };
        sd.validate()?;
        Ok(sd)
    }

    pub fn child(&self, v: &VertexId) -> Option<&SequentialDecomposition> {
        self.children.get(v)
    }

    pub fn link(&self, u: &VertexId) -> &[VertexId] {
        self.links.get(u).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of nested levels.
    pub fn depth(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        1 + self.children.values().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Every vertex at every level, sorted.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.base.vertices().iter().cloned().collect();
        for c in self.children.values() {
            out.extend(c.vertices());
        }
        out
    }

    fn vertex_count(&self) -> usize {
        self.base.vertex_count() + self.children.values().map(|c| c.vertex_count()).sum::<usize>()
    }

    /// The out-neighbor of `u` in the base.
    pub fn base_successor(&self, u: &VertexId) -> Option<&VertexId> {
        let i = self.base.index_of(u.as_str())?;
        self.base.out_neighbors(i).first().map(|&j| self.base.label(j))
    }

    /// Whether `chain` is one of the stable sets this decomposition offers:
    /// empty, or a base vertex followed by a set offered by its child.
    pub fn offers(&self, chain: &[VertexId]) -> bool {
        let Some((w, rest)) = chain.split_first() else {
            return true;
        };
        if self.base.index_of(w.as_str()).is_none() {
            return false;
        }
        match self.children.get(w) {
            Some(c) => c.offers(rest),
            None => rest.is_empty(),
        }
    }

    /// Checks the structural conditions, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        if !is_in_forest(&self.base) {
            return Err(invalid(String::from("base is not an in-forest")));
        }
        if self.vertices().len() != self.vertex_count() {
            return Err(invalid(String::from("vertex sets of the levels overlap")));
        }
        for (v, c) in &self.children {
            if self.base.index_of(v.as_str()).is_none() {
                return Err(invalid(format!("child decomposition of {v}, which is not in the base")));
            }
            if c.is_empty() {
                return Err(invalid(format!("empty child decomposition stored for {v}")));
            }
            c.validate()?;
        }
        for (u, chain) in &self.links {
            let Some(v) = self.base_successor(u) else {
                return Err(invalid(format!("link from {u}, which is not a non-sink base vertex")));
            };
            if chain.is_empty() {
                return Err(invalid(format!("empty link stored for {u}")));
            }
            let ok = self.children.get(v).is_some_and(|c| c.offers(chain));
            if !ok {
                return Err(invalid(format!(
                    "link of {u} is not a stable set offered by the decomposition of {v}"
                )));
            }
        }
        Ok(())
    }

    fn collect_arcs(&self, out: &mut Vec<(VertexId, VertexId)>) {
        for (a, b) in self.base.arc_labels() {
            out.push((a, b));
        }
        for (u, chain) in &self.links {
            for w in chain {
                out.push((u.clone(), w.clone()));
            }
        }
        for c in self.children.values() {
            c.collect_arcs(out);
        }
    }

    /// The graph built from the decomposition.
    pub fn graph(&self) -> Result<OrientedGraph> {
        self.validate()?;
        let mut b = OrientedGraphBuilder::new();
        for v in self.vertices() {
            b.vertex(&v);
        }
        let mut arcs = Vec::new();
        self.collect_arcs(&mut arcs);
        for (a, c) in arcs {
            b.arc(&a, &c)?;
        }
        Ok(b.build())
    }
}

/// Whether `sd` is valid and builds exactly `g`.
pub fn realizes(g: &OrientedGraph, sd: &SequentialDecomposition) -> bool {
    sd.graph().is_ok_and(|h| h == *g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vid;
    use alloc::vec;

    fn arcs(a: &[(&str, &str)]) -> OrientedGraph {
        OrientedGraph::from_arcs(a.iter().copied()).unwrap()
    }

    fn single(v: &str) -> OrientedGraph {
        let mut b = OrientedGraphBuilder::new();
        b.vertex(&vid(v));
        b.build()
    }

    /// Square `u -> x, u -> y, v -> x, v -> y` with base `u -> x <- v` and
    /// `y` below `x`.
    pub(crate) fn square() -> SequentialDecomposition {
        let mut sd = SequentialDecomposition::of_forest(arcs(&[("u", "x"), ("v", "x")])).unwrap();
        sd.children
            .insert(vid("x"), SequentialDecomposition::of_forest(single("y")).unwrap());
        sd.links.insert(vid("u"), vec![vid("y")]);
        sd.links.insert(vid("v"), vec![vid("y")]);
        sd
    }

    #[test]
    fn empty_realizes_empty() {
        assert!(realizes(&OrientedGraph::empty(), &SequentialDecomposition::empty()));
        assert_eq!(SequentialDecomposition::empty().depth(), 0);
    }

    #[test]
    fn square_realizes_c4() {
        let sd = square();
        assert_eq!(sd.depth(), 2);
        let g = arcs(&[("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")]);
        assert!(realizes(&g, &sd));
        assert!(!realizes(&arcs(&[("u", "x"), ("u", "y"), ("v", "x")]), &sd));
    }

    #[test]
    fn link_outside_family_is_rejected() {
        let mut sd = square();
        sd.links.insert(vid("u"), vec![vid("v")]);
        assert!(matches!(sd.validate(), Err(Error::InvalidDecomposition(_))));
        let g = arcs(&[("u", "x"), ("u", "v"), ("v", "x"), ("v", "y")]);
        assert!(!realizes(&g, &sd));

        let mut sd = square();
        sd.links.insert(vid("x"), vec![vid("y")]);
        assert!(sd.validate().is_err());
    }

    #[test]
    fn overlapping_levels_are_rejected() {
        let mut sd = square();
        sd.children
            .insert(vid("u"), SequentialDecomposition::of_forest(single("y")).unwrap());
        assert!(sd.validate().is_err());
    }

    #[test]
    fn non_forest_base_is_rejected() {
        assert!(SequentialDecomposition::of_forest(arcs(&[("a", "b"), ("a", "c")])).is_err());
    }

    #[test]
    fn offers_chains() {
        let sd = square();
        assert!(sd.offers(&[]));
        assert!(sd.offers(&[vid("x"), vid("y")]));
        assert!(sd.offers(&[vid("u")]));
        assert!(!sd.offers(&[vid("y")]));
        assert!(!sd.offers(&[vid("u"), vid("y")]));
    }
}
