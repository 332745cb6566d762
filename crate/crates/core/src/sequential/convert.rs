use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::SequentialDecomposition;
use crate::graph::{OrientedGraph, VertexId};
use crate::tree::{derive, ensure_valid_derivation, BurlingTree, Derivation, FreshLabels};
use crate::Result;

/// The decomposition read off a derivation: the base is the top-set and
/// each top vertex gets the decomposition of its subtree.
pub fn seq_from_tree(d: &Derivation) -> Result<SequentialDecomposition> {
    ensure_valid_derivation(d)?;
    let g = derive(d)?;
    Ok(level(d, &g, d.kept.clone()))
}

fn level(d: &Derivation, g: &OrientedGraph, scope: BTreeSet<VertexId>) -> SequentialDecomposition {
    if scope.is_empty() {
        return SequentialDecomposition::empty();
    }
    let t = &d.tree;
    let top: BTreeSet<VertexId> = scope
        .iter()
        .filter(|v| {
            let branch = t.branch_to(v);
            branch[..branch.len() - 1].iter().all(|a| !scope.contains(a))
        })
        .cloned()
        .collect();
    let base = g.induced_subgraph(&top).expect("top-set vertices are in the graph");
    let mut sd = SequentialDecomposition {
        base,
        ..Default::default()
    };
    for v in &top {
        let below: BTreeSet<VertexId> = scope
            .iter()
            .filter(|w| *w != v && t.is_ancestor(v, w))
            .cloned()
            .collect();
        if !below.is_empty() {
            sd.children.insert(v.clone(), level(d, g, below));
        }
    }
    for u in &top {
        let Some(succ) = sd.base_successor(u).cloned() else {
            continue;
        };
        let chain: Vec<VertexId> = t
            .choose(u)
            .iter()
            .filter(|w| **w != succ && scope.contains(*w))
            .cloned()
            .collect();
        if !chain.is_empty() {
            sd.links.insert(u.clone(), chain);
        }
    }
    sd
}

#[derive(Default)]
struct Parts {
    parent: BTreeMap<VertexId, VertexId>,
    last_born: BTreeMap<VertexId, VertexId>,
    choose: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Parts {
    fn attach(&mut self, parent: &VertexId, child: &VertexId) {
        self.parent.insert(child.clone(), parent.clone());
    }

    /// Tree path from `top` down to `bottom`.
    fn path(&self, top: &VertexId, bottom: &VertexId) -> Vec<VertexId> {
        let mut out = alloc::vec![bottom.clone()];
        let mut x = bottom;
        while x != top {
            x = &self.parent[x];
            out.push(x.clone());
        }
        out.reverse();
        out
    }
}

/// A derivation of the graph built by `sd`: the base in-forest is grown one
/// vertex at a time under fresh roots, and every base vertex gets the tree
/// of its child decomposition as last-born subtree.
pub fn tree_from_seq(sd: &SequentialDecomposition) -> Result<Derivation> {
    sd.validate()?;
    let kept = sd.vertices();
    let mut fresh = FreshLabels::new(kept.iter().cloned());
    let mut parts = Parts::default();
    let root = grow(sd, &mut fresh, &mut parts);
    let tree = BurlingTree::from_parts(
        root,
        parts.parent.into_iter().map(|(c, p)| (p, c)),
        parts.last_born,
        parts.choose,
    )?;
    let d = Derivation::new(tree, kept);
    ensure_valid_derivation(&d)?;
    Ok(d)
}

fn grow(sd: &SequentialDecomposition, fresh: &mut FreshLabels, parts: &mut Parts) -> VertexId {
    let mut root = fresh.next();
    let h = &sd.base;
    // sinks first, then vertices whose successor is already placed
    let mut order: Vec<usize> = Vec::new();
    let mut placed = alloc::vec![false; h.vertex_count()];
    while order.len() < h.vertex_count() {
        for i in h.sorted_indices() {
            let ready = !placed[i] && h.out_neighbors(i).iter().all(|&j| placed[j]);
            if ready {
                placed[i] = true;
                order.push(i);
            }
        }
    }
    for i in order {
        let x = h.label(i).clone();
        let new_root = fresh.next();
        parts.attach(&new_root, &root);
        parts.attach(&new_root, &x);
        parts.last_born.insert(new_root.clone(), root.clone());
        if let Some(child) = sd.children.get(&x) {
            let r = grow(child, fresh, parts);
            parts.attach(&x, &r);
            parts.last_born.insert(x.clone(), r);
        }
        if let Some(&j) = h.out_neighbors(i).first() {
            let succ = h.label(j).clone();
            let end = sd.link(&x).last().cloned().unwrap_or(succ);
            let branch = parts.path(&root, &end);
            parts.choose.insert(x, branch);
        }
        root = new_root;
    }
    root
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{figure_square_c4, figure_square_k33, random_derivation};
    use crate::graph::vid;
    use crate::sequential::realizes;
    use crate::tree::check_derivation;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_round_trip() {
        let d = figure_square_c4();
        let sd = seq_from_tree(&d).unwrap();
        assert_eq!(sd.depth(), 2);
        let base: Vec<&str> = sd.base.vertices().iter().map(|v| v.as_str()).collect();
        assert_eq!(base, ["u", "v", "x"]);
        let g = derive(&d).unwrap();
        assert!(realizes(&g, &sd));
        let back = tree_from_seq(&sd).unwrap();
        assert!(check_derivation(&g, &back));
        assert!(back.max_branch_kept() <= 2);
    }

    #[test]
    fn empty_decomposition() {
        let d = tree_from_seq(&SequentialDecomposition::empty()).unwrap();
        assert!(d.kept.is_empty());
        assert_eq!(derive(&d).unwrap().vertex_count(), 0);
    }

    #[test]
    fn directed_path_builds_in_tree_derivation() {
        let g = OrientedGraph::from_arcs([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let sd = SequentialDecomposition::of_forest(g.clone()).unwrap();
        let d = tree_from_seq(&sd).unwrap();
        assert!(check_derivation(&g, &d));
        assert_eq!(d.max_branch_kept(), 1);
        assert!(!d.tree.choose(&vid("a")).is_empty());
        assert_eq!(seq_from_tree(&d).unwrap(), sd);
    }

    #[test]
    fn k33_round_trip() {
        let d = figure_square_k33();
        let g = derive(&d).unwrap();
        let sd = seq_from_tree(&d).unwrap();
        assert!(realizes(&g, &sd));
        assert!(sd.depth() <= d.max_branch_kept());
        assert!(check_derivation(&g, &tree_from_seq(&sd).unwrap()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn random_round_trips(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_derivation(&mut rng, 14);
            let g = derive(&d).unwrap();
            let sd = seq_from_tree(&d).unwrap();
            prop_assert!(realizes(&g, &sd));
            prop_assert!(sd.depth() <= d.max_branch_kept());
            let back = tree_from_seq(&sd).unwrap();
            prop_assert!(check_derivation(&g, &back));
            prop_assert!(back.max_branch_kept() <= sd.depth());
            let s = crate::structure::top_set(&d).unwrap().top_set;
            let base: BTreeSet<VertexId> = sd.base.vertices().iter().cloned().collect();
            prop_assert_eq!(base, s);
            // removing the top-set lowers the depth by one
            if !sd.is_empty() {
                let rest = sd.children.values().map(|c| c.depth()).max().unwrap_or(0);
                prop_assert_eq!(rest + 1, sd.depth());
            }
        }
    }
}
