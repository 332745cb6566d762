use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::cutset::split;
use crate::graph::Graph;

/// Result of [`chalopin_filter`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterOutcome {
    Passes,
    /// A connected induced subgraph with no full star cutset that is neither
    /// a luxury chandelier nor an induced subgraph of `P4`.
    NotBurling(Graph),
}

/// Whether `g` is a tree plus a vertex adjacent exactly to its leaves, where
/// each leaf's neighbor in the tree has degree two.
pub fn is_luxury_chandelier(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 4 || g.edge_count() < n || !g.is_connected() {
        return false;
    }
    'pivot: for p in 0..n {
        // removing p leaves a tree on n - 1 vertices
        if g.edge_count() - g.degree(p) != n - 2 {
            continue;
        }
        let mut alive = vec![true; n];
        alive[p] = false;
        if g.components_of(&alive).len() != 1 {
            continue;
        }
        let tdeg = |v: usize| g.degree(v) - usize::from(g.has_edge(v, p));
        let mut leaves = 0;
        for v in (0..n).filter(|&v| v != p) {
            let is_leaf = tdeg(v) == 1;
            if is_leaf != g.has_edge(v, p) {
                continue 'pivot;
            }
            if is_leaf {
                leaves += 1;
                let Some(&w) = g.neighbors(v).iter().find(|&&w| w != p) else {
                    continue 'pivot;
                };
                if tdeg(w) != 2 {
                    continue 'pivot;
                }
            }
        }
        if leaves >= 2 {
            return true;
        }
    }
    false
}

fn is_small_path(g: &Graph) -> bool {
    let n = g.vertex_count();
    n <= 4 && g.is_connected() && g.edge_count() + 1 == n && (0..n).all(|v| g.degree(v) <= 2)
}

/// Recursively splits `g` into connected pieces along full star cutsets
/// (each piece keeps the cutset) and reports the first piece that has no
/// full star cutset and is neither a luxury chandelier nor a path on at most
/// four vertices. Passing is necessary for being Burling, not sufficient.
pub fn chalopin_filter(g: &Graph) -> FilterOutcome {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = g.components();
    stack.reverse();
    while let Some(piece) = stack.pop() {
        if !seen.insert(piece.clone()) {
            continue;
        }
        let h = g.induced(&piece);
        let m = h.vertex_count();
        if m <= 1 || is_small_path(&h) || is_luxury_chandelier(&h) {
            continue;
        }
        let cut = h.sorted_indices().into_iter().find_map(|v| {
            let mut s = h.neighbors(v).to_vec();
            s.push(v);
            split(m, &s, |a| h.components_of(a)).map(|c| (s, c))
        });
        let Some((s, comps)) = cut else {
            return FilterOutcome::NotBurling(h);
        };
        for c in comps.into_iter().rev() {
            let mut sub: Vec<usize> = c.into_iter().chain(s.iter().copied()).map(|i| piece[i]).collect();
            sub.sort_unstable();
            stack.push(sub);
        }
    }
    FilterOutcome::Passes
}
