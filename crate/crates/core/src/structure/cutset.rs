use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, OrientedGraph, VertexId};

/// A star cutset: the removed set and the components left behind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCutset {
    pub center: VertexId,
    pub removed: Vec<VertexId>,
    pub components: Vec<Vec<VertexId>>,
}

/// Outcome of [`star_cutsets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarCutsetSearch {
    Found(StarCutset),
    NoneFound,
    /// No cutset was found but some center had more than `bound` neighbors.
    BoundExceeded {
        center: VertexId,
        degree: usize,
    },
}

/// Default neighborhood size up to which all star cutsets are tried.
pub const DEFAULT_STAR_BOUND: usize = 12;

/// Components left after deleting `removed` (indices), if at least two.
pub(crate) fn split(
    n: usize,
    removed: &[usize],
    comps: impl Fn(&[bool]) -> Vec<Vec<usize>>,
) -> Option<Vec<Vec<usize>>> {
    let mut alive = vec![true; n];
    for &r in removed {
        alive[r] = false;
    }
    let c = comps(&alive);
    (c.len() >= 2).then_some(c)
}

fn labelled(label: impl Fn(usize) -> VertexId, center: usize, removed: &[usize], comps: Vec<Vec<usize>>) -> StarCutset {
    let sorted = |v: &[usize]| {
        let mut l: Vec<VertexId> = v.iter().map(|&i| label(i)).collect();
        l.sort();
        l
    };
    let mut components: Vec<Vec<VertexId>> = comps.iter().map(|c| sorted(c)).collect();
    components.sort();
    StarCutset {
        center: label(center),
        removed: sorted(removed),
        components,
    }
}

/// `N^-[v]` as indices.
pub(crate) fn closed_in(g: &OrientedGraph, v: usize) -> Vec<usize> {
    let mut s = g.in_neighbors(v).to_vec();
    s.push(v);
    s
}

/// Every vertex whose closed in-neighborhood disconnects `g`, by label.
pub fn full_in_star_cutsets(g: &OrientedGraph) -> Vec<StarCutset> {
    let n = g.vertex_count();
    g.sorted_indices()
        .into_iter()
        .filter_map(|v| {
            let s = closed_in(g, v);
            let c = split(n, &s, |a| g.components_of(a))?;
            Some(labelled(|i| g.label(i).clone(), v, &s, c))
        })
        .collect()
}

/// Every vertex whose closed neighborhood disconnects `g`, by label.
pub fn full_star_cutsets(g: &Graph) -> Vec<StarCutset> {
    let n = g.vertex_count();
    g.sorted_indices()
        .into_iter()
        .filter_map(|v| {
            let mut s = g.neighbors(v).to_vec();
            s.push(v);
            let c = split(n, &s, |a| g.components_of(a))?;
            Some(labelled(|i| g.label(i).clone(), v, &s, c))
        })
        .collect()
}

/// Searches for any star cutset. A center with more than `bound` neighbors
/// is only tried with its full closed neighborhood.
pub fn star_cutsets(g: &Graph, bound: usize) -> StarCutsetSearch {
    let n = g.vertex_count();
    let mut exceeded = None;
    for v in g.sorted_indices() {
        let nb = g.neighbors(v);
        let mut full = nb.to_vec();
        full.push(v);
        if let Some(c) = split(n, &full, |a| g.components_of(a)) {
            return StarCutsetSearch::Found(labelled(|i| g.label(i).clone(), v, &full, c));
        }
        if nb.len() > bound {
            exceeded.get_or_insert((g.label(v).clone(), nb.len()));
            continue;
        }
        for mask in 0u64..(1u64 << nb.len()) {
            let mut s: Vec<usize> = (0..nb.len()).filter(|&k| mask >> k & 1 == 1).map(|k| nb[k]).collect();
            s.push(v);
            if let Some(c) = split(n, &s, |a| g.components_of(a)) {
                return StarCutsetSearch::Found(labelled(|i| g.label(i).clone(), v, &s, c));
            }
        }
    }
    match exceeded {
        Some((center, degree)) => StarCutsetSearch::BoundExceeded { center, degree },
        None => StarCutsetSearch::NoneFound,
    }
}
