//! Holes (chordless cycles of length at least four).

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Default bound on the number of vertices for hole enumeration.
pub const DEFAULT_HOLE_BUDGET: usize = 16;

/// A hole, stored in canonical rotation: it starts at its smallest label and
/// the second vertex is smaller than the last one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hole {
    cycle: Vec<VertexId>,
}

impl Hole {
    /// Validates `cycle` as a hole of `g` and canonicalizes it.
    pub fn new(g: &Graph, cycle: &[VertexId]) -> Result<Hole> {
        let idx = cycle.iter().map(|v| g.require(v)).collect::<Result<Vec<usize>>>()?;
        if !is_hole(g, &idx) {
            return Err(Error::NotAHole(crate::graph::join_labels(cycle)));
        }
        Ok(Hole::from_indices(g, &idx))
    }

    pub(crate) fn from_indices(g: &Graph, idx: &[usize]) -> Hole {
        let labels: Vec<VertexId> = idx.iter().map(|&i| g.label(i).clone()).collect();
        Hole {
            cycle: canonical_rotation(&labels),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.cycle.contains(v)
    }

    /// Indices of the hole's vertices in `g`, in cycle order.
    pub fn indices(&self, g: &Graph) -> Result<Vec<usize>> {
        self.cycle.iter().map(|v| g.require(v)).collect()
    }
}

impl core::fmt::Display for Hole {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&crate::graph::join_labels(&self.cycle))
    }
}

fn canonical_rotation<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| &cycle[i]).unwrap_or(0);
    let fwd: Vec<T> = (0..n).map(|k| cycle[(start + k) % n].clone()).collect();
    let bwd: Vec<T> = (0..n).map(|k| cycle[(start + n - k) % n].clone()).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

/// Whether the index sequence is a chordless cycle of length at least four.
pub fn is_hole(g: &Graph, idx: &[usize]) -> bool {
    let n = idx.len();
    if n < 4 {
        return false;
    }
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            let consecutive = b == a + 1 || (a == 0 && b == n - 1);
            if g.has_edge(idx[a], idx[b]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// All holes of `g` as index cycles, in canonical rotation (by label) and
/// sorted by label sequence.
pub fn hole_indices(g: &Graph, budget: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n > budget {
        return Err(Error::BudgetExceeded {
            what: "hole enumeration",
            limit: budget,
            actual: n,
        });
    }
    let order = g.sorted_indices();
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for &s in &order {
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(g, &rank, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.iter().map(|&i| g.label(i)).cmp(b.iter().map(|&i| g.label(i))));
    Ok(out)
}

fn extend(g: &Graph, rank: &[usize], path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap_or(&s);
    for &v in g.neighbors(last) {
        if on_path[v] || rank[v] <= rank[s] {
            continue;
        }
        let inner = if path.len() > 2 {
            &path[1..path.len() - 1]
        } else {
            &[][..]
        };
        if inner.iter().any(|&p| g.has_edge(p, v)) {
            continue;
        }
        if path.len() >= 2 && g.has_edge(s, v) {
            if path.len() >= 3 && rank[path[1]] < rank[v] {
                let mut cyc = path.clone();
                cyc.push(v);
                out.push(cyc);
            }
            continue;
        }
        path.push(v);
        on_path[v] = true;
        extend(g, rank, path, on_path, out);
        on_path[v] = false;
        path.pop();
    }
}

/// All holes of `g`, in canonical order.
pub fn enumerate_holes(g: &Graph, budget: usize) -> Result<Vec<Hole>> {
    Ok(hole_indices(g, budget)?
        .into_iter()
        .map(|c| Hole {
            cycle: c.iter().map(|&i| g.label(i).clone()).collect(),
        })
        .collect())
}
