use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::holes::{hole_indices, Hole};
use crate::Result;

/// A hole and a vertex outside it with at least three neighbors on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelWitness {
    pub rim: Hole,
    pub center: VertexId,
}

/// A core hole and, for each of its edges `h_i h_{i+1}` (indices taken
/// along `core.vertices()`), a petal hole through that edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerWitness {
    pub core: Hole,
    pub petals: Vec<Hole>,
}

pub(crate) fn mask(h: &[usize]) -> u64 {
    h.iter().fold(0, |m, &i| m | 1 << i)
}

pub(crate) fn induced_edge_count(g: &Graph, m: u64) -> usize {
    g.edges()
        .into_iter()
        .filter(|&(a, b)| m >> a & 1 == 1 && m >> b & 1 == 1)
        .count()
}

pub(crate) fn wheel_in(g: &Graph, holes: &[Vec<usize>]) -> Option<WheelWitness> {
    for h in holes {
        let m = mask(h);
        for c in g.sorted_indices() {
            if m >> c & 1 == 1 {
                continue;
            }
            let on = g.neighbors(c).iter().filter(|&&w| m >> w & 1 == 1).count();
            if on >= 3 {
                return Some(WheelWitness {
                    rim: Hole::from_indices(g, h),
                    center: g.label(c).clone(),
                });
            }
        }
    }
    None
}

pub(crate) fn flower_in(g: &Graph, holes: &[Vec<usize>]) -> Option<FlowerWitness> {
    let masks: Vec<u64> = holes.iter().map(|h| mask(h)).collect();
    for (ci, core) in holes.iter().enumerate() {
        let cm = masks[ci];
        let len = core.len();
        let edges: Vec<u64> = (0..len).map(|k| 1 << core[k] | 1 << core[(k + 1) % len]).collect();
        let cands: Vec<Vec<usize>> = edges
            .iter()
            .map(|&e| (0..holes.len()).filter(|&j| masks[j] & cm == e).collect())
            .collect();
        if cands.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = Vec::with_capacity(len);
        if choose_petals(g, holes, &masks, &edges, &cands, &mut pick) {
            return Some(FlowerWitness {
                core: Hole::from_indices(g, core),
                petals: pick.iter().map(|&j| Hole::from_indices(g, &holes[j])).collect(),
            });
        }
    }
    None
}

fn choose_petals(
    g: &Graph,
    holes: &[Vec<usize>],
    masks: &[u64],
    edges: &[u64],
    cands: &[Vec<usize>],
    pick: &mut Vec<usize>,
) -> bool {
    let k = pick.len();
    if k == edges.len() {
        let union = pick.iter().fold(0, |m, &j| m | masks[j]);
        let want: usize = pick.iter().map(|&j| holes[j].len()).sum();
        return induced_edge_count(g, union) == want;
    }
    for &j in &cands[k] {
        let ok = pick
            .iter()
            .enumerate()
            .all(|(i, &p)| masks[p] & masks[j] == edges[i] & edges[k]);
        if ok {
            pick.push(j);
            if choose_petals(g, holes, masks, edges, cands, pick) {
                return true;
            }
            pick.pop();
        }
    }
    false
}

/// Some hole together with a vertex having at least three neighbors on it.
pub fn find_wheel(g: &Graph, hole_budget: usize) -> Result<Option<WheelWitness>> {
    Ok(wheel_in(g, &hole_indices(g, hole_budget)?))
}

/// Some flower contained in `g` as an induced subgraph.
pub fn find_flower(g: &Graph, hole_budget: usize) -> Result<Option<FlowerWitness>> {
    Ok(flower_in(g, &hole_indices(g, hole_budget)?))
}
