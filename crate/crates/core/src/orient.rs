//! Orientations of undirected graphs that can possibly be derived: acyclic,
//! with every hole oriented as a chandelier. Nobility of undirected graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::graph::{Graph, OrientedGraph};
use crate::holes::{hole_indices, DEFAULT_HOLE_BUDGET};
use crate::sequential::{optimal_sequential_with_stats, SearchStats, SequentialDecomposition};
use crate::structure::hole_orientation_idx;
use crate::{Error, Result};

/// Default bound on the number of holes used for pruning.
pub const DEFAULT_HOLE_CAP: usize = 5000;

/// Default bound on the number of candidate orientations collected.
pub const DEFAULT_ORIENTATION_CAP: usize = 1 << 20;

/// Edges in an order that closes holes early, with per-edge lists of holes
/// completed by that edge.
struct Plan {
    edges: Vec<(usize, usize)>,
    closes: Vec<Vec<Vec<usize>>>,
}

fn plan(g: &Graph, hole_budget: usize, hole_cap: usize) -> Result<Plan> {
    let n = g.vertex_count();
    // breadth-first vertex order from the smallest label of each component
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in g.sorted_indices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = alloc::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            let mut nb: Vec<usize> = g.neighbors(v).to_vec();
            nb.sort_by(|a, b| g.label(*a).cmp(g.label(*b)));
            for w in nb {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut edges = g.edges();
    edges.sort_by_key(|&(a, b)| (pos[a].max(pos[b]), pos[a].min(pos[b])));
    let mut closes = vec![Vec::new(); edges.len()];
    let holes = hole_indices(g, hole_budget)?;
    for h in holes.into_iter().take(hole_cap) {
        let last = (0..h.len())
            .map(|k| {
                let (a, b) = (h[k], h[(k + 1) % h.len()]);
                edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap_or(0)
            })
            .max()
            .unwrap_or(0);
        closes[last].push(h);
    }
    Ok(Plan { edges, closes })
}

fn reaches(out: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; out.len()];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if !seen[v] {
            seen[v] = true;
            stack.extend(out[v].iter().copied());
        }
    }
    false
}

struct Walker<'a, F> {
    g: &'a Graph,
    plan: Plan,
    out: Vec<Vec<usize>>,
    forward: Vec<bool>,
    visited: usize,
    f: F,
}

impl<F: FnMut(OrientedGraph) -> ControlFlow<()>> Walker<'_, F> {
    /// The assigned arcs, with unassigned edges oriented from the smaller
    /// index.
    fn current(&self) -> OrientedGraph {
        let mut dir = alloc::collections::BTreeSet::new();
        for (k, &(a, b)) in self.plan.edges.iter().enumerate() {
            let fwd = self.forward.get(k).copied().unwrap_or(true);
            dir.insert(if fwd { (a, b) } else { (b, a) });
        }
        OrientedGraph::orient(self.g, |i, j| dir.contains(&(i, j)))
    }

    fn holes_ok(&self, k: usize) -> bool {
        if self.plan.closes[k].is_empty() {
            return true;
        }
        let partial = self.current();
        self.plan.closes[k]
            .iter()
            .all(|h| !hole_orientation_idx(&partial, h).is_empty())
    }

    fn walk(&mut self, k: usize) -> ControlFlow<()> {
        if k == self.plan.edges.len() {
            self.visited += 1;
            let o = self.current();
            return (self.f)(o);
        }
        let (a, b) = self.plan.edges[k];
        for fwd in [true, false] {
            let (s, t) = if fwd { (a, b) } else { (b, a) };
            if reaches(&self.out, t, s) {
                continue;
            }
            self.forward.push(fwd);
            self.out[s].push(t);
            let r = if self.holes_ok(k) {
                self.walk(k + 1)
            } else {
                ControlFlow::Continue(())
            };
            self.out[s].pop();
            self.forward.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` on every acyclic orientation of `g` in which each of the first
/// `hole_cap` holes is oriented as a chandelier, in a fixed order, until `f`
/// breaks. Returns the number of orientations visited.
pub fn for_each_candidate(
    g: &Graph,
    hole_budget: usize,
    hole_cap: usize,
    f: impl FnMut(OrientedGraph) -> ControlFlow<()>,
) -> Result<usize> {
    let plan = plan(g, hole_budget, hole_cap)?;
    let mut w = Walker {
        g,
        plan,
        out: vec![Vec::new(); g.vertex_count()],
        forward: Vec::new(),
        visited: 0,
        f,
    };
    let _ = w.walk(0);
    Ok(w.visited)
}

/// All candidate orientations, in the order of [`for_each_candidate`].
pub fn orientation_candidates(
    g: &Graph,
    hole_budget: usize,
    hole_cap: usize,
    cap: usize,
) -> Result<Vec<OrientedGraph>> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_candidate(g, hole_budget, hole_cap, |o| {
        if out.len() == cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(o);
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::BudgetExceeded {
            what: "orientation",
            limit: cap,
            actual: cap + 1,
        });
    }
    Ok(out)
}

/// Whether the graph has no cycle.
pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.components().len() == g.vertex_count()
}

/// Every edge oriented towards the smallest label of its component.
pub fn forest_orientation(g: &Graph) -> Option<OrientedGraph> {
    if !is_forest(g) {
        return None;
    }
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    for comp in g.components() {
        let root = *comp.iter().min_by(|a, b| g.label(**a).cmp(g.label(**b)))?;
        dist[root] = 0;
        let mut q = alloc::collections::VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    Some(OrientedGraph::orient(g, |i, j| dist[i] > dist[j]))
}

/// A smallest nobility over the orientations of `g`: 0 for the empty graph,
/// 1 for forests and 2 otherwise.
pub fn nobility_lower_bound(g: &Graph) -> usize {
    if g.vertex_count() == 0 {
        0
    } else if is_forest(g) {
        1
    } else {
        2
    }
}

/// An orientation of minimum nobility with a matching decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestOrientation {
    pub orientation: OrientedGraph,
    pub decomposition: SequentialDecomposition,
}

impl BestOrientation {
    pub fn nobility(&self) -> usize {
        self.decomposition.depth()
    }
}

/// Options shared by searches over orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationLimits {
    pub exact_budget: usize,
    pub hole_budget: usize,
    pub hole_cap: usize,
}

impl Default for OrientationLimits {
    fn default() -> Self {
        OrientationLimits {
            exact_budget: crate::sequential::DEFAULT_EXACT_BUDGET,
            hole_budget: DEFAULT_HOLE_BUDGET,
            hole_cap: DEFAULT_HOLE_CAP,
        }
    }
}

/// Minimum depth over the decompositions of one orientation.
pub fn orientation_depth(o: &OrientedGraph, stats: &mut SearchStats) -> Result<Option<SequentialDecomposition>> {
    let (sd, s) = optimal_sequential_with_stats(o)?;
    stats.states += s.states;
    stats.base_choices += s.base_choices;
    stats.orientations += 1;
    Ok(sd)
}

/// The first orientation (in candidate order) reaching the minimum
/// nobility, or `None` when `g` is not Burling.
pub fn best_orientation(g: &Graph, limits: OrientationLimits) -> Result<(Option<BestOrientation>, SearchStats)> {
    if g.vertex_count() > limits.exact_budget {
        return Err(Error::BudgetExceeded {
            what: "exact search",
            limit: limits.exact_budget,
            actual: g.vertex_count(),
        });
    }
    let mut stats = SearchStats::default();
    if !g.is_triangle_free() {
        return Ok((None, stats));
    }
    if let Some(o) = forest_orientation(g) {
        let decomposition = SequentialDecomposition::of_forest(o.clone())?;
        stats.orientations = 1;
        return Ok((
            Some(BestOrientation {
                orientation: o,
                decomposition,
            }),
            stats,
        ));
    }
    let lower = nobility_lower_bound(g);
    let mut best: Option<BestOrientation> = None;
    let mut failure = None;
    for_each_candidate(g, limits.hole_budget, limits.hole_cap, |o| {
        match orientation_depth(&o, &mut stats) {
            Ok(Some(sd)) => {
                if best.as_ref().is_none_or(|b| sd.depth() < b.nobility()) {
                    best = Some(BestOrientation {
                        orientation: o,
                        decomposition: sd,
                    });
                }
            }
            Ok(None) => {}
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        match &best {
            Some(b) if b.nobility() <= lower => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((best, stats))
}

/// The smallest nobility of an orientation of `g`, or `None` if no
/// orientation is Burling.
pub fn nobility(g: &Graph, exact_budget: usize) -> Result<Option<usize>> {
    let limits = OrientationLimits {
        exact_budget,
        ..Default::default()
    };
    Ok(best_orientation(g, limits)?.0.map(|b| b.nobility()))
}
