use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::SequentialDecomposition;
use crate::graph::{OrientedGraph, VertexId};
use crate::{Error, Result};

/// Default vertex budget for exact searches.
pub const DEFAULT_EXACT_BUDGET: usize = 12;

/// Counters reported by exhaustive searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Distinct (vertex set, requirement) states solved.
    pub states: usize,
    /// Base choices evaluated.
    pub base_choices: usize,
    /// Orientations examined, for searches over orientations.
    pub orientations: usize,
}

#[derive(Clone, Debug)]
struct Choice {
    depth: u32,
    base: u64,
    blocks: Vec<(usize, u64, Vec<u64>)>,
}

type Key = (u64, Vec<u64>);

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Memoized minimum-depth search for sequential decompositions of induced
/// subgraphs subject to stable sets that must be offered.
pub(crate) struct Searcher<'a> {
    g: &'a OrientedGraph,
    out: Vec<u64>,
    inn: Vec<u64>,
    rank: Vec<usize>,
    memo: BTreeMap<Key, Option<Choice>>,
    pub(crate) stats: SearchStats,
}

impl<'a> Searcher<'a> {
    pub(crate) fn new(g: &'a OrientedGraph) -> Result<Self> {
        let (out, inn) = g.masks()?;
        let mut rank = vec![0; g.vertex_count()];
        for (r, i) in g.sorted_indices().into_iter().enumerate() {
            rank[i] = r;
        }
        Ok(Searcher {
            g,
            out,
            inn,
            rank,
            memo: BTreeMap::new(),
            stats: SearchStats::default(),
        })
    }

    fn full(&self) -> u64 {
        let n = self.g.vertex_count();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Components of `G[y]`, each as a mask, ordered by smallest label.
    fn components(&self, y: u64) -> Vec<u64> {
        let mut left = y;
        let mut out = Vec::new();
        while left != 0 {
            let start = bits(left).min_by_key(|&i| self.rank[i]).unwrap_or(0);
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for i in bits(frontier) {
                    next |= (self.out[i] | self.inn[i]) & y;
                }
                frontier = next & !comp;
                comp |= next;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    /// Vertices of `y` with a directed path to `p`, if they induce an in-tree
    /// with sink `p` and `p` is a sink of `G[y]`.
    fn in_tree_above(&self, y: u64, p: usize) -> Option<u64> {
        if self.out[p] & y != 0 {
            return None;
        }
        let mut a = bit(p);
        let mut frontier = a;
        while frontier != 0 {
            let mut next = 0;
            for i in bits(frontier) {
                next |= self.inn[i] & y;
            }
            frontier = next & !a;
            a |= next;
        }
        for u in bits(a & !bit(p)) {
            if (self.out[u] & a).count_ones() != 1 {
                return None;
            }
        }
        Some(a)
    }

    fn base_options(&self, comp: u64) -> Vec<u64> {
        let mut sinks: Vec<usize> = bits(comp).filter(|&p| self.out[p] & comp == 0).collect();
        sinks.sort_by_key(|&p| self.rank[p]);
        let mut opts: Vec<u64> = sinks.into_iter().filter_map(|p| self.in_tree_above(comp, p)).collect();
        opts.push(0);
        opts
    }

    /// Splits `y \ s` into blocks under the vertices of `s`, or `None` when
    /// the arcs and requirements cannot be honored.
    fn blocks(&self, y: u64, reqs: &[u64], s: u64) -> Option<Vec<(usize, u64, Vec<u64>)>> {
        let z = y & !s;
        for &r in reqs {
            if (r & s).count_ones() != 1 {
                return None;
            }
        }
        let comps = self.components(z);
        let comp_of = |x: usize| comps.iter().position(|&c| c & bit(x) != 0);
        let mut pin: Vec<Option<usize>> = vec![None; comps.len()];
        let mut wanted: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        let mut demand = |v: usize, rest: u64, pin: &mut Vec<Option<usize>>| -> bool {
            for x in bits(rest) {
                let Some(c) = comp_of(x) else { return false };
                match pin[c] {
                    Some(w) if w != v => return false,
                    _ => pin[c] = Some(v),
                }
            }
            wanted.entry(v).or_default().push(rest);
            true
        };
        for u in bits(s) {
            let rest = self.out[u] & z;
            if rest == 0 {
                continue;
            }
            let succ = self.out[u] & s;
            if succ.count_ones() != 1 {
                return None;
            }
            if !demand(succ.trailing_zeros() as usize, rest, &mut pin) {
                return None;
            }
        }
        for &r in reqs {
            let w = (r & s).trailing_zeros() as usize;
            let rest = r & !s;
            if rest != 0 && !demand(w, rest, &mut pin) {
                return None;
            }
        }
        let mut block = BTreeMap::new();
        for (c, p) in comps.iter().zip(&pin) {
            let v = (*p)?;
            *block.entry(v).or_insert(0u64) |= *c;
        }
        let mut out: Vec<(usize, u64, Vec<u64>)> = block
            .into_iter()
            .map(|(v, b)| {
                let mut r = wanted.remove(&v).unwrap_or_default();
                r.sort_unstable();
                r.dedup();
                (v, b, r)
            })
            .collect();
        out.sort_by_key(|t| self.rank[t.0]);
        Some(out)
    }

    /// Minimum depth of a decomposition of `G[y]` offering every set in
    /// `reqs` (sorted, nonempty, distinct).
    pub(crate) fn best(&mut self, y: u64, reqs: Vec<u64>) -> Option<u32> {
        if y == 0 {
            return reqs.is_empty().then_some(0);
        }
        let key = (y, reqs);
        if let Some(c) = self.memo.get(&key) {
            return c.as_ref().map(|c| c.depth);
        }
        self.stats.states += 1;
        let reqs = &key.1;
        let lower = reqs.iter().map(|r| r.count_ones()).max().unwrap_or(0).max(1);
        let options: Vec<Vec<u64>> = self.components(y).into_iter().map(|c| self.base_options(c)).collect();
        let mut pick = vec![0usize; options.len()];
        let mut found: Option<Choice> = None;
        'enumerate: loop {
            let s = pick.iter().zip(&options).fold(0u64, |m, (&k, o)| m | o[k]);
            if s != 0 {
                self.stats.base_choices += 1;
                if let Some(blocks) = self.blocks(y, reqs, s) {
                    let bound = found.as_ref().map(|f| f.depth);
                    let mut depth = 1;
                    let mut ok = true;
                    for (_, b, r) in &blocks {
                        match self.best(*b, r.clone()) {
                            Some(d) if bound.is_none_or(|bd| d + 1 < bd) => depth = depth.max(d + 1),
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        found = Some(Choice { depth, base: s, blocks });
                        if depth <= lower {
                            break 'enumerate;
                        }
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'enumerate;
                }
                pick[k] += 1;
                if pick[k] < options[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
        let depth = found.as_ref().map(|c| c.depth);
        self.memo.insert(key, found);
        depth
    }

    fn labels(&self, m: u64) -> Vec<usize> {
        let mut v: Vec<usize> = bits(m).collect();
        v.sort_by_key(|&i| self.rank[i]);
        v
    }

    /// Rebuilds the decomposition chosen by [`Searcher::best`].
    fn build(&mut self, y: u64, reqs: Vec<u64>) -> SequentialDecomposition {
        if y == 0 {
            return SequentialDecomposition::empty();
        }
        self.best(y, reqs.clone());
        let Some(Some(choice)) = self.memo.get(&(y, reqs)).cloned() else {
            return SequentialDecomposition::empty();
        };
        let g = self.g;
        let base = g.induced(&self.labels(choice.base));
        let mut sd = SequentialDecomposition {
            base,
            ..Default::default()
        };
        for (v, b, r) in choice.blocks {
            let child = self.build(b, r);
            sd.children.insert(g.label(v).clone(), child);
        }
        let z = y & !choice.base;
        for u in bits(choice.base) {
            let rest = self.out[u] & z;
            if rest == 0 {
                continue;
            }
            let succ = (self.out[u] & choice.base).trailing_zeros() as usize;
            let set: BTreeSet<VertexId> = bits(rest).map(|i| g.label(i).clone()).collect();
            let chain = chain_order(&sd.children[g.label(succ)], set);
            sd.links.insert(g.label(u).clone(), chain);
        }
        sd
    }

    pub(crate) fn optimum(&mut self) -> Option<SequentialDecomposition> {
        let full = self.full();
        self.best(full, Vec::new())?;
        Some(self.build(full, Vec::new()))
    }
}

/// Orders `set` as the chain offered by `sd`.
fn chain_order(sd: &SequentialDecomposition, mut set: BTreeSet<VertexId>) -> Vec<VertexId> {
    let mut out = Vec::new();
    let mut cur = sd;
    while !set.is_empty() {
        let Some(w) = cur.base.vertices().iter().find(|v| set.contains(*v)).cloned() else {
            break;
        };
        set.remove(&w);
        out.push(w.clone());
        match cur.children.get(&w) {
            Some(c) => cur = c,
            None => break,
        }
    }
    out
}

fn check_budget(g: &OrientedGraph, budget: usize) -> Result<()> {
    if g.vertex_count() > budget {
        return Err(Error::BudgetExceeded {
            what: "exact search",
            limit: budget,
            actual: g.vertex_count(),
        });
    }
    Ok(())
}

/// A decomposition of minimum depth, or `None` when `g` has none.
pub fn optimal_sequential(g: &OrientedGraph) -> Result<Option<SequentialDecomposition>> {
    optimal_sequential_with_stats(g).map(|(sd, _)| sd)
}

pub(crate) fn optimal_sequential_with_stats(
    g: &OrientedGraph,
) -> Result<(Option<SequentialDecomposition>, SearchStats)> {
    if g.vertex_count() > 64 {
        check_budget(g, 64)?;
    }
    if !g.underlying().is_triangle_free() || !g.is_acyclic() {
        return Ok((None, SearchStats::default()));
    }
    let mut s = Searcher::new(g)?;
    let sd = s.optimum();
    Ok((sd, s.stats))
}

/// A decomposition of depth at most `k` realizing `g`, if one exists.
pub fn find_sequential(g: &OrientedGraph, k: usize) -> Result<Option<SequentialDecomposition>> {
    Ok(optimal_sequential(g)?.filter(|sd| sd.depth() <= k))
}

/// The smallest `k` such that `g` is k-Burling, or `None` if `g` is not
/// Burling. Fails when `g` has more than `budget` vertices.
pub fn nobility_oriented(g: &OrientedGraph, budget: usize) -> Result<Option<usize>> {
    check_budget(g, budget)?;
    Ok(optimal_sequential(g)?.map(|sd| sd.depth()))
}
