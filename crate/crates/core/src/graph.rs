//! Graph and oriented-graph values.
//!
//! Vertices are identified by string labels; internally every graph keeps its
//! vertices in insertion order and works with dense indices. Equality between
//! graphs is label based: two graphs are equal when they have the same vertex
//! labels and the same edges (resp. arcs), regardless of insertion order.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A vertex label: a non-empty token without whitespace or `#`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::InvalidLabel(label));
        }
        Ok(VertexId(label))
    }

    /// Builds a label known to be valid. Panics otherwise.
    pub(crate) fn known(label: impl Into<String>) -> Self {
        let label = label.into();
        debug_assert!(VertexId::new(label.clone()).is_ok(), "bad label {label:?}");
        VertexId(label)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Labels starting with `_` are reserved for generated shadow vertices.
    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('_')
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for VertexId {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        VertexId::new(value)
    }
}

impl core::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, Default)]
struct Labels {
    labels: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
}

impl Labels {
    fn insert(&mut self, v: &VertexId) -> usize {
        if let Some(&i) = self.index.get(v) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(v.clone());
        self.index.insert(v.clone(), i);
        i
    }

    fn get(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// Builds a [`Graph`], rejecting loops and duplicate edges.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    labels: Labels,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: &VertexId) -> usize {
        self.labels.insert(v)
    }

    pub fn edge(&mut self, a: &VertexId, b: &VertexId) -> Result<()> {
        if a == b {
            return Err(Error::Loop(a.clone()));
        }
        let i = self.labels.insert(a);
        let j = self.labels.insert(b);
        if !self.edges.insert((i.min(j), i.max(j))) {
            return Err(Error::DuplicateEdge(a.clone(), b.clone()));
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        let n = self.labels.labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            adj,
        }
    }
}

/// A finite simple graph.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Labels,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Convenience constructor from label pairs.
    pub fn from_edges<'a, I>(edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut b = GraphBuilder::new();
        for (u, v) in edges {
            b.edge(&VertexId::new(u)?, &VertexId::new(v)?)?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels.labels
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.labels.get(v)
    }

    pub fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        out
    }

    /// Edges as label pairs, smaller label first.
    pub fn edge_labels(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.label(i).clone(), self.label(j).clone());
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    /// Vertex indices sorted by label.
    pub fn sorted_indices(&self) -> Vec<usize> {
        self.labels.index.values().copied().collect()
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut idx = Vec::with_capacity(keep.len());
        for v in keep {
            idx.push(self.require(v)?);
        }
        idx.sort_unstable();
        Ok(self.induced(&idx))
    }

    /// Induced subgraph on the given indices, in the given order.
    pub fn induced(&self, idx: &[usize]) -> Graph {
        let mut b = GraphBuilder::new();
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (k, &i) in idx.iter().enumerate() {
            b.vertex(self.label(i));
            pos[i] = k;
        }
        for &i in idx {
            for &j in &self.adj[i] {
                if i < j && pos[j] != usize::MAX {
                    b.edges.insert((pos[i].min(pos[j]), pos[i].max(pos[j])));
                }
            }
        }
        b.build()
    }

    /// Connected components among vertices with `alive[i]`, each sorted, in
    /// order of their smallest index.
    pub fn components_of(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        components_by(self.vertex_count(), alive, |i| self.adj[i].as_slice())
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(&vec![true; self.vertex_count()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for (i, j) in self.edges() {
            for &k in &self.adj[i] {
                if k > j && self.has_edge(j, k) {
                    return Some([i, j, k]);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Adjacency bitmasks; only for graphs with at most 64 vertices.
    pub fn masks(&self) -> Result<Vec<u64>> {
        let n = self.vertex_count();
        if n > 64 {
            return Err(Error::BudgetExceeded {
                what: "bitmask",
                limit: 64,
                actual: n,
            });
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect())
    }

    /// The same graph with every label mapped through `f` (which must be
    /// injective).
    pub fn relabeled(&self, mut f: impl FnMut(&VertexId) -> VertexId) -> Graph {
        let mut b = GraphBuilder::new();
        let new: Vec<VertexId> = self.vertices().iter().map(&mut f).collect();
        for v in &new {
            b.vertex(v);
        }
        for (i, j) in self.edges() {
            b.edges.insert((i, j));
        }
        b.build()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.labels.index.keys().eq(other.labels.index.keys())
            && self.edge_labels() == other.edge_labels()
    }
}

impl Eq for Graph {}

/// Builds an [`OrientedGraph`], rejecting loops, duplicates and pairs of
/// opposite arcs.
#[derive(Clone, Debug, Default)]
pub struct OrientedGraphBuilder {
    labels: Labels,
    arcs: BTreeSet<(usize, usize)>,
}

impl OrientedGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: &VertexId) -> usize {
        self.labels.insert(v)
    }

    pub fn arc(&mut self, a: &VertexId, b: &VertexId) -> Result<()> {
        if a == b {
            return Err(Error::Loop(a.clone()));
        }
        let i = self.labels.insert(a);
        let j = self.labels.insert(b);
        if self.arcs.contains(&(j, i)) {
            return Err(Error::BothDirections(a.clone(), b.clone()));
        }
        if !self.arcs.insert((i, j)) {
            return Err(Error::DuplicateEdge(a.clone(), b.clone()));
        }
        Ok(())
    }

    pub fn build(self) -> OrientedGraph {
        let n = self.labels.labels.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(i, j) in &self.arcs {
            out[i].push(j);
            inn[j].push(i);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        let nbr = (0..n)
            .map(|i| {
                let mut l: Vec<usize> = out[i].iter().chain(&inn[i]).copied().collect();
                l.sort_unstable();
                l
            })
            .collect();
        OrientedGraph {
            labels: self.labels,
            out,
            inn,
            nbr,
        }
    }
}

/// A finite oriented graph: no loops, no arc present in both directions.
#[derive(Clone, Debug, Default)]
pub struct OrientedGraph {
    labels: Labels,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    nbr: Vec<Vec<usize>>,
}

impl OrientedGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_arcs<'a, I>(arcs: I) -> Result<OrientedGraph>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut b = OrientedGraphBuilder::new();
        for (u, v) in arcs {
            b.arc(&VertexId::new(u)?, &VertexId::new(v)?)?;
        }
        Ok(b.build())
    }

    /// Orients the edges of `g`: edge `{i, j}` becomes `i -> j` when
    /// `forward(i, j)` holds for `i < j`, and `j -> i` otherwise.
    pub fn orient(g: &Graph, mut forward: impl FnMut(usize, usize) -> bool) -> OrientedGraph {
        let mut b = OrientedGraphBuilder::new();
        for v in g.vertices() {
            b.vertex(v);
        }
        for (i, j) in g.edges() {
            if forward(i, j) {
                b.arcs.insert((i, j));
            } else {
                b.arcs.insert((j, i));
            }
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels.labels
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.labels.get(v)
    }

    pub fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        &self.inn[i]
    }

    /// Neighbors in the underlying graph.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbr[i]
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i].binary_search(&j).is_ok()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.nbr[i].binary_search(&j).is_ok()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.arc_count());
        for (i, list) in self.out.iter().enumerate() {
            v.extend(list.iter().map(|&j| (i, j)));
        }
        v
    }

    pub fn arc_labels(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.arcs()
            .into_iter()
            .map(|(i, j)| (self.label(i).clone(), self.label(j).clone()))
            .collect()
    }

    pub fn sorted_indices(&self) -> Vec<usize> {
        self.labels.index.values().copied().collect()
    }

    /// `(in-degree, out-degree)` of `v`.
    pub fn degree_profile(&self, v: &VertexId) -> Result<(usize, usize)> {
        let i = self.require(v)?;
        Ok((self.inn[i].len(), self.out[i].len()))
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.inn[i].is_empty()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.out[i].is_empty()
    }

    pub fn sources(&self) -> BTreeSet<VertexId> {
        (0..self.vertex_count())
            .filter(|&i| self.is_source(i))
            .map(|i| self.label(i).clone())
            .collect()
    }

    pub fn sinks(&self) -> BTreeSet<VertexId> {
        (0..self.vertex_count())
            .filter(|&i| self.is_sink(i))
            .map(|i| self.label(i).clone())
            .collect()
    }

    pub fn underlying(&self) -> Graph {
        let mut b = GraphBuilder::new();
        for v in self.vertices() {
            b.vertex(v);
        }
        for (i, j) in self.arcs() {
            b.edges.insert((i.min(j), i.max(j)));
        }
        b.build()
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<OrientedGraph> {
        let mut idx = Vec::with_capacity(keep.len());
        for v in keep {
            idx.push(self.require(v)?);
        }
        idx.sort_unstable();
        Ok(self.induced(&idx))
    }

    pub fn induced(&self, idx: &[usize]) -> OrientedGraph {
        let mut b = OrientedGraphBuilder::new();
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (k, &i) in idx.iter().enumerate() {
            b.vertex(self.label(i));
            pos[i] = k;
        }
        for &i in idx {
            for &j in &self.out[i] {
                if pos[j] != usize::MAX {
                    b.arcs.insert((pos[i], pos[j]));
                }
            }
        }
        b.build()
    }

    pub fn components_of(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        components_by(self.vertex_count(), alive, |i| self.nbr[i].as_slice())
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(&vec![true; self.vertex_count()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Some directed cycle, as a vertex sequence, if one exists.
    pub fn find_directed_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unseen, 1 = on stack, 2 = done
        let n = self.vertex_count();
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                if *k < self.out[v].len() {
                    let w = self.out[v][*k];
                    *k += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![w];
                            let mut x = v;
                            while x != w {
                                cycle.push(x);
                                x = parent[x];
                            }
                            cycle[1..].reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_directed_cycle().is_none()
    }

    pub fn masks(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        let n = self.vertex_count();
        if n > 64 {
            return Err(Error::BudgetExceeded {
                what: "bitmask",
                limit: 64,
                actual: n,
            });
        }
        let m = |lists: &Vec<Vec<usize>>| {
            lists
                .iter()
                .map(|l| l.iter().fold(0u64, |m, &j| m | (1 << j)))
                .collect::<Vec<u64>>()
        };
        Ok((m(&self.out), m(&self.inn)))
    }

    pub fn relabeled(&self, mut f: impl FnMut(&VertexId) -> VertexId) -> OrientedGraph {
        let mut b = OrientedGraphBuilder::new();
        let new: Vec<VertexId> = self.vertices().iter().map(&mut f).collect();
        for v in &new {
            b.vertex(v);
        }
        for a in self.arcs() {
            b.arcs.insert(a);
        }
        b.build()
    }
}

impl PartialEq for OrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.labels.index.keys().eq(other.labels.index.keys())
            && self.arc_labels() == other.arc_labels()
    }
}

impl Eq for OrientedGraph {}

fn components_by<'a>(n: usize, alive: &[bool], nbr: impl Fn(usize) -> &'a [usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in nbr(v) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Formats a list of labels separated by single spaces.
pub(crate) fn join_labels<'a>(it: impl IntoIterator<Item = &'a VertexId>) -> String {
    let mut s = String::new();
    for (k, v) in it.into_iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        s.push_str(v.as_str());
    }
    s
}

pub(crate) fn vid(s: &str) -> VertexId {
    VertexId::known(s.to_string())
}
