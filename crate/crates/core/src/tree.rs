//! Burling trees, derivations and the derived oriented graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{OrientedGraph, OrientedGraphBuilder, VertexId};
use crate::{Error, Result};

/// A rooted tree with a last-born child per internal vertex and a choose
/// function mapping vertices to branches (listed top-down).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurlingTree {
    pub(crate) root: VertexId,
    pub(crate) parent: BTreeMap<VertexId, VertexId>,
    pub(crate) last_born: BTreeMap<VertexId, VertexId>,
    pub(crate) choose: BTreeMap<VertexId, Vec<VertexId>>,
}

/// A Burling tree together with the set of tree vertices kept in the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub tree: BurlingTree,
    pub kept: BTreeSet<VertexId>,
}

/// Position of an arc `uv` among the kept out-neighbors of `u`, ordered by
/// depth in the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcClass {
    Top,
    Bottom,
    TopAndBottom,
    Middle,
}

impl ArcClass {
    pub fn is_top(self) -> bool {
        matches!(self, ArcClass::Top | ArcClass::TopAndBottom)
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, ArcClass::Bottom | ArcClass::TopAndBottom)
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArcClass::Top => "top",
            ArcClass::Bottom => "bottom",
            ArcClass::TopAndBottom => "top_and_bottom",
            ArcClass::Middle => "middle",
        })
    }
}

/// One violated clause of the Burling tree definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexId,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    RootHasParent,
    MultipleParents,
    DuplicateEntry(&'static str),
    NotConnectedToRoot,
    UnknownVertex(VertexId),
    LastBornNotChild(VertexId),
    MissingLastBorn,
    ChooseOfRoot,
    ChooseOfLastBorn,
    ChooseStart { expected: VertexId, found: VertexId },
    ChooseNotBranch { at: VertexId, next: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.vertex)?;
        match &self.kind {
            ViolationKind::RootHasParent => f.write_str("the root must not have a parent"),
            ViolationKind::MultipleParents => f.write_str("vertex has more than one parent"),
            ViolationKind::DuplicateEntry(what) => write!(f, "duplicate {what} entry"),
            ViolationKind::NotConnectedToRoot => f.write_str("vertex does not reach the root"),
            ViolationKind::UnknownVertex(w) => write!(f, "references unknown vertex {w}"),
            ViolationKind::LastBornNotChild(w) => write!(f, "last-born {w} is not a child"),
            ViolationKind::MissingLastBorn => f.write_str("non-leaf vertex has no last-born"),
            ViolationKind::ChooseOfRoot => f.write_str("choose of the root must be empty"),
            ViolationKind::ChooseOfLastBorn => f.write_str("choose of a last-born must be empty"),
            ViolationKind::ChooseStart { expected, found } => write!(
                f,
                "choose must start at the last-born {expected} of the parent, found {found}"
            ),
            ViolationKind::ChooseNotBranch { at, next } => {
                write!(f, "choose is not a branch: {next} is not a child of {at}")
            }
        }
    }
}

impl BurlingTree {
    /// The tree consisting of a single root.
    pub fn single(root: VertexId) -> Self {
        BurlingTree {
            root,
            parent: BTreeMap::new(),
            last_born: BTreeMap::new(),
            choose: BTreeMap::new(),
        }
    }

    /// Assembles a tree from its parts without checking the definition
    /// (see [`validate_tree`]). Only structurally ambiguous input, such as a
    /// vertex with two parents, is rejected here.
    pub fn from_parts<E, L, C>(root: VertexId, edges: E, last_born: L, choose: C) -> Result<Self>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
        L: IntoIterator<Item = (VertexId, VertexId)>,
        C: IntoIterator<Item = (VertexId, Vec<VertexId>)>,
    {
        let mut t = BurlingTree::single(root);
        for (p, c) in edges {
            if t.parent.insert(c.clone(), p).is_some() {
                return Err(Error::InvalidTree(Violation {
                    vertex: c,
                    kind: ViolationKind::MultipleParents,
                }));
            }
        }
        for (p, c) in last_born {
            if t.last_born.insert(p.clone(), c).is_some() {
                return Err(Error::InvalidTree(Violation {
                    vertex: p,
                    kind: ViolationKind::DuplicateEntry("last_born"),
                }));
            }
        }
        for (v, list) in choose {
            if t.choose.contains_key(&v) {
                return Err(Error::InvalidTree(Violation {
                    vertex: v,
                    kind: ViolationKind::DuplicateEntry("choose"),
                }));
            }
            if !list.is_empty() {
                t.choose.insert(v, list);
            }
        }
        Ok(t)
    }

    pub fn root(&self) -> &VertexId {
        &self.root
    }

    pub fn parent(&self, v: &VertexId) -> Option<&VertexId> {
        self.parent.get(v)
    }

    pub fn last_born(&self, v: &VertexId) -> Option<&VertexId> {
        self.last_born.get(v)
    }

    /// The choose list of `v`, top-down; empty when absent.
    pub fn choose(&self, v: &VertexId) -> &[VertexId] {
        self.choose.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.parent.keys().cloned().collect();
        s.extend(self.parent.values().cloned());
        s.insert(self.root.clone());
        s
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        *v == self.root || self.parent.contains_key(v) || self.parent.values().any(|p| p == v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    /// Children of `v`, sorted by label.
    pub fn children(&self, v: &VertexId) -> Vec<VertexId> {
        self.parent
            .iter()
            .filter(|(_, p)| *p == v)
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// Tree edges as `(parent, child)` pairs sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut e: Vec<(VertexId, VertexId)> = self.parent.iter().map(|(c, p)| (p.clone(), c.clone())).collect();
        e.sort();
        e
    }

    pub fn last_born_pairs(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> {
        self.last_born.iter()
    }

    /// Non-empty choose lists, keyed by vertex.
    pub fn choose_entries(&self) -> impl Iterator<Item = (&VertexId, &[VertexId])> {
        self.choose.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn is_last_born(&self, v: &VertexId) -> bool {
        self.parent
            .get(v)
            .and_then(|p| self.last_born.get(p))
            .is_some_and(|lb| lb == v)
    }

    pub fn depth(&self, v: &VertexId) -> usize {
        let mut d = 0;
        let mut x = v;
        while let Some(p) = self.parent.get(x) {
            d += 1;
            x = p;
            if d > self.parent.len() {
                break;
            }
        }
        d
    }

    /// Whether `a` is an ancestor of `b` (or equal to it).
    pub fn is_ancestor(&self, a: &VertexId, b: &VertexId) -> bool {
        let mut x = b;
        let mut steps = 0;
        loop {
            if x == a {
                return true;
            }
            match self.parent.get(x) {
                Some(p) if steps <= self.parent.len() => {
                    x = p;
                    steps += 1;
                }
                _ => return false,
            }
        }
    }

    /// Vertices on the path from the root down to `v`.
    pub fn branch_to(&self, v: &VertexId) -> Vec<VertexId> {
        let mut out = vec![v.clone()];
        let mut x = v;
        while let Some(p) = self.parent.get(x) {
            out.push(p.clone());
            x = p;
            if out.len() > self.parent.len() + 1 {
                break;
            }
        }
        out.reverse();
        out
    }
}

/// All violated clauses of the definition, empty when `t` is a Burling tree.
pub fn validate_tree(t: &BurlingTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let verts = t.vertices();
    let push = |out: &mut Vec<Violation>, v: &VertexId, kind| {
        out.push(Violation {
            vertex: v.clone(),
            kind,
        })
    };
    if t.parent.contains_key(&t.root) {
        push(&mut out, &t.root, ViolationKind::RootHasParent);
    }
    for v in &verts {
        if v == &t.root {
            continue;
        }
        let mut x = v;
        let mut ok = false;
        for _ in 0..=verts.len() {
            match t.parent.get(x) {
                Some(p) if p == &t.root => {
                    ok = true;
                    break;
                }
                Some(p) => x = p,
                None => break,
            }
        }
        if !ok {
            push(&mut out, v, ViolationKind::NotConnectedToRoot);
        }
    }
    let mut has_children = BTreeSet::new();
    for p in t.parent.values() {
        has_children.insert(p.clone());
    }
    for (p, c) in &t.last_born {
        if !verts.contains(p) {
            push(&mut out, p, ViolationKind::UnknownVertex(p.clone()));
        } else if t.parent.get(c) != Some(p) {
            push(&mut out, p, ViolationKind::LastBornNotChild(c.clone()));
        }
    }
    for p in &has_children {
        if !t.last_born.contains_key(p) {
            push(&mut out, p, ViolationKind::MissingLastBorn);
        }
    }
    for (v, list) in &t.choose {
        if !verts.contains(v) {
            push(&mut out, v, ViolationKind::UnknownVertex(v.clone()));
            continue;
        }
        if let Some(w) = list.iter().find(|w| !verts.contains(*w)) {
            push(&mut out, v, ViolationKind::UnknownVertex(w.clone()));
            continue;
        }
        if list.is_empty() {
            continue;
        }
        if v == &t.root {
            push(&mut out, v, ViolationKind::ChooseOfRoot);
            continue;
        }
        if t.is_last_born(v) {
            push(&mut out, v, ViolationKind::ChooseOfLastBorn);
            continue;
        }
        let expected = t.parent.get(v).and_then(|p| t.last_born.get(p));
        match expected {
            Some(e) if e == &list[0] => {}
            Some(e) => {
                push(
                    &mut out,
                    v,
                    ViolationKind::ChooseStart {
                        expected: e.clone(),
                        found: list[0].clone(),
                    },
                );
                continue;
            }
            None => continue,
        }
        for pair in list.windows(2) {
            if t.parent.get(&pair[1]) != Some(&pair[0]) {
                push(
                    &mut out,
                    v,
                    ViolationKind::ChooseNotBranch {
                        at: pair[0].clone(),
                        next: pair[1].clone(),
                    },
                );
                break;
            }
        }
    }
    out
}

pub(crate) fn ensure_valid(t: &BurlingTree) -> Result<()> {
    match validate_tree(t).into_iter().next() {
        Some(v) => Err(Error::InvalidTree(v)),
        None => Ok(()),
    }
}

pub(crate) fn ensure_valid_derivation(d: &Derivation) -> Result<()> {
    ensure_valid(&d.tree)?;
    let verts = d.tree.vertices();
    if let Some(v) = d.kept.iter().find(|v| !verts.contains(*v)) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    Ok(())
}

/// The oriented graph on all tree vertices with an arc `uv` whenever `v`
/// belongs to `choose(u)`.
pub fn fully_derive(t: &BurlingTree) -> Result<OrientedGraph> {
    ensure_valid(t)?;
    build_arcs(t, |_| true)
}

/// The subgraph of the fully derived graph induced by the kept vertices.
pub fn derive(d: &Derivation) -> Result<OrientedGraph> {
    ensure_valid_derivation(d)?;
    build_arcs(&d.tree, |v| d.kept.contains(v))
}

fn build_arcs(t: &BurlingTree, keep: impl Fn(&VertexId) -> bool) -> Result<OrientedGraph> {
    let mut b = OrientedGraphBuilder::new();
    for v in t.vertices().iter().filter(|v| keep(v)) {
        b.vertex(v);
    }
    for (u, list) in &t.choose {
        if !keep(u) {
            continue;
        }
        for w in list.iter().filter(|w| keep(w)) {
            b.arc(u, w)?;
        }
    }
    Ok(b.build())
}

impl Derivation {
    pub fn new(tree: BurlingTree, kept: BTreeSet<VertexId>) -> Self {
        Derivation { tree, kept }
    }

    /// Kept vertices of `choose(u)`, top-down.
    pub fn kept_choose(&self, u: &VertexId) -> Vec<VertexId> {
        self.tree
            .choose(u)
            .iter()
            .filter(|w| self.kept.contains(*w))
            .cloned()
            .collect()
    }

    /// Largest number of kept vertices on a root-to-leaf branch.
    pub fn max_branch_kept(&self) -> usize {
        let mut best = 0;
        for v in self.tree.vertices() {
            if self.tree.children(&v).is_empty() {
                let n = self
                    .tree
                    .branch_to(&v)
                    .iter()
                    .filter(|x| self.kept.contains(*x))
                    .count();
                best = best.max(n);
            }
        }
        best
    }
}

/// Classifies every arc of the derived graph.
pub fn classify_arcs(d: &Derivation) -> Result<BTreeMap<(VertexId, VertexId), ArcClass>> {
    ensure_valid_derivation(d)?;
    let mut out = BTreeMap::new();
    for u in &d.kept {
        let outs = d.kept_choose(u);
        let n = outs.len();
        for (k, v) in outs.into_iter().enumerate() {
            let class = match (k == 0, k + 1 == n) {
                (true, true) => ArcClass::TopAndBottom,
                (true, false) => ArcClass::Top,
                (false, true) => ArcClass::Bottom,
                (false, false) => ArcClass::Middle,
            };
            out.insert((u.clone(), v), class);
        }
    }
    Ok(out)
}

/// Whether `d` derives exactly `g`.
pub fn check_derivation(g: &OrientedGraph, d: &Derivation) -> bool {
    derivation_mismatch(g, d).is_none()
}

/// The first difference between `g` and the graph derived from `d`, if any.
pub fn derivation_mismatch(g: &OrientedGraph, d: &Derivation) -> Option<String> {
    let h = match derive(d) {
        Ok(h) => h,
        Err(e) => return Some(format!("invalid derivation: {e}")),
    };
    let gv: BTreeSet<&VertexId> = g.vertices().iter().collect();
    let hv: BTreeSet<&VertexId> = h.vertices().iter().collect();
    if let Some(v) = gv.difference(&hv).next() {
        return Some(format!("vertex {v} is not derived"));
    }
    if let Some(v) = hv.difference(&gv).next() {
        return Some(format!("derived vertex {v} is not in the graph"));
    }
    let ga = g.arc_labels();
    let ha = h.arc_labels();
    if let Some((u, v)) = ga.difference(&ha).next() {
        return Some(format!("arc {u} {v} is not derived"));
    }
    if let Some((u, v)) = ha.difference(&ga).next() {
        return Some(format!("derived arc {u} {v} is not in the graph"));
    }
    None
}

/// Generates shadow labels `_s<counter>` avoiding a set of used labels.
#[derive(Clone, Debug, Default)]
pub(crate) struct FreshLabels {
    counter: usize,
    used: BTreeSet<VertexId>,
}

impl FreshLabels {
    pub(crate) fn new(used: impl IntoIterator<Item = VertexId>) -> Self {
        FreshLabels {
            counter: 0,
            used: used.into_iter().collect(),
        }
    }

    pub(crate) fn reserve(&mut self, v: &VertexId) {
        self.used.insert(v.clone());
    }

    pub(crate) fn next(&mut self) -> VertexId {
        loop {
            let v = VertexId::known(format!("_s{}", self.counter));
            self.counter += 1;
            if self.used.insert(v.clone()) {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vid;
    use alloc::string::ToString;

    pub(crate) fn fig1() -> Derivation {
        crate::generators::figure_square_c4()
    }

    #[test]
    fn single_vertex_tree_is_valid() {
        let t = BurlingTree::single(vid("r"));
        assert!(validate_tree(&t).is_empty());
        let g = fully_derive(&t).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn square_tree_derives_c4() {
        let d = fig1();
        assert!(validate_tree(&d.tree).is_empty());
        let g = derive(&d).unwrap();
        let expect = OrientedGraph::from_arcs([("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")]).unwrap();
        assert_eq!(g, expect);
        assert_eq!(fully_derive(&d.tree).unwrap().arc_count(), 4);
        assert!(check_derivation(&expect, &d));
        let reversed = OrientedGraph::from_arcs([("x", "u"), ("u", "y"), ("v", "x"), ("v", "y")]).unwrap();
        assert!(!check_derivation(&reversed, &d));
    }

    #[test]
    fn choose_of_last_born_is_rejected() {
        let mut d = fig1();
        d.tree.choose.insert(vid("x"), vec![vid("y")]);
        let v = validate_tree(&d.tree);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "x: choose of a last-born must be empty");
    }

    #[test]
    fn other_violations() {
        let mut t = fig1().tree;
        t.choose.insert(vid("u"), vec![vid("y")]);
        assert!(matches!(validate_tree(&t)[0].kind, ViolationKind::ChooseStart { .. }));
        let mut t = fig1().tree;
        t.last_born.remove(&vid("x"));
        assert!(validate_tree(&t)
            .iter()
            .any(|v| v.kind == ViolationKind::MissingLastBorn));
        let mut t = fig1().tree;
        t.parent.insert(vid("q"), vid("z"));
        assert!(validate_tree(&t)
            .iter()
            .any(|v| v.kind == ViolationKind::NotConnectedToRoot));
        let mut t = fig1().tree;
        t.choose.insert(vid("r"), vec![vid("x")]);
        assert!(validate_tree(&t).iter().any(|v| v.kind == ViolationKind::ChooseOfRoot));
    }

    #[test]
    fn empty_choose_gives_edgeless_graph() {
        let mut t = fig1().tree;
        t.choose.clear();
        let g = fully_derive(&t).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn empty_kept_and_unknown_kept() {
        let mut d = fig1();
        d.kept.clear();
        assert_eq!(derive(&d).unwrap(), OrientedGraph::empty());
        assert!(check_derivation(&OrientedGraph::empty(), &d));
        d.kept.insert(vid("nope"));
        assert!(derive(&d).is_err());
    }

    #[test]
    fn arc_classes() {
        let d = fig1();
        let c = classify_arcs(&d).unwrap();
        assert_eq!(c[&(vid("u"), vid("x"))], ArcClass::Top);
        assert_eq!(c[&(vid("u"), vid("y"))], ArcClass::Bottom);
        let mut d2 = d.clone();
        d2.kept.remove(&vid("y"));
        let c2 = classify_arcs(&d2).unwrap();
        assert_eq!(c2[&(vid("u"), vid("x"))], ArcClass::TopAndBottom);
    }

    #[test]
    fn mismatch_messages() {
        let d = fig1();
        let g = OrientedGraph::from_arcs([("u", "x"), ("u", "y"), ("v", "x")]).unwrap();
        assert_eq!(
            derivation_mismatch(&g, &d).unwrap(),
            "derived arc v y is not in the graph"
        );
    }

    #[test]
    fn fresh_labels_skip_used() {
        let mut f = FreshLabels::new([vid("_s0"), vid("_s2")]);
        assert_eq!(f.next(), vid("_s1"));
        assert_eq!(f.next(), vid("_s3"));
    }
}
