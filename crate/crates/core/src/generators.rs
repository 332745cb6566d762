//! Constructors for graph families, figure instances and random Burling
//! trees.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::{vid, Graph, GraphBuilder, OrientedGraph, OrientedGraphBuilder, VertexId};
use crate::transform::{expand_arcs, ExpandMode, ExpandStep};
use crate::tree::{BurlingTree, Derivation};
use crate::{Error, Result};

fn tree(root: &str, edges: &[(&str, &str)], lb: &[(&str, &str)], choose: &[(&str, &[&str])]) -> BurlingTree {
    BurlingTree::from_parts(
        vid(root),
        edges.iter().map(|(p, c)| (vid(p), vid(c))),
        lb.iter().map(|(p, c)| (vid(p), vid(c))),
        choose
            .iter()
            .map(|(v, l)| (vid(v), l.iter().map(|w| vid(w)).collect::<Vec<_>>())),
    )
    .expect("well-formed figure tree")
}

fn label_set(labels: &[&str]) -> BTreeSet<VertexId> {
    labels.iter().map(|s| vid(s)).collect()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// The derivation of the oriented four-cycle `u→x, u→y, v→x, v→y`.
pub fn figure_square_c4() -> Derivation {
    let t = tree(
        "r",
        &[("r", "u"), ("r", "v"), ("r", "x"), ("x", "y")],
        &[("r", "x"), ("x", "y")],
        &[("u", &["x", "y"]), ("v", &["x", "y"])],
    );
    Derivation::new(t, label_set(&["u", "v", "x", "y"]))
}

/// The derivation of an orientation of `K_{3,3}`.
pub fn figure_square_k33() -> Derivation {
    let branch: &[&str] = &["x1", "x2", "x3"];
    let t = tree(
        "r",
        &[
            ("r", "u1"),
            ("r", "u2"),
            ("r", "u3"),
            ("r", "x1"),
            ("x1", "x2"),
            ("x2", "x3"),
        ],
        &[("r", "x1"), ("x1", "x2"), ("x2", "x3")],
        &[("u1", branch), ("u2", branch), ("u3", branch)],
    );
    Derivation::new(t, label_set(&["u1", "u2", "u3", "x1", "x2", "x3"]))
}

fn expanded(d: &Derivation, plan: &[(&str, &str, ExpandMode)]) -> Derivation {
    let plan: Vec<ExpandStep> = plan
        .iter()
        .map(|&(from, to, mode)| ExpandStep {
            from: vid(from),
            to: vid(to),
            mode,
        })
        .collect();
    expand_arcs(d, &plan).expect("expandable figure arcs")
}

/// Reconstruction of a nobility-2 graph with a source of degree 2: the
/// oriented four-cycle with the bottom arc `u y` subdivided once.
pub fn figure_nobility2() -> Derivation {
    expanded(&figure_square_c4(), &[("u", "y", ExpandMode::BottomPath(2))])
}

/// Reconstruction of a graph of oriented nobility 3 whose underlying graph
/// has nobility 2: a source `u1` with out-neighbors `x1, x2, x3`, a second
/// source `u2` seeing `x1, x2`, and `u2 x2` subdivided once.
pub fn figure_nobility3() -> Derivation {
    let t = tree(
        "r",
        &[("r", "u1"), ("r", "u2"), ("r", "x1"), ("x1", "x2"), ("x2", "x3")],
        &[("r", "x1"), ("x1", "x2"), ("x2", "x3")],
        &[("u1", &["x1", "x2", "x3"]), ("u2", &["x1", "x2"])],
    );
    let d = Derivation::new(t, label_set(&["u1", "u2", "x1", "x2", "x3"]));
    expanded(&d, &[("u2", "x2", ExpandMode::BottomPath(2))])
}

/// Reconstruction of a Burling graph close to a wheel: the path
/// `p0 .. p4` and a center `c` joined to `p0`, `p2` and `p4`, with the
/// spoke to `p0` and the segment `p2 p3` subdivided.
pub fn figure_close_to_wheel() -> Derivation {
    let t = tree(
        "s8",
        &[
            ("s1", "s0"),
            ("s1", "p1"),
            ("s3", "s2"),
            ("s3", "c"),
            ("s5", "s4"),
            ("s5", "p3"),
            ("s6", "s3"),
            ("s6", "p4"),
            ("s7", "s1"),
            ("s7", "p2"),
            ("s8", "s7"),
            ("s8", "p0"),
            ("c", "s5"),
            ("p1", "s6"),
        ],
        &[
            ("s1", "s0"),
            ("s3", "s2"),
            ("s5", "s4"),
            ("s6", "s3"),
            ("s7", "s1"),
            ("s8", "s7"),
            ("c", "s5"),
            ("p1", "s6"),
        ],
        &[
            ("p0", &["s7", "s1", "p1", "s6", "s3", "c"]),
            ("p2", &["s1", "p1", "s6", "s3", "c", "s5", "p3"]),
            ("p4", &["s3", "c", "s5", "p3"]),
        ],
    );
    let d = Derivation::new(t, label_set(&["c", "p0", "p1", "p2", "p3", "p4"]));
    expanded(
        &d,
        &[
            ("p2", "p3", ExpandMode::BottomPath(3)),
            ("p0", "c", ExpandMode::BottomPath(2)),
        ],
    )
}

/// Reconstruction of a Burling graph close to a flower: the hole
/// `h0 h1 h2 h3` with petals `h_i e_i f_i h_{i+1}` on three of its four
/// edges, two of them lengthened.
pub fn figure_close_to_flower() -> Derivation {
    let t = tree(
        "s13",
        &[
            ("s1", "s0"),
            ("s1", "f0"),
            ("s10", "s9"),
            ("s10", "f1"),
            ("s11", "s3"),
            ("s11", "h3"),
            ("s12", "s1"),
            ("s12", "h1"),
            ("s13", "s12"),
            ("s13", "e0"),
            ("s3", "s2"),
            ("s3", "h0"),
            ("s5", "s4"),
            ("s5", "h2"),
            ("s7", "s6"),
            ("s7", "e1"),
            ("s8", "s7"),
            ("s8", "f2"),
            ("s9", "s5"),
            ("s9", "e2"),
            ("f0", "s11"),
            ("h0", "s10"),
            ("h2", "s8"),
        ],
        &[
            ("s1", "s0"),
            ("s10", "s9"),
            ("s11", "s3"),
            ("s12", "s1"),
            ("s13", "s12"),
            ("s3", "s2"),
            ("s5", "s4"),
            ("s7", "s6"),
            ("s8", "s7"),
            ("s9", "s5"),
            ("f0", "s11"),
            ("h0", "s10"),
            ("h2", "s8"),
        ],
        &[
            ("e0", &["s12", "s1", "f0", "s11", "s3", "h0"]),
            ("e2", &["s5", "h2", "s8", "f2"]),
            ("f1", &["s9", "s5", "h2", "s8", "s7", "e1"]),
            (
                "h1",
                &["s1", "f0", "s11", "s3", "h0", "s10", "s9", "s5", "h2", "s8", "s7", "e1"],
            ),
            ("h3", &["s3", "h0", "s10", "s9", "s5", "h2", "s8", "f2"]),
        ],
    );
    let kept = ["e0", "e1", "e2", "f0", "f1", "f2", "h0", "h1", "h2", "h3"];
    let d = Derivation::new(t, label_set(&kept));
    expanded(
        &d,
        &[
            ("e0", "h0", ExpandMode::BottomPath(2)),
            ("e2", "f2", ExpandMode::BottomPath(2)),
        ],
    )
}

/// Three sources with out-neighborhoods `{1,2,3}`, `{2,3,4}` and `{3,4,5}`.
pub fn figure_nobility4() -> OrientedGraph {
    OrientedGraph::from_arcs([
        ("a", "1"),
        ("a", "2"),
        ("a", "3"),
        ("b", "2"),
        ("b", "3"),
        ("b", "4"),
        ("c", "3"),
        ("c", "4"),
        ("c", "5"),
    ])
    .expect("valid arcs")
}

/// Parent array of an in-tree: vertex `0` is the sink and `parents[i - 1]`
/// is the out-neighbor of vertex `i`.
fn in_tree_children(parents: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = parents.len() + 1;
    let mut children = vec![Vec::new(); n];
    for (k, &p) in parents.iter().enumerate() {
        let i = k + 1;
        if p >= i {
            return Err(bad(format!("parent of vertex {i} must be smaller than {i}, got {p}")));
        }
        children[p].push(i);
    }
    Ok(children)
}

fn chandelier_leaves(children: &[Vec<usize>]) -> Result<Vec<usize>> {
    let leaves: Vec<usize> = (1..children.len()).filter(|&i| children[i].is_empty()).collect();
    if leaves.len() < 2 {
        return Err(bad("a chandelier needs an in-tree with at least 2 leaves"));
    }
    Ok(leaves)
}

/// The oriented chandelier over the in-tree given by `parents`: tree vertices
/// are `t0..`, the pivot is `p`.
pub fn gen_chandelier(parents: &[usize]) -> Result<OrientedGraph> {
    let children = in_tree_children(parents)?;
    let leaves = chandelier_leaves(&children)?;
    let mut b = OrientedGraphBuilder::new();
    let t = |i: usize| vid(&format!("t{i}"));
    b.vertex(&t(0));
    for (k, &p) in parents.iter().enumerate() {
        b.arc(&t(k + 1), &t(p))?;
    }
    for l in leaves {
        b.arc(&t(l), &vid("p"))?;
    }
    Ok(b.build())
}

/// The luxury chandelier over the tree given by `parents` (each leaf's
/// neighbor must have degree two in the tree).
pub fn gen_luxury_chandelier(parents: &[usize]) -> Result<Graph> {
    let children = in_tree_children(parents)?;
    let leaves = chandelier_leaves(&children)?;
    for &l in &leaves {
        let p = parents[l - 1];
        let deg = children[p].len() + usize::from(p != 0);
        if deg != 2 {
            return Err(bad(format!("the neighbor t{p} of leaf t{l} has degree {deg}, not 2")));
        }
    }
    Ok(gen_chandelier(parents)?.underlying())
}

/// A hole `r0 .. r{rim-1}` plus a center `c` adjacent to the given rim
/// positions.
pub fn gen_wheel(rim: usize, spokes: &[usize]) -> Result<Graph> {
    if rim < 4 {
        return Err(bad("the rim must have length at least 4"));
    }
    let set: BTreeSet<usize> = spokes.iter().copied().collect();
    if set.len() != spokes.len() {
        return Err(bad("spoke positions must be distinct"));
    }
    if set.len() < 3 {
        return Err(bad("a wheel needs at least 3 spokes"));
    }
    if let Some(&s) = set.iter().find(|&&s| s >= rim) {
        return Err(bad(format!("spoke position {s} is outside the rim")));
    }
    for &s in &set {
        if set.contains(&((s + 1) % rim)) {
            return Err(bad(format!("spokes {s} and {} are adjacent on the rim", (s + 1) % rim)));
        }
    }
    let mut b = GraphBuilder::new();
    let r = |i: usize| vid(&format!("r{i}"));
    for i in 0..rim {
        b.edge(&r(i), &r((i + 1) % rim))?;
    }
    for &s in &set {
        b.edge(&vid("c"), &r(s))?;
    }
    Ok(b.build())
}

/// Three internally disjoint paths of the given lengths between apexes `a`
/// and `b`.
pub fn gen_theta(l1: usize, l2: usize, l3: usize) -> Result<Graph> {
    let lens = [l1, l2, l3];
    if lens.iter().any(|&l| l < 2) {
        return Err(bad("every theta path must have length at least 2"));
    }
    let mut b = GraphBuilder::new();
    for (k, &l) in lens.iter().enumerate() {
        add_path(&mut b, "a", "b", &format!("p{}_", k + 1), l)?;
    }
    Ok(b.build())
}

fn add_path(b: &mut GraphBuilder, from: &str, to: &str, prefix: &str, len: usize) -> Result<()> {
    let mut prev = vid(from);
    for j in 1..len {
        let next = VertexId::new(format!("{prefix}{j}"))?;
        b.edge(&prev, &next)?;
        prev = next;
    }
    b.edge(&prev, &vid(to))
}

/// A hole `h0 .. h{core-1}` with, on each edge `h_i h_{i+1}`, a petal hole of
/// length `petals[i]`.
pub fn gen_flower(core: usize, petals: &[usize]) -> Result<Graph> {
    if core < 4 {
        return Err(bad("the core hole must have length at least 4"));
    }
    if petals.len() != core {
        return Err(bad(format!("expected {core} petal lengths, got {}", petals.len())));
    }
    if petals.iter().any(|&l| l < 4) {
        return Err(bad("every petal must have length at least 4"));
    }
    let mut b = GraphBuilder::new();
    let h = |i: usize| format!("h{i}");
    for i in 0..core {
        b.edge(&vid(&h(i)), &vid(&h((i + 1) % core)))?;
    }
    for (i, &l) in petals.iter().enumerate() {
        add_path(&mut b, &h(i), &h((i + 1) % core), &format!("e{i}_"), l - 1)?;
    }
    Ok(b.build())
}

/// Pairs of branch vertices in the order used by [`gen_k4_subdivision`].
pub const K4_PAIRS: [(&str, &str); 6] = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")];

/// The subdivision of `K4` on branch vertices `a, b, c, d` where the path
/// replacing pair `K4_PAIRS[i]` has length `lengths[i]`.
pub fn gen_k4_subdivision(lengths: [usize; 6]) -> Result<Graph> {
    if lengths.contains(&0) {
        return Err(bad("every path must have length at least 1"));
    }
    let mut b = GraphBuilder::new();
    for (k, (x, y)) in K4_PAIRS.iter().enumerate() {
        add_path(&mut b, x, y, &format!("{x}{y}"), lengths[k])?;
    }
    Ok(b.build())
}

/// The cycle `c0 .. c{n-1}`.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("a cycle needs at least 3 vertices"));
    }
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.edge(&vid(&format!("c{i}")), &vid(&format!("c{}", (i + 1) % n)))?;
    }
    Ok(b.build())
}

/// `K_{m,n}` on `a1..am` and `b1..bn`.
pub fn gen_complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for i in 1..=m {
        b.vertex(&vid(&format!("a{i}")));
    }
    for j in 1..=n {
        b.vertex(&vid(&format!("b{j}")));
    }
    for i in 1..=m {
        for j in 1..=n {
            b.edge(&vid(&format!("a{i}")), &vid(&format!("b{j}")))?;
        }
    }
    Ok(b.build())
}

/// Three four-holes through the edge `x y`: `x a p y`, `x b q y` and
/// `x c r y`. Triangle-free, free of wheels and flowers, passes the
/// full-star-cutset filter, and `G - y` is a tree, yet it is not Burling.
pub fn figure_non_burling() -> Graph {
    Graph::from_edges(NON_BURLING_EDGES.iter().copied()).expect("valid edges")
}

const NON_BURLING_EDGES: &[(&str, &str)] = &[
    ("x", "y"),
    ("x", "a"),
    ("x", "b"),
    ("x", "c"),
    ("a", "p"),
    ("b", "q"),
    ("c", "r"),
    ("p", "y"),
    ("q", "y"),
    ("r", "y"),
];

/// An instance produced by [`gen_figure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Figure {
    Graph(Graph),
    Oriented(OrientedGraph),
    Derivation(Derivation),
}

/// Names accepted by [`gen_figure`].
pub const FIGURES: &[&str] = &[
    "square-c4",
    "square-k33",
    "c6",
    "nobility2",
    "nobility3",
    "nobility4",
    "close-to-wheel",
    "close-to-flower",
    "wheel6",
    "flower12",
    "theta333",
    "k4-all-subdivided",
    "k4-one-kept",
    "k4-matching-kept",
    "k4-burling",
    "non-burling",
];

/// A named figure instance.
pub fn gen_figure(name: &str) -> Result<Figure> {
    Ok(match name {
        "square-c4" => Figure::Derivation(figure_square_c4()),
        "square-k33" => Figure::Derivation(figure_square_k33()),
        "c6" => Figure::Graph(gen_cycle(6)?),
        "nobility2" => Figure::Derivation(figure_nobility2()),
        "nobility3" => Figure::Derivation(figure_nobility3()),
        "nobility4" => Figure::Oriented(figure_nobility4()),
        "close-to-wheel" => Figure::Derivation(figure_close_to_wheel()),
        "close-to-flower" => Figure::Derivation(figure_close_to_flower()),
        "wheel6" => Figure::Graph(gen_wheel(6, &[0, 2, 4])?),
        "flower12" => Figure::Graph(gen_flower(4, &[4, 4, 4, 4])?),
        "theta333" => Figure::Graph(gen_theta(3, 3, 3)?),
        "k4-all-subdivided" => Figure::Graph(gen_k4_subdivision([2, 2, 2, 2, 2, 2])?),
        "k4-one-kept" => Figure::Graph(gen_k4_subdivision([1, 2, 2, 2, 2, 2])?),
        "k4-matching-kept" => Figure::Graph(gen_k4_subdivision([1, 2, 2, 2, 2, 1])?),
        "k4-burling" => Figure::Graph(gen_k4_subdivision([1, 1, 2, 2, 1, 1])?),
        "non-burling" => Figure::Graph(figure_non_burling()),
        _ => return Err(bad(format!("unknown figure {name:?}"))),
    })
}

/// A uniformly random recursive tree on `n >= 1` vertices `t0..` with random
/// last-borns and random choose branches.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BurlingTree {
    let n = n.max(1);
    let label = |i: usize| vid(&format!("t{i}"));
    let mut parent = vec![0usize; n];
    let mut children = vec![Vec::new(); n];
    for i in 1..n {
        parent[i] = rng.gen_range(0..i);
        children[parent[i]].push(i);
    }
    let mut last_born = vec![None; n];
    for v in 0..n {
        if !children[v].is_empty() {
            last_born[v] = Some(children[v][rng.gen_range(0..children[v].len())]);
        }
    }
    let mut choose = Vec::new();
    for v in 1..n {
        if last_born[parent[v]] == Some(v) || rng.gen_bool(0.2) {
            continue;
        }
        let mut cur = last_born[parent[v]].unwrap_or(v);
        let mut list = vec![label(cur)];
        while !children[cur].is_empty() && rng.gen_bool(0.75) {
            cur = children[cur][rng.gen_range(0..children[cur].len())];
            list.push(label(cur));
        }
        choose.push((label(v), list));
    }
    BurlingTree::from_parts(
        label(0),
        (1..n).map(|i| (label(parent[i]), label(i))),
        (0..n).filter_map(|v| last_born[v].map(|c| (label(v), label(c)))),
        choose,
    )
    .expect("generated tree is well formed")
}

/// A random derivation on a tree with at most `max_vertices` vertices.
pub fn random_derivation<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> Derivation {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let t = random_tree(rng, n);
    let kept = t.vertices().into_iter().filter(|_| rng.gen_bool(0.65)).collect();
    Derivation::new(t, kept)
}

/// Every triangle-free graph on `n` vertices up to isomorphism, on
/// vertices `v0 .. v{n-1}`.
pub fn triangle_free_graphs(n: usize) -> Vec<Graph> {
    let mut layer: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
    for k in 0..n {
        let mut next: Vec<Vec<Vec<bool>>> = Vec::new();
        let mut buckets: alloc::collections::BTreeMap<Vec<(usize, Vec<usize>)>, Vec<usize>> =
            alloc::collections::BTreeMap::new();
        for adj in &layer {
            for s in 0u32..1 << k {
                let nb: Vec<usize> = (0..k).filter(|&i| s >> i & 1 == 1).collect();
                if nb.iter().any(|&i| nb.iter().any(|&j| adj[i][j])) {
                    continue;
                }
                let mut a = adj.clone();
                for row in &mut a {
                    row.push(false);
                }
                a.push(vec![false; k + 1]);
                for &i in &nb {
                    a[i][k] = true;
                    a[k][i] = true;
                }
                let inv = invariant(&a);
                let bucket = buckets.entry(inv).or_default();
                if bucket.iter().all(|&b| !isomorphic(&next[b], &a)) {
                    bucket.push(next.len());
                    next.push(a);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|a| {
            let mut b = GraphBuilder::new();
            let l: Vec<VertexId> = (0..a.len()).map(|i| vid(&format!("v{i}"))).collect();
            for v in &l {
                b.vertex(v);
            }
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if a[i][j] {
                        b.edge(&l[i], &l[j]).expect("simple graph");
                    }
                }
            }
            b.build()
        })
        .collect()
}

fn degree(a: &[Vec<bool>], v: usize) -> usize {
    a[v].iter().filter(|&&x| x).count()
}

fn invariant(a: &[Vec<bool>]) -> Vec<(usize, Vec<usize>)> {
    let mut out: Vec<(usize, Vec<usize>)> = (0..a.len())
        .map(|v| {
            let mut nd: Vec<usize> = (0..a.len()).filter(|&w| a[v][w]).map(|w| degree(a, w)).collect();
            nd.sort_unstable();
            (degree(a, v), nd)
        })
        .collect();
    out.sort();
    out
}

fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        for t in 0..b.len() {
            if used[t] || degree(a, k) != degree(b, t) {
                continue;
            }
            if (0..k).all(|i| a[k][i] == b[t][map[i]]) {
                used[t] = true;
                map.push(t);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[t] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

#[cfg(test)]
/// Every parent sequence of an in-tree on `1..=max` vertices.
pub(crate) fn all_parent_sequences(max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for len in 1..max {
        let mut next = Vec::new();
        for p in &layer {
            for q in 0..len {
                let mut s: Vec<usize> = p.clone();
                s.push(q);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{derive, validate_tree};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chandelier_over_two_leaf_star_is_c4() {
        let g = gen_chandelier(&[0, 0]).unwrap();
        let c4 = OrientedGraph::from_arcs([("t1", "t0"), ("t2", "t0"), ("t1", "p"), ("t2", "p")]).unwrap();
        assert_eq!(g, c4);
        assert!(gen_chandelier(&[0]).is_err());
        assert!(gen_chandelier(&[1]).is_err());
    }

    #[test]
    fn six_vertex_chandelier() {
        // path t0 <- t1 <- t2 with pendant leaves t3, t4 on t2
        let g = gen_chandelier(&[0, 1, 2, 2]).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.arc_count(), 6);
    }

    #[test]
    fn luxury_requires_degree_two_neighbors() {
        assert!(gen_luxury_chandelier(&[0, 0]).is_ok());
        assert!(gen_luxury_chandelier(&[0, 0, 0]).is_err());
        assert!(gen_luxury_chandelier(&[0, 0, 0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn families() {
        let w = gen_wheel(6, &[0, 2, 4]).unwrap();
        assert_eq!((w.vertex_count(), w.edge_count()), (7, 9));
        assert!(w.is_triangle_free());
        assert!(gen_wheel(6, &[0, 1, 3]).is_err());
        assert!(gen_wheel(6, &[0, 2]).is_err());
        let t = gen_theta(3, 3, 3).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (8, 9));
        assert!(gen_theta(1, 3, 3).is_err());
        let f = gen_flower(4, &[4, 4, 4, 4]).unwrap();
        assert_eq!((f.vertex_count(), f.edge_count()), (12, 16));
        assert!(gen_flower(4, &[4, 4, 4]).is_err());
        let k = gen_k4_subdivision([2; 6]).unwrap();
        assert_eq!((k.vertex_count(), k.edge_count()), (10, 12));
        assert!(gen_k4_subdivision([0, 1, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn figures_are_deterministic() {
        for name in FIGURES {
            assert_eq!(gen_figure(name).unwrap(), gen_figure(name).unwrap());
        }
        assert!(gen_figure("nope").is_err());
    }

    #[test]
    fn figure_derivations_are_valid() {
        for d in [figure_square_c4(), figure_square_k33()] {
            assert!(validate_tree(&d.tree).is_empty());
        }
        let g = derive(&figure_square_k33()).unwrap();
        assert_eq!(g.arc_count(), 9);
        let nob = figure_nobility4();
        let max_out = (0..nob.vertex_count()).map(|i| nob.out_neighbors(i).len()).max();
        assert_eq!(max_out, Some(3));
    }

    #[test]
    fn reconstructions() {
        let out = |d: &Derivation| {
            let g = derive(d).unwrap();
            let max = (0..g.vertex_count()).map(|i| g.out_neighbors(i).len()).max();
            (g.vertex_count(), max)
        };
        assert_eq!(out(&figure_nobility2()), (5, Some(2)));
        assert_eq!(out(&figure_nobility3()), (6, Some(3)));
        let g = derive(&figure_close_to_wheel()).unwrap().underlying();
        assert_eq!((g.vertex_count(), g.degree(g.index_of("c").unwrap())), (9, 3));
        let g = derive(&figure_close_to_flower()).unwrap().underlying();
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 15));
        assert!(g.is_triangle_free());
    }

    #[test]
    fn random_trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let d = random_derivation(&mut rng, 14);
            assert!(validate_tree(&d.tree).is_empty(), "{:?}", d.tree);
            derive(&d).unwrap();
        }
    }

    #[test]
    fn triangle_free_catalogue_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| triangle_free_graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 7, 14, 38, 107]);
        for g in triangle_free_graphs(6) {
            assert!(g.is_triangle_free());
            assert_eq!(g.vertex_count(), 6);
        }
    }
}
