//! Witness checkers written directly from the definitions, independent of
//! the finders.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::constraints::{ConstraintViolation, Lemma};
use super::detect::{FlowerWitness, WheelWitness};
use super::Reason;
use crate::graph::{Graph, OrientedGraph, VertexId};
use crate::structure::{full_star_cutsets, is_luxury_chandelier};

fn idx(g: &Graph, vs: &[VertexId]) -> Option<Vec<usize>> {
    vs.iter().map(|v| g.index_of(v.as_str())).collect()
}

fn distinct(vs: &[usize]) -> bool {
    vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
}

/// Chordless cycle on at least four distinct vertices.
fn chordless_cycle(g: &Graph, c: &[usize]) -> bool {
    let n = c.len();
    if n < 4 || !distinct(c) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let d = (i + n - j) % n;
            let consecutive = d == 1 || d == n - 1;
            if i != j && g.has_edge(c[i], c[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Edges of `g` with both ends in `set`.
fn edges_within(g: &Graph, set: &BTreeSet<usize>) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &a in set {
        for &b in g.neighbors(a) {
            if a < b && set.contains(&b) {
                out.insert((a, b));
            }
        }
    }
    out
}

fn cycle_edges(c: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..c.len()).map(move |i| {
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        (a.min(b), a.max(b))
    })
}

fn path_edges(p: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

pub fn is_triangle(g: &Graph, t: &[VertexId; 3]) -> bool {
    let Some(i) = idx(g, t) else { return false };
    distinct(&i) && g.has_edge(i[0], i[1]) && g.has_edge(i[1], i[2]) && g.has_edge(i[0], i[2])
}

pub fn is_wheel_witness(g: &Graph, w: &WheelWitness) -> bool {
    let Some(rim) = idx(g, w.rim.vertices()) else {
        return false;
    };
    let Some(c) = g.index_of(w.center.as_str()) else {
        return false;
    };
    chordless_cycle(g, &rim) && !rim.contains(&c) && rim.iter().filter(|&&r| g.has_edge(c, r)).count() >= 3
}

pub fn is_flower_witness(g: &Graph, f: &FlowerWitness) -> bool {
    let Some(core) = idx(g, f.core.vertices()) else {
        return false;
    };
    let n = core.len();
    if !chordless_cycle(g, &core) || f.petals.len() != n {
        return false;
    }
    let mut petals = Vec::new();
    for p in &f.petals {
        let Some(p) = idx(g, p.vertices()) else { return false };
        if !chordless_cycle(g, &p) {
            return false;
        }
        petals.push(p.into_iter().collect::<BTreeSet<usize>>());
    }
    let core_set: BTreeSet<usize> = core.iter().copied().collect();
    let edge = |i: usize| -> BTreeSet<usize> { [core[i], core[(i + 1) % n]].into_iter().collect() };
    for i in 0..n {
        if petals[i].intersection(&core_set).copied().collect::<BTreeSet<_>>() != edge(i) {
            return false;
        }
        for j in i + 1..n {
            let both: BTreeSet<usize> = petals[i].intersection(&petals[j]).copied().collect();
            let ends: BTreeSet<usize> = edge(i).intersection(&edge(j)).copied().collect();
            if both != ends {
                return false;
            }
        }
    }
    let all: BTreeSet<usize> = petals.iter().flatten().copied().collect();
    let mut allowed = BTreeSet::new();
    for p in &f.petals {
        let p = idx(g, p.vertices()).unwrap_or_default();
        allowed.extend(cycle_edges(&p));
    }
    edges_within(g, &all) == allowed
}

/// Connected induced subgraph of `g` with no full star cutset, which is
/// neither a luxury chandelier nor a path on at most four vertices.
pub fn is_filter_failure(g: &Graph, h: &Graph) -> bool {
    let Some(i) = idx(g, h.vertices()) else { return false };
    let set: BTreeSet<usize> = i.iter().copied().collect();
    let mut mapped = BTreeSet::new();
    for (a, b) in h.edges() {
        let (x, y) = (i[a], i[b]);
        mapped.insert((x.min(y), x.max(y)));
    }
    if mapped != edges_within(g, &set) || !h.is_connected() {
        return false;
    }
    let m = h.vertex_count();
    let small_path = m <= 4 && h.edge_count() + 1 == m && (0..m).all(|v| h.degree(v) <= 2);
    m >= 2 && !small_path && !is_luxury_chandelier(h) && full_star_cutsets(h).is_empty()
}

/// Checks a negative verdict on an undirected graph. Exhausted searches
/// carry no witness and are accepted.
pub fn check_reason(g: &Graph, r: &Reason) -> bool {
    match r {
        Reason::Triangle(t) => is_triangle(g, t),
        Reason::Wheel(w) => is_wheel_witness(g, w),
        Reason::Flower(f) => is_flower_witness(g, f),
        Reason::FilterFailure(h) => is_filter_failure(g, h),
        Reason::OrientationConstraint(_) => false,
        Reason::Exhausted(_) => true,
    }
}

/// Checks a negative verdict on an oriented graph.
pub fn check_reason_oriented(g: &OrientedGraph, r: &Reason) -> bool {
    match r {
        Reason::OrientationConstraint(v) => is_constraint_violation(g, v),
        other => check_reason(&g.underlying(), other),
    }
}

/// Pivot candidates of an oriented hole: a sink whose two neighbors are
/// the only two sources, the other sink being the bottom. Returns
/// `(pivot, subordinate vertices)`.
fn pivots(g: &OrientedGraph, c: &[usize]) -> Vec<(usize, BTreeSet<usize>)> {
    let n = c.len();
    let kind = |k: usize| {
        let (v, p, q) = (c[k], c[(k + n - 1) % n], c[(k + 1) % n]);
        (g.has_arc(v, p) as u8) + (g.has_arc(v, q) as u8)
    };
    let sources: Vec<usize> = (0..n).filter(|&k| kind(k) == 2).collect();
    let sinks: Vec<usize> = (0..n).filter(|&k| kind(k) == 0).collect();
    if sources.len() != 2 || sinks.len() != 2 {
        return Vec::new();
    }
    sinks
        .iter()
        .filter(|&&k| sources.contains(&((k + 1) % n)) && sources.contains(&((k + n - 1) % n)))
        .map(|&k| {
            let sub = (0..n)
                .filter(|&j| j != k && !sources.contains(&j))
                .map(|j| c[j])
                .collect();
            (c[k], sub)
        })
        .collect()
}

fn is_directed_cycle(g: &OrientedGraph, c: &[usize]) -> bool {
    !c.is_empty() && distinct(c) && (0..c.len()).all(|i| g.has_arc(c[i], c[(i + 1) % c.len()]))
}

pub fn is_constraint_violation(g: &OrientedGraph, v: &ConstraintViolation) -> bool {
    let u = g.underlying();
    let Some(parts) = v.witness.iter().map(|p| idx(&u, p)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let set = |ps: &[&Vec<usize>]| -> BTreeSet<usize> { ps.iter().flat_map(|p| p.iter().copied()).collect() };
    match (v.lemma, parts.as_slice()) {
        (Lemma::DirectedCycle, [c]) => is_directed_cycle(g, c),
        (Lemma::Hole, [h]) => chordless_cycle(&u, h) && pivots(g, h).is_empty(),
        (Lemma::Dumbbell, [h, p, h2]) => {
            let (Some(&x), Some(&x2)) = (p.first(), p.last()) else {
                return false;
            };
            if !chordless_cycle(&u, h) || !chordless_cycle(&u, h2) || !distinct(p) {
                return false;
            }
            let hs: BTreeSet<usize> = h.iter().copied().collect();
            let hs2: BTreeSet<usize> = h2.iter().copied().collect();
            let ps: BTreeSet<usize> = p.iter().copied().collect();
            let shape = hs.intersection(&ps).eq([x].iter())
                && hs2.intersection(&ps).eq([x2].iter())
                && hs.intersection(&hs2).copied().collect::<BTreeSet<_>>()
                    == [x].into_iter().filter(|&a| a == x2).collect();
            let mut want: BTreeSet<(usize, usize)> = cycle_edges(h).collect();
            want.extend(cycle_edges(h2));
            want.extend(path_edges(p));
            let sub = |c: &[usize], z: usize| {
                let ps = pivots(g, c);
                !ps.is_empty() && ps.iter().all(|(_, s)| s.contains(&z))
            };
            shape && edges_within(&u, &set(&[h, p, h2])) == want && sub(h, x) && sub(h2, x2)
        }
        (Lemma::Domino, [h1, h2]) => {
            if !chordless_cycle(&u, h1) || !chordless_cycle(&u, h2) {
                return false;
            }
            let s1: BTreeSet<usize> = h1.iter().copied().collect();
            let s2: BTreeSet<usize> = h2.iter().copied().collect();
            let common: Vec<usize> = s1.intersection(&s2).copied().collect();
            let [x, y] = common[..] else { return false };
            let mut want: BTreeSet<(usize, usize)> = cycle_edges(h1).collect();
            want.extend(cycle_edges(h2));
            if !u.has_edge(x, y) || edges_within(&u, &set(&[h1, h2])) != want {
                return false;
            }
            let (p1, p2) = (pivots(g, h1), pivots(g, h2));
            if p1.is_empty() || p2.is_empty() {
                return false;
            }
            let holds = |a: &[(usize, BTreeSet<usize>)], b: &[(usize, BTreeSet<usize>)], z: usize| {
                a.iter().any(|(p, _)| *p == z) && b.iter().any(|(_, s)| s.contains(&z))
            };
            ![x, y].iter().any(|&z| holds(&p1, &p2, z) || holds(&p2, &p1, z))
        }
        (Lemma::Theta, [q1, q2, q3]) => {
            let ends = |q: &Vec<usize>| (q.first().copied(), q.last().copied());
            let (Some(a), Some(b)) = ends(q1) else { return false };
            if ends(q2) != (Some(a), Some(b)) || ends(q3) != (Some(a), Some(b)) {
                return false;
            }
            if [q1, q2, q3].iter().any(|q| q.len() < 4 || !distinct(q)) {
                return false;
            }
            let all = set(&[q1, q2, q3]);
            if all.len() != q1.len() + q2.len() + q3.len() - 4 {
                return false;
            }
            let mut want: BTreeSet<(usize, usize)> = path_edges(q1).collect();
            want.extend(path_edges(q2));
            want.extend(path_edges(q3));
            if edges_within(&u, &all) != want {
                return false;
            }
            let hole = |x: &Vec<usize>, y: &Vec<usize>| -> Vec<usize> {
                x.iter()
                    .copied()
                    .chain(y[1..y.len() - 1].iter().rev().copied())
                    .collect()
            };
            let holes = [hole(q1, q2), hole(q2, q3), hole(q3, q1)];
            holes.iter().any(|h| {
                let ps = pivots(g, h);
                !ps.is_empty() && ps.iter().all(|(v, _)| *v != a && *v != b)
            })
        }
        _ => false,
    }
}
