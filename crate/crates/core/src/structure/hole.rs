use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{join_labels, OrientedGraph, VertexId};
use crate::holes::{is_hole, Hole};
use crate::{Error, Result};

/// Special vertices of a chandelier-oriented hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleAnalysis {
    pub pivot: VertexId,
    pub antennas: (VertexId, VertexId),
    pub bottom: VertexId,
    pub subordinate: BTreeSet<VertexId>,
}

/// How a hole is oriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoleOrientation {
    /// One analysis per admissible pivot, sorted by pivot label.
    Chandelier(Vec<HoleAnalysis>),
    NotChandelier,
}

impl HoleOrientation {
    pub fn is_chandelier(&self) -> bool {
        matches!(self, HoleOrientation::Chandelier(_))
    }
}

/// `(pivot, antenna, antenna, bottom)` candidates for the hole `cycle` (as
/// indices of `g`), empty when the orientation is not a chandelier.
pub(crate) fn hole_orientation_idx(g: &OrientedGraph, cycle: &[usize]) -> Vec<[usize; 4]> {
    let n = cycle.len();
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for k in 0..n {
        let v = cycle[k];
        let prev = cycle[(k + n - 1) % n];
        let next = cycle[(k + 1) % n];
        match (g.has_arc(v, prev), g.has_arc(v, next)) {
            (true, true) => sources.push(v),
            (false, false) => sinks.push(v),
            _ => {}
        }
    }
    let mut out = Vec::new();
    if sources.len() != 2 || sinks.len() != 2 {
        return out;
    }
    let (a, b) = (sources[0], sources[1]);
    for (p, bottom) in [(sinks[0], sinks[1]), (sinks[1], sinks[0])] {
        if g.has_arc(a, p) && g.has_arc(b, p) {
            out.push([p, a, b, bottom]);
        }
    }
    out.sort_by(|x, y| g.label(x[0]).cmp(g.label(y[0])));
    out
}

/// Classifies the orientation `g` induces on the hole `h`.
pub fn analyze_hole(g: &OrientedGraph, h: &Hole) -> Result<HoleOrientation> {
    let u = g.underlying();
    let idx = h.indices(&u)?;
    if !is_hole(&u, &idx) {
        return Err(Error::NotAHole(join_labels(h.vertices())));
    }
    let cands = hole_orientation_idx(g, &idx);
    if cands.is_empty() {
        return Ok(HoleOrientation::NotChandelier);
    }
    let analyses = cands
        .into_iter()
        .map(|[p, a, b, bottom]| {
            let (a, b) = (g.label(a).clone(), g.label(b).clone());
            let antennas = if a <= b { (a, b) } else { (b, a) };
            let subordinate = idx
                .iter()
                .map(|&i| g.label(i).clone())
                .filter(|v| *v != *g.label(p) && *v != antennas.0 && *v != antennas.1)
                .collect();
            HoleAnalysis {
                pivot: g.label(p).clone(),
                antennas,
                bottom: g.label(bottom).clone(),
                subordinate,
            }
        })
        .collect();
    Ok(HoleOrientation::Chandelier(analyses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, random_derivation};
    use crate::graph::vid;
    use crate::holes::enumerate_holes;
    use crate::tree::derive;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arcs(a: &[(&str, &str)]) -> OrientedGraph {
        OrientedGraph::from_arcs(a.iter().copied()).unwrap()
    }

    fn hole(g: &OrientedGraph, c: &[&str]) -> Hole {
        let c: Vec<VertexId> = c.iter().map(|s| vid(s)).collect();
        Hole::new(&g.underlying(), &c).unwrap()
    }

    #[test]
    fn oriented_c4() {
        let g = arcs(&[("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")]);
        let HoleOrientation::Chandelier(a) = analyze_hole(&g, &hole(&g, &["u", "x", "v", "y"])).unwrap() else {
            panic!("expected a chandelier");
        };
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].pivot, vid("x"));
        assert_eq!(a[0].bottom, vid("y"));
        assert_eq!(a[0].antennas, (vid("u"), vid("v")));
        assert_eq!(a[0].subordinate, [vid("y")].into_iter().collect());
        assert_eq!(a[1].pivot, vid("y"));
    }

    #[test]
    fn directed_c4() {
        let g = arcs(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let r = analyze_hole(&g, &hole(&g, &["a", "b", "c", "d"])).unwrap();
        assert_eq!(r, HoleOrientation::NotChandelier);
    }

    #[test]
    fn rejects_non_hole() {
        let g = arcs(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("e", "a")]);
        let other = arcs(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]);
        let h = hole(&g, &["a", "b", "c", "d"]);
        assert!(matches!(analyze_hole(&other, &h), Err(Error::NotAHole(_))));
    }

    // Chandelier iff the sink between the two sources on one side is at
    // distance one from both.
    #[test]
    fn c6_two_source_orientations() {
        let c6 = gen_cycle(6).unwrap();
        let edges = c6.edges();
        let cyc: Vec<usize> = (0..6).map(|i| c6.index_of(&alloc::format!("c{i}")).unwrap()).collect();
        let mut seen = 0;
        for mask in 0u32..64 {
            let g = OrientedGraph::orient(&c6, |i, j| {
                let k = edges.iter().position(|&e| e == (i.min(j), i.max(j))).unwrap();
                (mask >> k & 1 == 1) == (i < j)
            });
            let srcs: Vec<usize> = (0..6).filter(|&k| g.is_source(cyc[k])).collect();
            if srcs.len() != 2 {
                continue;
            }
            seen += 1;
            let d = srcs[1] - srcs[0];
            let gap = d.min(6 - d);
            let expect = gap == 2;
            let got = !hole_orientation_idx(&g, &cyc).is_empty();
            assert_eq!(got, expect, "mask {mask}");
        }
        // 6 pairs at gap 2 with 3 sink placements, 3 pairs at gap 3 with 4
        assert_eq!(seen, 30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn derived_holes_are_chandeliers(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_derivation(&mut rng, 12);
            let g = derive(&d).unwrap();
            for h in enumerate_holes(&g.underlying(), 16).unwrap() {
                let r = analyze_hole(&g, &h).unwrap();
                prop_assert!(r.is_chandelier(), "hole {}", h);
                if let HoleOrientation::Chandelier(a) = r {
                    for x in a {
                        prop_assert_eq!(x.subordinate.len(), h.len() - 3);
                        prop_assert!(x.subordinate.contains(&x.bottom));
                    }
                }
            }
        }
    }
}
