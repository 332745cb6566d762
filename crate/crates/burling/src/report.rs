//! The structural report printed by `burling analyze`.

use burling_core::holes::enumerate_holes;
use burling_core::recognition::{RecognizeOptions, Verdict};
use burling_core::structure::{
    analyze_hole, full_in_star_cutsets, full_star_cutsets, top_set, HoleOrientation, StarCutset,
};
use burling_core::tree::derive;
use burling_core::{OrientedGraph, VertexId};

use crate::format::AnyGraph;
use crate::search::{recognize, recognize_oriented};
use crate::text::Writer;
use crate::Result;

fn joined<'a>(vs: impl IntoIterator<Item = &'a VertexId>) -> String {
    vs.into_iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ")
}

fn cutsets(w: &mut Writer, title: &str, cs: &[StarCutset]) {
    w.line(format!("{title}:"));
    w.nest(|w| {
        for c in cs {
            w.line(format!("center: {}", c.center));
            w.nest(|w| {
                w.line(format!("removed: {}", joined(&c.removed)));
                c.components
                    .iter()
                    .for_each(|p| w.line(format!("component: {}", joined(p))));
            });
        }
    });
}

/// Holes with their special vertices, star cutsets and, when the graph is
/// recognized as Burling, the top-set of the certifying derivation. An
/// undirected graph is analyzed under the orientation of that derivation.
pub fn analyze(g: &AnyGraph, opts: &RecognizeOptions) -> Result<String> {
    let u = g.underlying();
    let holes = enumerate_holes(&u, opts.limits.hole_budget)?;
    let outcome = match g {
        AnyGraph::Undirected(g) => recognize(g, opts),
        AnyGraph::Directed(g) => recognize_oriented(g, opts),
    };
    let mut w = Writer::default();
    w.line(format!(
        "kind: {}",
        if matches!(g, AnyGraph::Directed(_)) {
            "directed"
        } else {
            "undirected"
        }
    ));
    w.line(format!("vertices: {}", u.vertex_count()));
    w.line(format!("edges: {}", u.edge_count()));
    let derivation = match outcome {
        Ok(o) => {
            match &o.verdict {
                Verdict::NotBurling(r) => w.line(format!("verdict: NOT_BURLING {}", r.tag())),
                v => w.line(format!("verdict: {}", v.tag())),
            }
            match o.verdict {
                Verdict::Burling(d) => Some(d),
                _ => None,
            }
        }
        Err(e) if e.is_budget() => {
            w.line(format!("verdict: UNDECIDED ({e})"));
            None
        }
        Err(e) => return Err(e),
    };
    let orientation: Option<OrientedGraph> = match (g, &derivation) {
        (AnyGraph::Directed(g), _) => Some(g.clone()),
        (AnyGraph::Undirected(_), Some(d)) => Some(derive(d)?),
        _ => None,
    };
    if let (AnyGraph::Undirected(_), Some(o)) = (g, &orientation) {
        w.line("orientation:");
        w.embed(&crate::format::write_graph(&AnyGraph::Directed(o.clone())));
    }
    w.line(format!("holes: {}", holes.len()));
    let mut analyses = Vec::new();
    for h in &holes {
        analyses.push(match &orientation {
            Some(o) => Some(analyze_hole(o, h)?),
            None => None,
        });
    }
    w.nest(|w| {
        for (h, a) in holes.iter().zip(analyses) {
            w.line(format!("hole: {}", joined(h.vertices())));
            match a {
                None => {}
                Some(HoleOrientation::NotChandelier) => w.nest(|w| w.line("orientation: not_chandelier")),
                Some(HoleOrientation::Chandelier(cands)) => w.nest(|w| {
                    for a in cands {
                        w.line(format!("pivot: {}", a.pivot));
                        w.nest(|w| {
                            w.line(format!("antennas: {} {}", a.antennas.0, a.antennas.1));
                            w.line(format!("bottom: {}", a.bottom));
                            w.line(format!("subordinate: {}", joined(&a.subordinate)));
                        });
                    }
                }),
            }
        }
    });
    cutsets(&mut w, "full_star_cutsets", &full_star_cutsets(&u));
    if let Some(o) = &orientation {
        cutsets(&mut w, "full_in_star_cutsets", &full_in_star_cutsets(o));
    }
    if let Some(d) = &derivation {
        let r = top_set(d)?;
        w.line(format!("top_set: {}", joined(&r.top_set)));
        w.line(format!("pivots: {}", joined(&r.pivots)));
        w.line(format!("antennas: {}", joined(&r.antennas)));
        w.line("top_ancestors:");
        w.nest(|w| r.top_ancestor.iter().for_each(|(v, a)| w.line(format!("{v}: {a}"))));
    }
    Ok(w.finish())
}
