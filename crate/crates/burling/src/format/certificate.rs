use burling_core::recognition::{ConstraintViolation, FlowerWitness, Lemma, Reason, Verdict, WheelWitness};
use burling_core::sequential::{seq_from_tree, SearchStats, SequentialDecomposition};
use burling_core::{Graph, Hole, VertexId};

use super::graph::{parse_graph_at, write_graph, AnyGraph};
use super::sequential::{parse_sequential_nodes, write_sequential_to};
use super::tree::{parse_tree_nodes, write_tree_to};
use crate::text::{parse_blocks, render, Node, Writer};
use crate::{Error, Result};

pub const CERT_VERSION: u32 = 1;

/// A recognition verdict with the counters of the search behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub stats: SearchStats,
    /// For positive verdicts, the decomposition read off the tree.
    pub sequential: Option<SequentialDecomposition>,
}

impl Certificate {
    /// Wraps a decided verdict. Fails on [`Verdict::Undecided`]. An
    /// exhausted search keeps its own counters.
    pub fn new(verdict: Verdict, stats: SearchStats) -> Result<Self> {
        let stats = match &verdict {
            Verdict::NotBurling(Reason::Exhausted(s)) => *s,
            _ => stats,
        };
        let sequential = match &verdict {
            Verdict::Burling(d) => Some(seq_from_tree(d)?),
            Verdict::NotBurling(_) => None,
            Verdict::Undecided => {
                return Err(burling_core::Error::Precondition("an undecided verdict has no certificate".into()).into())
            }
        };
        Ok(Certificate {
            verdict,
            stats,
            sequential,
        })
    }
}

fn joined(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ")
}

fn write_witness(w: &mut Writer, r: &Reason) {
    match r {
        Reason::Triangle(t) => w.line(format!("triangle: {}", joined(t))),
        Reason::Wheel(x) => {
            w.line(format!("rim: {}", joined(x.rim.vertices())));
            w.line(format!("center: {}", x.center));
        }
        Reason::Flower(f) => {
            w.line(format!("core: {}", joined(f.core.vertices())));
            f.petals
                .iter()
                .for_each(|p| w.line(format!("petal: {}", joined(p.vertices()))));
        }
        Reason::FilterFailure(h) => {
            w.line("piece:");
            w.embed(&write_graph(&AnyGraph::Undirected(h.clone())));
        }
        Reason::OrientationConstraint(v) => {
            w.line(format!("lemma: {}", v.lemma.id()));
            v.witness.iter().for_each(|p| w.line(format!("part: {}", joined(p))));
        }
        Reason::Exhausted(_) => {}
    }
}

/// Serializes a certificate.
pub fn write_certificate(c: &Certificate) -> String {
    let mut w = Writer::default();
    w.line(format!("cert_version: {CERT_VERSION}"));
    match &c.verdict {
        Verdict::Burling(d) => {
            w.line("result: burling");
            w.line("reason: none");
            w.line("tree:");
            w.nest(|w| write_tree_to(w, d));
            if let Some(sd) = &c.sequential {
                w.line(format!("depth: {}", sd.depth()));
                w.line("sequential:");
                w.nest(|w| write_sequential_to(w, sd));
            }
        }
        Verdict::NotBurling(r) => {
            w.line("result: not_burling");
            w.line(format!("reason: {}", r.tag()));
            if !matches!(r, Reason::Exhausted(_)) {
                w.line("witness:");
                w.nest(|w| write_witness(w, r));
            }
        }
        Verdict::Undecided => w.line("result: undecided"),
    }
    w.line("stats:");
    w.nest(|w| {
        w.line(format!("orientations: {}", c.stats.orientations));
        w.line(format!("states: {}", c.stats.states));
        w.line(format!("base_choices: {}", c.stats.base_choices));
    });
    w.finish()
}

/// Whether `text` looks like a certificate rather than a tree file.
pub fn is_certificate(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("cert_version:"))
}

fn labels(n: &Node, v: &str) -> Result<Vec<VertexId>> {
    v.split_whitespace()
        .map(|t| VertexId::new(t).map_err(|e| Error::parse(n.line, e.to_string())))
        .collect()
}

fn hole(host: &Graph, n: &Node, v: &str) -> Result<Hole> {
    Hole::new(host, &labels(n, v)?).map_err(|e| Error::parse(n.line, e.to_string()))
}

fn parse_witness(tag: &str, nodes: &[Node], host: &Graph, at: usize) -> Result<Reason> {
    let mut fields = Vec::new();
    for n in nodes {
        let Some((k, v)) = n.field() else {
            return Err(Error::parse(n.line, "expected `key: value`"));
        };
        fields.push((k, v, n));
    }
    let one = |key: &str| -> Result<(&str, &Node)> {
        let mut it = fields.iter().filter(|(k, _, _)| *k == key);
        match (it.next(), it.next()) {
            (Some((_, v, n)), None) => Ok((v, n)),
            _ => Err(Error::parse(at, format!("witness needs exactly one `{key}:`"))),
        }
    };
    let many = |key: &'static str| {
        fields
            .iter()
            .filter(move |(k, _, _)| *k == key)
            .map(|(_, v, n)| (*v, *n))
            .collect::<Vec<_>>()
    };
    Ok(match tag {
        "triangle" => {
            let (v, n) = one("triangle")?;
            let t: [VertexId; 3] = labels(n, v)?
                .try_into()
                .map_err(|_| Error::parse(n.line, "a triangle has three vertices"))?;
            Reason::Triangle(t)
        }
        "wheel" => {
            let (rim, rn) = one("rim")?;
            let (center, cn) = one("center")?;
            let center = labels(cn, center)?;
            let [center] = <[VertexId; 1]>::try_from(center).map_err(|_| Error::parse(cn.line, "one center"))?;
            Reason::Wheel(WheelWitness {
                rim: hole(host, rn, rim)?,
                center,
            })
        }
        "flower" => {
            let (core, cn) = one("core")?;
            let petals = many("petal")
                .into_iter()
                .map(|(v, n)| hole(host, n, v))
                .collect::<Result<Vec<_>>>()?;
            Reason::Flower(FlowerWitness {
                core: hole(host, cn, core)?,
                petals,
            })
        }
        "filter" => {
            let (_, n) = one("piece")?;
            let start = n.children.first().map_or(n.line, |c| c.line);
            match parse_graph_at(&render(&n.children), start - 1)? {
                AnyGraph::Undirected(h) => Reason::FilterFailure(h),
                AnyGraph::Directed(_) => return Err(Error::parse(n.line, "the piece is an undirected graph")),
            }
        }
        "orientation" => {
            let (lemma, n) = one("lemma")?;
            let lemma =
                Lemma::from_id(lemma).ok_or_else(|| Error::parse(n.line, format!("unknown lemma {lemma:?}")))?;
            let witness = many("part")
                .into_iter()
                .map(|(v, n)| labels(n, v))
                .collect::<Result<Vec<_>>>()?;
            Reason::OrientationConstraint(ConstraintViolation { lemma, witness })
        }
        _ => return Err(Error::parse(at, format!("unknown reason {tag:?}"))),
    })
}

/// Parses a certificate. Witness holes are rebuilt against `host`, the
/// graph the certificate is about (its underlying graph if oriented).
pub fn parse_certificate(text: &str, host: &Graph) -> Result<Certificate> {
    let nodes = parse_blocks(text, 0)?;
    let mut it = nodes.iter();
    let mut next = |key: &str| -> Result<(&str, &Node)> {
        let n = it
            .next()
            .ok_or_else(|| Error::parse(text.lines().count(), format!("missing `{key}:`")))?;
        Ok((n.expect_field(key)?, n))
    };
    let (version, vn) = next("cert_version")?;
    if version != CERT_VERSION.to_string() {
        return Err(Error::parse(
            vn.line,
            format!("unsupported certificate version {version}"),
        ));
    }
    let (result, rn) = next("result")?;
    let (reason, reason_node) = next("reason")?;
    let mut sequential = None;
    let verdict = match result {
        "burling" => {
            let (_, tn) = next("tree")?;
            let d = parse_tree_nodes(&tn.children, tn.line)?;
            let (depth, dn) = next("depth")?;
            let (_, sn) = next("sequential")?;
            let sd = parse_sequential_nodes(&sn.children)?;
            if depth != sd.depth().to_string() {
                return Err(Error::parse(
                    dn.line,
                    format!("depth {depth} disagrees with the decomposition"),
                ));
            }
            sequential = Some(sd);
            Verdict::Burling(d)
        }
        "not_burling" if reason == "exhausted" => Verdict::NotBurling(Reason::Exhausted(SearchStats::default())),
        "not_burling" => {
            let (_, wn) = next("witness")?;
            Verdict::NotBurling(parse_witness(reason, &wn.children, host, reason_node.line)?)
        }
        _ => return Err(Error::parse(rn.line, format!("unknown result {result:?}"))),
    };
    let (_, sn) = next("stats")?;
    let mut stats = SearchStats::default();
    for n in &sn.children {
        let Some((k, v)) = n.field() else {
            return Err(Error::parse(n.line, "expected `key: value`"));
        };
        let v: usize = v
            .parse()
            .map_err(|_| Error::parse(n.line, format!("bad count {v:?}")))?;
        match k {
            "orientations" => stats.orientations = v,
            "states" => stats.states = v,
            "base_choices" => stats.base_choices = v,
            _ => return Err(Error::parse(n.line, format!("unknown counter {k:?}"))),
        }
    }
    if let Some(extra) = it.next() {
        return Err(Error::parse(extra.line, "unexpected entry after `stats:`"));
    }
    let verdict = match verdict {
        Verdict::NotBurling(Reason::Exhausted(_)) => Verdict::NotBurling(Reason::Exhausted(stats)),
        v => v,
    };
    Ok(Certificate {
        verdict,
        stats,
        sequential,
    })
}
