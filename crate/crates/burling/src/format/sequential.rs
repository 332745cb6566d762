use std::collections::BTreeMap;

use burling_core::sequential::SequentialDecomposition;
use burling_core::{OrientedGraphBuilder, VertexId};

use crate::text::{parse_blocks, Node, Writer};
use crate::{Error, Result};

fn token(line: usize, s: &str) -> Result<VertexId> {
    VertexId::new(s).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a sequential decomposition document:
///
/// ```text
/// base:
///   arc u x
///   vertex y
/// links:
///   u: a b
/// child u:
///   base:
///     ...
/// ```
pub fn parse_sequential(text: &str) -> Result<SequentialDecomposition> {
    let sd = parse_sequential_nodes(&parse_blocks(text, 0)?)?;
    sd.validate()?;
    Ok(sd)
}

pub(crate) fn parse_sequential_nodes(nodes: &[Node]) -> Result<SequentialDecomposition> {
    let mut sd = SequentialDecomposition::empty();
    let mut seen_base = false;
    for n in nodes {
        if let Some(v) = n.text.strip_prefix("child ").and_then(|r| r.strip_suffix(':')) {
            let v = token(n.line, v)?;
            if sd
                .children
                .insert(v.clone(), parse_sequential_nodes(&n.children)?)
                .is_some()
            {
                return Err(Error::parse(n.line, format!("second child for {v}")));
            }
            continue;
        }
        match n.text.as_str() {
            "base:" if !seen_base => {
                seen_base = true;
                let mut b = OrientedGraphBuilder::new();
                for e in &n.children {
                    e.leaf()?;
                    let parts: Vec<&str> = e.text.split(' ').collect();
                    let res = match parts.as_slice() {
                        ["vertex", v] => {
                            b.vertex(&token(e.line, v)?);
                            Ok(())
                        }
                        ["arc", u, v] => b.arc(&token(e.line, u)?, &token(e.line, v)?),
                        _ => return Err(Error::parse(e.line, "expected `arc <u> <v>` or `vertex <u>`")),
                    };
                    res.map_err(|err| Error::parse(e.line, err.to_string()))?;
                }
                sd.base = b.build();
            }
            "links:" => {
                let mut links = BTreeMap::new();
                for e in &n.children {
                    e.leaf()?;
                    let Some((u, list)) = e.text.split_once(':') else {
                        return Err(Error::parse(e.line, "expected `<u>: <w1> ... <wk>`"));
                    };
                    let list = list
                        .split_whitespace()
                        .map(|t| token(e.line, t))
                        .collect::<Result<Vec<_>>>()?;
                    links.insert(token(e.line, u.trim())?, list);
                }
                sd.links = links;
            }
            _ => return Err(Error::parse(n.line, "expected `base:`, `links:` or `child <v>:`")),
        }
    }
    Ok(sd)
}

pub(crate) fn write_sequential_to(w: &mut Writer, sd: &SequentialDecomposition) {
    let b = &sd.base;
    w.line("base:");
    w.nest(|w| {
        let mut lone: Vec<&VertexId> = (0..b.vertex_count())
            .filter(|&i| b.neighbors(i).is_empty())
            .map(|i| b.label(i))
            .collect();
        lone.sort();
        lone.iter().for_each(|v| w.line(format!("vertex {v}")));
        b.arc_labels().iter().for_each(|(u, v)| w.line(format!("arc {u} {v}")));
    });
    if !sd.links.is_empty() {
        w.line("links:");
        w.nest(|w| {
            for (u, list) in &sd.links {
                let l: Vec<&str> = list.iter().map(|x| x.as_str()).collect();
                w.line(format!("{u}: {}", l.join(" ")));
            }
        });
    }
    for (v, child) in &sd.children {
        w.line(format!("child {v}:"));
        w.nest(|w| write_sequential_to(w, child));
    }
}

pub fn write_sequential(sd: &SequentialDecomposition) -> String {
    let mut w = Writer::default();
    write_sequential_to(&mut w, sd);
    w.finish()
}
