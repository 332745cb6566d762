use burling_core::{Graph, GraphBuilder, OrientedGraph, OrientedGraphBuilder, VertexId};

use crate::{Error, Result};

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(OrientedGraph),
}

impl AnyGraph {
    pub fn underlying(&self) -> Graph {
        match self {
            AnyGraph::Undirected(g) => g.clone(),
            AnyGraph::Directed(g) => g.underlying(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.vertex_count(),
            AnyGraph::Directed(g) => g.vertex_count(),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<OrientedGraph> for AnyGraph {
    fn from(g: OrientedGraph) -> Self {
        AnyGraph::Directed(g)
    }
}

enum Builder {
    Undirected(GraphBuilder),
    Directed(OrientedGraphBuilder),
}

fn label(line: usize, s: &str) -> Result<VertexId> {
    if s == "vertex" {
        return Err(Error::parse(line, "`vertex` is not a usable label"));
    }
    VertexId::new(s).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a graph file. Vertices are numbered in order of first
/// appearance.
pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    parse_graph_at(text, 0)
}

pub(crate) fn parse_graph_at(text: &str, offset: usize) -> Result<AnyGraph> {
    let mut b = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1 + offset;
        let l = raw.trim_end_matches('\r');
        if l.starts_with('#') || l.trim().is_empty() {
            continue;
        }
        let Some(b) = b.as_mut() else {
            b = Some(match l {
                "undirected" => Builder::Undirected(GraphBuilder::new()),
                "directed" => Builder::Directed(OrientedGraphBuilder::new()),
                _ => return Err(Error::parse(line, "expected header `directed` or `undirected`")),
            });
            continue;
        };
        let parts: Vec<&str> = l.split(' ').collect();
        let res = match (parts.as_slice(), b) {
            (["vertex", v], Builder::Undirected(b)) => {
                b.vertex(&label(line, v)?);
                Ok(())
            }
            (["vertex", v], Builder::Directed(b)) => {
                b.vertex(&label(line, v)?);
                Ok(())
            }
            ([u, v], Builder::Undirected(b)) => b.edge(&label(line, u)?, &label(line, v)?),
            ([u, v], Builder::Directed(b)) => b.arc(&label(line, u)?, &label(line, v)?),
            _ => return Err(Error::parse(line, "expected `<u> <v>` or `vertex <u>`")),
        };
        res.map_err(|e| Error::parse(line, e.to_string()))?;
    }
    match b {
        Some(Builder::Undirected(b)) => Ok(AnyGraph::Undirected(b.build())),
        Some(Builder::Directed(b)) => Ok(AnyGraph::Directed(b.build())),
        None => Err(Error::parse(offset + text.lines().count().max(1), "missing header")),
    }
}

/// Serializes a graph: isolated vertices first, then edges or arcs, each
/// group sorted by label.
pub fn write_graph(g: &AnyGraph) -> String {
    let (header, mut isolated, pairs) = match g {
        AnyGraph::Undirected(g) => (
            "undirected",
            (0..g.vertex_count())
                .filter(|&i| g.degree(i) == 0)
                .map(|i| g.label(i))
                .collect::<Vec<_>>(),
            g.edge_labels(),
        ),
        AnyGraph::Directed(g) => (
            "directed",
            (0..g.vertex_count())
                .filter(|&i| g.neighbors(i).is_empty())
                .map(|i| g.label(i))
                .collect(),
            g.arc_labels(),
        ),
    };
    isolated.sort();
    let mut out = format!("{header}\n");
    for v in isolated {
        out.push_str(&format!("vertex {v}\n"));
    }
    for (u, v) in pairs {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
