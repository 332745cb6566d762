use alloc::boxed::Box;
use alloc::vec::Vec;

use super::cutset::{closed_in, split};
use super::forest::chandelier_witness_idx;
use crate::graph::{OrientedGraph, VertexId};

/// A node of the decomposition by degree-at-most-one vertices, oriented
/// chandeliers and full in-star cutsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionNode {
    /// At most one vertex.
    Leaf { vertices: Vec<VertexId> },
    /// `vertex` has degree at most one and is removed.
    Deg1 {
        vertex: VertexId,
        child: Box<DecompositionNode>,
    },
    /// The closed in-neighborhood of `center` disconnects the graph; each
    /// child is a component together with `removed`.
    Cutset {
        center: VertexId,
        removed: Vec<VertexId>,
        children: Vec<DecompositionNode>,
    },
    Chandelier {
        pivot: VertexId,
        bottom: VertexId,
        vertices: Vec<VertexId>,
    },
    /// None of the reductions applies.
    Failure { vertices: Vec<VertexId> },
}

impl DecompositionNode {
    pub fn kind(&self) -> &'static str {
        match self {
            DecompositionNode::Leaf { .. } => "leaf",
            DecompositionNode::Deg1 { .. } => "deg1",
            DecompositionNode::Cutset { .. } => "cutset",
            DecompositionNode::Chandelier { .. } => "chandelier",
            DecompositionNode::Failure { .. } => "failure",
        }
    }

    pub fn children(&self) -> Vec<&DecompositionNode> {
        match self {
            DecompositionNode::Deg1 { child, .. } => alloc::vec![&**child],
            DecompositionNode::Cutset { children, .. } => children.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// All failure nodes, in preorder.
    pub fn failures(&self) -> Vec<&DecompositionNode> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(n) = stack.pop() {
            if matches!(n, DecompositionNode::Failure { .. }) {
                out.push(n);
            }
            let mut ch = n.children();
            ch.reverse();
            stack.extend(ch);
        }
        out
    }

    pub fn has_failure(&self) -> bool {
        !self.failures().is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }
}

fn labels(g: &OrientedGraph, idx: &[usize]) -> Vec<VertexId> {
    let mut l: Vec<VertexId> = idx.iter().map(|&i| g.label(i).clone()).collect();
    l.sort();
    l
}

/// Decomposes `g`, preferring at each node a vertex of degree at most one,
/// then an oriented chandelier, then the full in-star cutset with the
/// smallest center label.
pub fn decompose(g: &OrientedGraph) -> DecompositionNode {
    let n = g.vertex_count();
    let all: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return DecompositionNode::Leaf {
            vertices: labels(g, &all),
        };
    }
    let order = g.sorted_indices();
    if let Some(&v) = order.iter().find(|&&v| g.neighbors(v).len() <= 1) {
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != v).collect();
        return DecompositionNode::Deg1 {
            vertex: g.label(v).clone(),
            child: Box::new(decompose(&g.induced(&rest))),
        };
    }
    if let Some((p, b)) = chandelier_witness_idx(g, &alloc::vec![true; n]) {
        return DecompositionNode::Chandelier {
            pivot: g.label(p).clone(),
            bottom: g.label(b).clone(),
            vertices: labels(g, &all),
        };
    }
    for &v in &order {
        let s = closed_in(g, v);
        let Some(comps) = split(n, &s, |a| g.components_of(a)) else {
            continue;
        };
        let mut children: Vec<(Vec<VertexId>, DecompositionNode)> = comps
            .into_iter()
            .map(|mut c| {
                c.extend(s.iter().copied());
                c.sort_unstable();
                (labels(g, &c), decompose(&g.induced(&c)))
            })
            .collect();
        children.sort_by(|a, b| a.0.cmp(&b.0));
        return DecompositionNode::Cutset {
            center: g.label(v).clone(),
            removed: labels(g, &s),
            children: children.into_iter().map(|(_, c)| c).collect(),
        };
    }
    DecompositionNode::Failure {
        vertices: labels(g, &all),
    }
}
