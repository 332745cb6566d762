use burling_core::structure::DecompositionNode;
use burling_core::VertexId;

use crate::text::Writer;

fn joined(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ")
}

fn node(w: &mut Writer, n: &DecompositionNode) {
    w.line(format!("{}:", n.kind()));
    w.nest(|w| match n {
        DecompositionNode::Leaf { vertices } | DecompositionNode::Failure { vertices } => {
            w.line(format!("vertices: {}", joined(vertices)))
        }
        DecompositionNode::Deg1 { vertex, child } => {
            w.line(format!("vertex: {vertex}"));
            node(w, child);
        }
        DecompositionNode::Cutset {
            center,
            removed,
            children,
        } => {
            w.line(format!("center: {center}"));
            w.line(format!("removed: {}", joined(removed)));
            children.iter().for_each(|c| node(w, c));
        }
        DecompositionNode::Chandelier {
            pivot,
            bottom,
            vertices,
        } => {
            w.line(format!("pivot: {pivot}"));
            w.line(format!("bottom: {bottom}"));
            w.line(format!("vertices: {}", joined(vertices)));
        }
    });
}

/// Serializes a decomposition tree. Each node is a `<kind>:` entry whose
/// nested lines hold its fields followed by its child nodes.
pub fn write_decomposition(root: &DecompositionNode) -> String {
    let mut w = Writer::default();
    node(&mut w, root);
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use burling_core::generators::figure_square_k33;
    use burling_core::structure::decompose;
    use burling_core::tree::derive;

    #[test]
    fn k33_document() {
        let g = derive(&figure_square_k33()).unwrap();
        let doc = write_decomposition(&decompose(&g));
        assert!(!doc.contains("failure:"));
        let kinds = ["leaf:", "deg1:", "cutset:", "chandelier:"];
        let first = doc.lines().next().unwrap();
        assert!(kinds.contains(&first), "{doc}");
        assert!(crate::text::parse_blocks(&doc, 0).is_ok());
    }

    #[test]
    fn failure_node() {
        let n = DecompositionNode::Failure {
            vertices: vec![VertexId::new("a").unwrap(), VertexId::new("b").unwrap()],
        };
        assert_eq!(write_decomposition(&n), "failure:\n  vertices: a b\n");
    }
}
