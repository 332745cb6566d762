use std::collections::BTreeSet;

use burling_core::{BurlingTree, Derivation, VertexId};

use crate::text::{parse_blocks, Node, Writer};
use crate::{Error, Result};

fn token(line: usize, s: &str) -> Result<VertexId> {
    VertexId::new(s).map_err(|e| Error::parse(line, e.to_string()))
}

fn tokens(line: usize, s: &str) -> Result<Vec<VertexId>> {
    s.split_whitespace().map(|t| token(line, t)).collect()
}

fn pair(n: &Node) -> Result<(VertexId, VertexId)> {
    n.leaf()?;
    match tokens(n.line, &n.text)?.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Error::parse(n.line, "expected `<parent> <child>`")),
    }
}

/// Parses a tree file into a derivation. The tree is assembled but not
/// checked against the definition.
pub fn parse_tree(text: &str) -> Result<Derivation> {
    parse_tree_nodes(&parse_blocks(text, 0)?, 1)
}

pub(crate) fn parse_tree_nodes(nodes: &[Node], start: usize) -> Result<Derivation> {
    let mut it = nodes.iter().peekable();
    let mut next = |key: &str, optional: bool| -> Result<Option<&Node>> {
        match it.peek() {
            Some(n) if n.field().is_some_and(|(k, _)| k == key) => Ok(it.next()),
            _ if optional => Ok(None),
            Some(n) => Err(Error::parse(n.line, format!("expected `{key}:`"))),
            None => Err(Error::parse(start, format!("missing `{key}:`"))),
        }
    };
    let root = next("root", false)?.expect("required field");
    let root = token(root.line, root.leaf()?.expect_field("root")?)?;
    let list = |n: &Node, key: &str| -> Result<Vec<Node>> {
        if !n.expect_field(key)?.is_empty() {
            return Err(Error::parse(
                n.line,
                format!("list items of `{key}:` go on their own lines"),
            ));
        }
        Ok(n.children.clone())
    };
    let edges = list(next("edges", false)?.expect("required field"), "edges")?;
    let last_born = list(next("last_born", false)?.expect("required field"), "last_born")?;
    let choose = match next("choose", true)? {
        Some(n) => list(n, "choose")?,
        None => Vec::new(),
    };
    let kept_node = next("kept", false)?.expect("required field");
    let kept = list(kept_node, "kept")?;
    if let Some(extra) = it.next() {
        return Err(Error::parse(extra.line, "unexpected entry after `kept:`"));
    }
    let edges = edges.iter().map(pair).collect::<Result<Vec<_>>>()?;
    let last_born = last_born.iter().map(pair).collect::<Result<Vec<_>>>()?;
    let mut choose_lists = Vec::new();
    for n in &choose {
        n.leaf()?;
        let Some((v, list)) = n.text.split_once(':') else {
            return Err(Error::parse(n.line, "expected `<v>: <w1> ... <wk>`"));
        };
        choose_lists.push((token(n.line, v.trim())?, tokens(n.line, list)?));
    }
    let mut kept_set = BTreeSet::new();
    for n in &kept {
        n.leaf()?;
        if !kept_set.insert(token(n.line, &n.text)?) {
            return Err(Error::parse(n.line, format!("{} kept twice", n.text)));
        }
    }
    let tree = BurlingTree::from_parts(root, edges, last_born, choose_lists)?;
    Ok(Derivation::new(tree, kept_set))
}

pub(crate) fn write_tree_to(w: &mut Writer, d: &Derivation) {
    let t = &d.tree;
    w.line(format!("root: {}", t.root()));
    let mut edges = t.edges();
    edges.sort();
    w.line("edges:");
    w.nest(|w| edges.iter().for_each(|(p, c)| w.line(format!("{p} {c}"))));
    let mut lb: Vec<_> = t.last_born_pairs().collect();
    lb.sort();
    w.line("last_born:");
    w.nest(|w| lb.iter().for_each(|(p, c)| w.line(format!("{p} {c}"))));
    let mut choose: Vec<_> = t.choose_entries().filter(|(_, l)| !l.is_empty()).collect();
    choose.sort();
    if !choose.is_empty() {
        w.line("choose:");
        w.nest(|w| {
            for (v, list) in &choose {
                let l: Vec<&str> = list.iter().map(|x| x.as_str()).collect();
                w.line(format!("{v}: {}", l.join(" ")));
            }
        });
    }
    w.line("kept:");
    w.nest(|w| d.kept.iter().for_each(|v| w.line(v.as_str())));
}

/// Serializes a derivation. Lists are sorted by label; each choose line
/// keeps its branch order.
pub fn write_tree(d: &Derivation) -> String {
    let mut w = Writer::default();
    write_tree_to(&mut w, d);
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use burling_core::generators::{figure_square_c4, random_derivation};
    use burling_core::tree::{derive, validate_tree};
    use rand::SeedableRng;

    #[test]
    fn square_round_trip() {
        let d = figure_square_c4();
        let text = write_tree(&d);
        assert!(text.starts_with("root: "));
        assert_eq!(parse_tree(&text).unwrap(), d);
    }

    #[test]
    fn layout() {
        let text =
            "root: r\nedges:\n  b c\n  r a\n  r b\nlast_born:\n  b c\n  r b\nchoose:\n  a: b c\nkept:\n  a\n  c\n";
        let d = parse_tree(text).unwrap();
        assert!(validate_tree(&d.tree).is_empty());
        assert_eq!(derive(&d).unwrap().arc_count(), 1);
        assert_eq!(write_tree(&d), text);
    }

    #[test]
    fn rejects() {
        for (doc, line) in [
            ("edges:\nroot: r\n", 1),
            ("root: r\nedges:\nlast_born:\nkept:\nextra: 1\n", 5),
            ("root: r\nedges:\n  r\nlast_born:\nkept:\n", 3),
            ("root: r\nedges: r a\nlast_born:\nkept:\n", 2),
            ("root: r\nedges:\nlast_born:\nkept:\n  a\n  a\n", 6),
            ("root: r\nedges:\nlast_born:\nchoose:\n  a b\nkept:\n", 5),
            ("root: r\nlast_born:\nedges:\nkept:\n", 2),
        ] {
            match parse_tree(doc) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{doc:?}"),
                other => panic!("{doc:?}: {other:?}"),
            }
        }
        assert!(parse_tree("root: r\nedges:\n  r a\n  s a\nlast_born:\nkept:\n").is_err());
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = random_derivation(&mut rng, 12);
            let text = write_tree(&d);
            let back = parse_tree(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(write_tree(&back), text);
        }
    }
}
