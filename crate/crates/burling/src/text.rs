//! Indentation-structured documents: each line is an entry, and lines
//! indented below it are its children.

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Node {
    pub line: usize,
    pub text: String,
    pub children: Vec<Node>,
}

impl Node {
    /// Splits `key: value`; the value may be empty.
    pub fn field(&self) -> Option<(&str, &str)> {
        let (k, v) = self.text.split_once(':')?;
        Some((k, v.trim()))
    }

    pub fn expect_field(&self, key: &str) -> Result<&str> {
        match self.field() {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(Error::parse(self.line, format!("expected `{key}:`"))),
        }
    }

    pub fn leaf(&self) -> Result<&Self> {
        match self.children.first() {
            Some(c) => Err(Error::parse(c.line, "unexpected nested entry")),
            None => Ok(self),
        }
    }
}

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

/// Parses `text`, skipping blank lines and `#` comments. Line numbers are
/// shifted by `offset`.
pub(crate) fn parse_blocks(text: &str, offset: usize) -> Result<Vec<Node>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1 + offset;
        let body = raw.trim_start_matches(' ');
        if body.starts_with('\t') {
            return Err(Error::parse(number, "tab in indentation"));
        }
        let body = body.trim_end();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        lines.push(Line {
            number,
            indent: raw.len() - raw.trim_start_matches(' ').len(),
            text: body,
        });
    }
    let mut pos = 0;
    let nodes = build(&lines, &mut pos, 0)?;
    if let Some(l) = lines.get(pos) {
        return Err(Error::parse(l.number, "inconsistent indentation"));
    }
    Ok(nodes)
}

fn build(lines: &[Line], pos: &mut usize, indent: usize) -> Result<Vec<Node>> {
    let mut out = Vec::new();
    while let Some(l) = lines.get(*pos) {
        if l.indent < indent {
            break;
        }
        if l.indent > indent {
            return Err(Error::parse(l.number, "inconsistent indentation"));
        }
        *pos += 1;
        let children = match lines.get(*pos) {
            Some(c) if c.indent > indent => build(lines, pos, c.indent)?,
            _ => Vec::new(),
        };
        out.push(Node {
            line: l.number,
            text: l.text.to_string(),
            children,
        });
    }
    Ok(out)
}

/// Writes nested documents with two spaces per level.
#[derive(Default)]
pub(crate) struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    pub fn line(&mut self, s: impl AsRef<str>) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    pub fn nest(&mut self, f: impl FnOnce(&mut Self)) {
        self.depth += 1;
        f(self);
        self.depth -= 1;
    }

    /// Appends a finished document one level deeper.
    pub fn embed(&mut self, doc: &str) {
        self.nest(|w| doc.lines().for_each(|l| w.line(l)));
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Re-renders the entries of `nodes` as a document, for formats that are
/// embedded in others.
pub(crate) fn render(nodes: &[Node]) -> String {
    let mut w = Writer::default();
    fn go(w: &mut Writer, nodes: &[Node]) {
        for n in nodes {
            w.line(&n.text);
            w.nest(|w| go(w, &n.children));
        }
    }
    go(&mut w, nodes);
    w.finish()
}
