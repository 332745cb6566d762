use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};

/// Outcome of [`classify_k4_subdivision`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K4Class {
    /// Branch vertices with `ab`, `ac` edges and `ad`, `bc` non-edges.
    Burling {
        a: VertexId,
        b: VertexId,
        c: VertexId,
        d: VertexId,
    },
    NotBurling,
    NotAK4Subdivision,
}

/// The four branch vertices, sorted by label, and the length of the path
/// between each pair, if `g` is a subdivision of `K4`.
fn branches(g: &Graph) -> Option<([usize; 4], [[usize; 4]; 4])> {
    let n = g.vertex_count();
    if !g.is_connected() || (0..n).any(|v| !matches!(g.degree(v), 2 | 3)) {
        return None;
    }
    let br: Vec<usize> = g.sorted_indices().into_iter().filter(|&v| g.degree(v) == 3).collect();
    let br: [usize; 4] = br.try_into().ok()?;
    let pos = |v: usize| br.iter().position(|&b| b == v);
    let mut len = [[0; 4]; 4];
    for (i, &s) in br.iter().enumerate() {
        for &first in g.neighbors(s) {
            let (mut prev, mut cur, mut l) = (s, first, 1);
            while pos(cur).is_none() {
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev)?;
                prev = cur;
                cur = next;
                l += 1;
            }
            let j = pos(cur)?;
            if j == i || len[i][j] != 0 {
                return None;
            }
            len[i][j] = l;
        }
    }
    Some((br, len))
}

/// Applies the dichotomy for subdivisions of `K4`: Burling exactly when the
/// branch vertices can be named `a, b, c, d` with `ab, ac` edges and
/// `ad, bc` non-edges.
pub fn classify_k4_subdivision(g: &Graph) -> K4Class {
    let Some((br, len)) = branches(g) else {
        return K4Class::NotAK4Subdivision;
    };
    let edge = |i: usize, j: usize| len[i][j] == 1;
    for a in 0..4 {
        for b in 0..4 {
            for c in b + 1..4 {
                if a == b || a == c {
                    continue;
                }
                let d = 6 - a - b - c;
                if edge(a, b) && edge(a, c) && !edge(a, d) && !edge(b, c) {
                    let l = |i: usize| g.label(br[i]).clone();
                    return K4Class::Burling {
                        a: l(a),
                        b: l(b),
                        c: l(c),
                        d: l(d),
                    };
                }
            }
        }
    }
    K4Class::NotBurling
}
