//! Rewrites of Burling trees that transform the derived graph in a
//! controlled way: normalization, bottom-arc subdivision, top-arc
//! subdivision, bulk expansion and contraction.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::graph::VertexId;
use crate::tree::{classify_arcs, ensure_valid_derivation, ArcClass, BurlingTree, Derivation, FreshLabels};
use crate::{Error, Result};

/// How an arc is expanded by [`expand_arcs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandMode {
    /// Replace `uv` by a directed path of the given length from `u` to `v`.
    BottomPath(usize),
    /// Replace `uv` by an arc `wv` and a directed path of the given length
    /// from `w` to `u`.
    TopSplit(usize),
}

/// One step of an expansion plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandStep {
    pub from: VertexId,
    pub to: VertexId,
    pub mode: ExpandMode,
}

impl BurlingTree {
    fn set_parent(&mut self, child: &VertexId, parent: &VertexId) {
        self.parent.insert(child.clone(), parent.clone());
    }

    fn set_last_born(&mut self, parent: &VertexId, child: &VertexId) {
        self.last_born.insert(parent.clone(), child.clone());
    }

    fn set_choose(&mut self, v: &VertexId, list: Vec<VertexId>) {
        if list.is_empty() {
            self.choose.remove(v);
        } else {
            self.choose.insert(v.clone(), list);
        }
    }

    /// Inserts `new` right before `target` in every choose list that contains
    /// `target`, except the lists of vertices in `skip`.
    fn insert_before(&mut self, target: &VertexId, new: &[VertexId], skip: &[&VertexId]) {
        for (z, list) in self.choose.iter_mut() {
            if skip.contains(&z) {
                continue;
            }
            if let Some(k) = list.iter().position(|x| x == target) {
                list.splice(k..k, new.iter().cloned());
            }
        }
    }
}

/// Rewrites `d` so that the kept vertices are exactly the vertices that are
/// neither the root nor a last-born, without changing the derived graph or
/// the classes of its arcs.
pub fn normalize(d: &Derivation) -> Result<Derivation> {
    normalize_reserving(d, &[])
}

fn normalize_reserving(d: &Derivation, reserved: &[&VertexId]) -> Result<Derivation> {
    ensure_valid_derivation(d)?;
    let mut t = d.tree.clone();
    let kept = d.kept.clone();
    let mut fresh = FreshLabels::new(t.vertices().into_iter().chain(kept.iter().cloned()));
    for r in reserved {
        fresh.reserve(r);
    }

    if kept.contains(&t.root) {
        let r = t.root.clone();
        let r2 = fresh.next();
        t.set_parent(&r, &r2);
        t.set_last_born(&r2, &r);
        t.root = r2;
    }

    let kept_last_borns: Vec<VertexId> = kept.iter().filter(|v| t.is_last_born(v)).cloned().collect();
    for v in kept_last_borns {
        let u = t.parent[&v].clone();
        let w = fresh.next();
        let w2 = fresh.next();
        t.set_parent(&w, &u);
        t.set_parent(&v, &w);
        t.set_last_born(&u, &w);
        t.set_parent(&w2, &w);
        t.set_last_born(&w, &w2);
        t.insert_before(&v, core::slice::from_ref(&w), &[]);
    }

    loop {
        let next = t
            .vertices()
            .into_iter()
            .find(|v| *v != t.root && !kept.contains(v) && !t.is_last_born(v));
        let Some(v) = next else { break };
        let u = t.parent[&v].clone();
        let children = t.children(&v);
        t.choose.remove(&v);
        if children.is_empty() {
            t.parent.remove(&v);
            for list in t.choose.values_mut() {
                if let Some(k) = list.iter().position(|x| *x == v) {
                    list.truncate(k);
                }
            }
            t.choose.retain(|_, l| !l.is_empty());
            continue;
        }
        let w = t.last_born[&u].clone();
        let mut chain = alloc::vec![v.clone()];
        let mut leaf = v.clone();
        while let Some(c) = t.last_born.get(&leaf) {
            leaf = c.clone();
            chain.push(leaf.clone());
        }
        t.set_last_born(&u, &v);
        t.set_parent(&w, &leaf);
        t.set_last_born(&leaf, &w);
        t.insert_before(&w, &chain, &[]);
    }

    let out = Derivation::new(t, kept);
    debug_assert!(ensure_valid_derivation(&out).is_ok());
    Ok(out)
}

fn check_fresh(d: &Derivation, w: &VertexId) -> Result<()> {
    if d.tree.contains(w) || d.kept.contains(w) {
        return Err(Error::Precondition(format!("{w} is not a fresh label")));
    }
    Ok(())
}

fn arc_class(d: &Derivation, u: &VertexId, v: &VertexId) -> Result<ArcClass> {
    classify_arcs(d)?
        .get(&(u.clone(), v.clone()))
        .copied()
        .ok_or_else(|| Error::Precondition(format!("{u} {v} is not an arc")))
}

/// Subdivides the bottom arc `uv` into the directed path `u w v`.
pub fn subdivide_bottom(d: &Derivation, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<Derivation> {
    ensure_valid_derivation(d)?;
    if !arc_class(d, u, v)?.is_bottom() {
        return Err(Error::Precondition(format!("{u} {v} is not a bottom arc")));
    }
    check_fresh(d, w)?;
    let mut d = normalize_reserving(d, &[w])?;
    let mut fresh = FreshLabels::new(d.tree.vertices());
    fresh.reserve(w);
    let t = &mut d.tree;

    let x = t.parent[v].clone();
    let last = t.last_born[&x].clone();
    let x2 = fresh.next();
    t.insert_before(&last, core::slice::from_ref(&x2), &[v]);
    t.insert_before(v, core::slice::from_ref(&x2), &[v]);
    t.set_parent(&x2, &x);
    t.set_last_born(&x, &x2);
    t.set_parent(&last, &x2);
    t.set_last_born(&x2, &last);
    t.set_parent(v, &x2);
    t.set_parent(w, &x);

    let cu = t.choose(u).to_vec();
    let k = cu
        .iter()
        .position(|z| *z == x)
        .ok_or_else(|| Error::Precondition(format!("{x} is not in the choose list of {u}")))?;
    let mut new_cu: Vec<VertexId> = cu[..=k].to_vec();
    new_cu.push(w.clone());
    t.set_choose(u, new_cu);
    t.set_choose(w, alloc::vec![x2, v.clone()]);
    d.kept.insert(w.clone());
    Ok(d)
}

/// Replaces the top arc `uv`, where `u` is a source, by the arcs `wu` and
/// `wv`.
pub fn top_subdivide(d: &Derivation, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<Derivation> {
    ensure_valid_derivation(d)?;
    if !arc_class(d, u, v)?.is_top() {
        return Err(Error::Precondition(format!("{u} {v} is not a top arc")));
    }
    if d.kept
        .iter()
        .any(|z| d.tree.choose(z).contains(u) && d.kept.contains(z))
    {
        return Err(Error::Precondition(format!("{u} is not a source")));
    }
    check_fresh(d, w)?;
    let mut d = normalize_reserving(d, &[w])?;
    let mut fresh = FreshLabels::new(d.tree.vertices());
    fresh.reserve(w);
    let t = &mut d.tree;

    let x = t.parent[u].clone();
    let y = match t.last_born.get(v) {
        Some(y) => y.clone(),
        None => {
            let y = fresh.next();
            t.set_parent(&y, v);
            t.set_last_born(v, &y);
            y
        }
    };
    let mut cu = t.choose(u).to_vec();
    let kv = cu
        .iter()
        .position(|z| z == v)
        .ok_or_else(|| Error::Precondition(format!("{v} is not in the choose list of {u}")))?;
    if kv + 1 == cu.len() {
        cu.push(y.clone());
    }
    let v2 = cu[kv + 1].clone();
    let path: Vec<VertexId> = cu[..=kv].to_vec();
    let rest: Vec<VertexId> = cu[kv + 1..].to_vec();

    let y2 = fresh.next();
    t.set_choose(u, Vec::new());
    t.insert_before(&y, core::slice::from_ref(&y2), &[&v2]);
    if v2 != y {
        t.insert_before(&v2, core::slice::from_ref(&y2), &[&v2]);
    }
    for list in t.choose.values_mut() {
        if let Some(k) = list.iter().position(|z| z == u) {
            list.truncate(k);
        }
    }
    t.choose.retain(|_, l| !l.is_empty());

    t.set_parent(u, v);
    t.set_parent(&y2, v);
    t.set_last_born(v, &y2);
    t.set_parent(&y, &y2);
    t.set_last_born(&y2, &y);
    t.set_parent(&v2, &y2);
    t.set_parent(w, &x);

    let mut new_cu = alloc::vec![y2];
    new_cu.extend(rest);
    t.set_choose(u, new_cu);
    let mut cw = path;
    cw.push(u.clone());
    t.set_choose(w, cw);
    d.kept.insert(w.clone());
    Ok(d)
}

/// Contracts the arc `uv`, where `v` is the only out-neighbor of `u` and `u`
/// the only in-neighbor of `v`. The contracted vertex keeps the label `u`.
pub fn contract(d: &Derivation, u: &VertexId, v: &VertexId) -> Result<Derivation> {
    ensure_valid_derivation(d)?;
    if !d.kept.contains(u) || !d.kept.contains(v) {
        return Err(Error::Precondition(format!("{u} {v} is not an arc")));
    }
    let outs = d.kept_choose(u);
    if outs.as_slice() != [v.clone()] {
        return Err(Error::Precondition(format!(
            "{u} must have {v} as its only out-neighbor"
        )));
    }
    let ins = d.kept.iter().filter(|z| d.tree.choose(z).contains(v)).count();
    if ins != 1 {
        return Err(Error::Precondition(format!(
            "{v} must have {u} as its only in-neighbor"
        )));
    }
    let mut d = d.clone();
    let cu = d.tree.choose(u).to_vec();
    let k = cu.iter().position(|z| z == v).unwrap_or(cu.len());
    let mut new_cu: Vec<VertexId> = cu[..k].to_vec();
    new_cu.extend(d.tree.choose(v).iter().cloned());
    d.tree.set_choose(u, new_cu);
    d.kept.remove(v);
    Ok(d)
}

/// Applies a sequence of subdivisions. New vertices are labelled `_w<n>`.
pub fn expand_arcs(d: &Derivation, plan: &[ExpandStep]) -> Result<Derivation> {
    ensure_valid_derivation(d)?;
    let mut cur = d.clone();
    let mut used: BTreeSet<VertexId> = cur.tree.vertices();
    used.extend(cur.kept.iter().cloned());
    let mut counter = 0usize;
    let mut next_label = |cur: &Derivation| loop {
        let c = VertexId::known(format!("_w{counter}"));
        counter += 1;
        if !cur.tree.contains(&c) && !used.contains(&c) {
            used.insert(c.clone());
            return c;
        }
    };
    for (k, step) in plan.iter().enumerate() {
        let wrap = |e: Error| Error::Precondition(format!("step {} ({} {}): {}", k + 1, step.from, step.to, e));
        match step.mode {
            ExpandMode::BottomPath(len) | ExpandMode::TopSplit(len) if len == 0 => {
                return Err(wrap(Error::InvalidParameter("length must be at least 1".into())));
            }
            ExpandMode::BottomPath(len) => {
                let mut tail = step.from.clone();
                for _ in 1..len {
                    let w = next_label(&cur);
                    cur = subdivide_bottom(&cur, &tail, &step.to, &w).map_err(wrap)?;
                    tail = w;
                }
            }
            ExpandMode::TopSplit(len) => {
                let mut head = step.from.clone();
                for _ in 0..len {
                    let w = next_label(&cur);
                    cur = top_subdivide(&cur, &head, &step.to, &w).map_err(wrap)?;
                    head = w;
                }
            }
        }
    }
    Ok(cur)
}
