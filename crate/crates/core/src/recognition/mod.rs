//! Deciding membership: obstruction detectors (triangles, wheels, flowers,
//! the full-star-cutset filter, conditions on orientations), the `K4`
//! subdivision dichotomy, and the exact search that settles the rest with a
//! derivation or an exhaustion report.

mod check;
mod constraints;
mod detect;
mod k4;

use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::graph::{Graph, OrientedGraph, VertexId};
use crate::holes::hole_indices;
use crate::orient::{for_each_candidate, orientation_depth, OrientationLimits};
use crate::sequential::{optimal_sequential_with_stats, tree_from_seq, SearchStats, SequentialDecomposition};
use crate::structure::{chalopin_filter, FilterOutcome};
use crate::tree::Derivation;
use crate::{Error, Result};

pub use check::{
    check_reason, check_reason_oriented, is_constraint_violation, is_filter_failure, is_flower_witness, is_triangle,
    is_wheel_witness,
};
pub use constraints::{orientation_constraints, ConstraintViolation, Lemma};
pub use detect::{find_flower, find_wheel, FlowerWitness, WheelWitness};
pub use k4::{classify_k4_subdivision, K4Class};

/// Why a graph is not Burling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Triangle([VertexId; 3]),
    Wheel(WheelWitness),
    Flower(FlowerWitness),
    /// An induced piece left by the full-star-cutset filter.
    FilterFailure(Graph),
    OrientationConstraint(ConstraintViolation),
    /// The exact search found nothing.
    Exhausted(SearchStats),
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::Triangle(_) => "triangle",
            Reason::Wheel(_) => "wheel",
            Reason::Flower(_) => "flower",
            Reason::FilterFailure(_) => "filter",
            Reason::OrientationConstraint(_) => "orientation",
            Reason::Exhausted(_) => "exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Burling(Derivation),
    NotBurling(Reason),
    /// Only detectors were run and none fired.
    Undecided,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Burling(_) => "BURLING",
            Verdict::NotBurling(_) => "NOT_BURLING",
            Verdict::Undecided => "UNDECIDED",
        }
    }

    pub fn is_burling(&self) -> bool {
        matches!(self, Verdict::Burling(_))
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            Verdict::NotBurling(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RecognizeOptions {
    pub limits: OrientationLimits,
    /// Skip the exact phase; report [`Verdict::Undecided`] when no
    /// detector fires.
    pub obstructions_only: bool,
}

/// The first `cap` holes of `g`.
pub(crate) fn catalogue(g: &Graph, budget: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    if g.vertex_count() > 64 {
        return Err(Error::BudgetExceeded {
            what: "hole enumeration",
            limit: 64.min(budget),
            actual: g.vertex_count(),
        });
    }
    let mut holes = hole_indices(g, budget)?;
    holes.truncate(cap);
    Ok(holes)
}

/// Runs the detectors on an undirected graph: triangle, wheel, flower and
/// the full-star-cutset filter, in that order.
pub fn obstruction(g: &Graph, limits: &OrientationLimits) -> Result<Option<Reason>> {
    if let Some([a, b, c]) = g.find_triangle() {
        let l = |i: usize| g.label(i).clone();
        return Ok(Some(Reason::Triangle([l(a), l(b), l(c)])));
    }
    let holes = catalogue(g, limits.hole_budget, limits.hole_cap)?;
    if let Some(w) = detect::wheel_in(g, &holes) {
        return Ok(Some(Reason::Wheel(w)));
    }
    if let Some(f) = detect::flower_in(g, &holes) {
        return Ok(Some(Reason::Flower(f)));
    }
    if let FilterOutcome::NotBurling(h) = chalopin_filter(g) {
        return Ok(Some(Reason::FilterFailure(h)));
    }
    Ok(None)
}

fn exact_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget {
        return Err(Error::BudgetExceeded {
            what: "exact search",
            limit: budget,
            actual: n,
        });
    }
    Ok(())
}

/// The derivation certifying a decomposition.
pub fn certificate(sd: &SequentialDecomposition) -> Result<Derivation> {
    tree_from_seq(sd)
}

/// Decides whether `g` is the underlying graph of a derived oriented
/// graph. Fails if no detector fires and `g` exceeds the exact budget.
pub fn recognize(g: &Graph) -> Result<Verdict> {
    recognize_with(g, &RecognizeOptions::default())
}

pub fn recognize_with(g: &Graph, opts: &RecognizeOptions) -> Result<Verdict> {
    if let Some(r) = obstruction(g, &opts.limits)? {
        return Ok(Verdict::NotBurling(r));
    }
    if opts.obstructions_only {
        return Ok(Verdict::Undecided);
    }
    exact_budget(g.vertex_count(), opts.limits.exact_budget)?;
    let mut stats = SearchStats::default();
    let mut found = None;
    let mut failure = None;
    for_each_candidate(
        g,
        opts.limits.hole_budget,
        opts.limits.hole_cap,
        |o| match orientation_depth(&o, &mut stats) {
            Ok(Some(sd)) => {
                found = Some(sd);
                ControlFlow::Break(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    match found {
        Some(sd) => Ok(Verdict::Burling(certificate(&sd)?)),
        None => Ok(Verdict::NotBurling(Reason::Exhausted(stats))),
    }
}

/// Decides whether `g` itself is derived.
pub fn recognize_oriented(g: &OrientedGraph) -> Result<Verdict> {
    recognize_oriented_with(g, &RecognizeOptions::default())
}

pub fn recognize_oriented_with(g: &OrientedGraph, opts: &RecognizeOptions) -> Result<Verdict> {
    let u = g.underlying();
    if let Some(r) = obstruction(&u, &opts.limits)? {
        return Ok(Verdict::NotBurling(r));
    }
    let l = &opts.limits;
    if let Some(v) = orientation_constraints(g, l.hole_budget, l.hole_cap)? {
        return Ok(Verdict::NotBurling(Reason::OrientationConstraint(v)));
    }
    if opts.obstructions_only {
        return Ok(Verdict::Undecided);
    }
    exact_budget(g.vertex_count(), l.exact_budget)?;
    let (sd, mut stats) = optimal_sequential_with_stats(g)?;
    stats.orientations = 1;
    match sd {
        Some(sd) => Ok(Verdict::Burling(certificate(&sd)?)),
        None => Ok(Verdict::NotBurling(Reason::Exhausted(stats))),
    }
}
