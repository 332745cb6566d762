//! Recognition and nobility with the search over orientations spread over
//! a thread pool. Candidate orientations are evaluated in fixed-size chunks
//! and reduced in candidate order, so verdicts, certificates and counters
//! are the same for every number of threads.

use std::ops::ControlFlow;

use burling_core::orient::{
    for_each_candidate, forest_orientation, nobility_lower_bound, orientation_depth, OrientationLimits,
};
use burling_core::recognition::{certificate, obstruction, orientation_constraints, Reason, RecognizeOptions, Verdict};
use burling_core::sequential::{SearchStats, SequentialDecomposition};
use burling_core::{Graph, OrientedGraph};
use rayon::prelude::*;

use crate::Result;

#[cfg(not(test))]
const CHUNK: usize = 64;
#[cfg(test)]
const CHUNK: usize = 4;

/// A verdict with the counters of the exact phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

/// Runs `f` on a pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn check_budget(n: usize, limits: &OrientationLimits) -> Result<()> {
    if n > limits.exact_budget {
        return Err(burling_core::Error::BudgetExceeded {
            what: "exact search",
            limit: limits.exact_budget,
            actual: n,
        }
        .into());
    }
    Ok(())
}

type Evaluated = (burling_core::Result<Option<SequentialDecomposition>>, SearchStats);

fn evaluate(chunk: &mut Vec<OrientedGraph>) -> Vec<Evaluated> {
    let out = chunk
        .par_iter()
        .map(|o| {
            let mut s = SearchStats::default();
            (orientation_depth(o, &mut s), s)
        })
        .collect();
    chunk.clear();
    out
}

/// Feeds the candidate orientations of `g` to `reduce` chunk by chunk, in
/// candidate order, until it breaks.
fn scan(
    g: &Graph,
    limits: &OrientationLimits,
    mut reduce: impl FnMut(Vec<Evaluated>) -> ControlFlow<()>,
) -> Result<()> {
    let mut chunk = Vec::with_capacity(CHUNK);
    let mut stopped = false;
    for_each_candidate(g, limits.hole_budget, limits.hole_cap, |o| {
        chunk.push(o);
        if chunk.len() < CHUNK {
            return ControlFlow::Continue(());
        }
        let flow = reduce(evaluate(&mut chunk));
        stopped = flow.is_break();
        flow
    })?;
    if !stopped && !chunk.is_empty() {
        let _ = reduce(evaluate(&mut chunk));
    }
    Ok(())
}

/// Same verdict as [`burling_core::recognition::recognize_with`], with the
/// exact phase run in parallel.
pub fn recognize(g: &Graph, opts: &RecognizeOptions) -> Result<Outcome> {
    if let Some(r) = obstruction(g, &opts.limits)? {
        return Ok(Outcome {
            verdict: Verdict::NotBurling(r),
            stats: SearchStats::default(),
        });
    }
    if opts.obstructions_only {
        return Ok(Outcome {
            verdict: Verdict::Undecided,
            stats: SearchStats::default(),
        });
    }
    check_budget(g.vertex_count(), &opts.limits)?;
    let mut stats = SearchStats::default();
    let mut found = None;
    let mut failure = None;
    scan(g, &opts.limits, |results| {
        for (r, s) in results {
            stats.states += s.states;
            stats.base_choices += s.base_choices;
            stats.orientations += s.orientations;
            match r {
                Ok(Some(sd)) => {
                    found = Some(sd);
                    return ControlFlow::Break(());
                }
                Ok(None) => {}
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let verdict = match found {
        Some(sd) => Verdict::Burling(certificate(&sd)?),
        None => Verdict::NotBurling(Reason::Exhausted(stats)),
    };
    Ok(Outcome { verdict, stats })
}

/// Same verdict as [`burling_core::recognition::recognize_oriented_with`].
pub fn recognize_oriented(g: &OrientedGraph, opts: &RecognizeOptions) -> Result<Outcome> {
    let l = &opts.limits;
    let mut reason = obstruction(&g.underlying(), l)?;
    if reason.is_none() {
        reason = orientation_constraints(g, l.hole_budget, l.hole_cap)?.map(Reason::OrientationConstraint);
    }
    let verdict = match reason {
        Some(r) => Verdict::NotBurling(r),
        None if opts.obstructions_only => Verdict::Undecided,
        None => {
            check_budget(g.vertex_count(), l)?;
            let mut stats = SearchStats::default();
            let verdict = match orientation_depth(g, &mut stats)? {
                Some(sd) => Verdict::Burling(certificate(&sd)?),
                None => Verdict::NotBurling(Reason::Exhausted(stats)),
            };
            return Ok(Outcome { verdict, stats });
        }
    };
    Ok(Outcome {
        verdict,
        stats: SearchStats::default(),
    })
}

/// The smallest nobility over the orientations of `g`, or `None` if `g` is
/// not Burling.
pub fn nobility(g: &Graph, limits: &OrientationLimits) -> Result<Option<usize>> {
    check_budget(g.vertex_count(), limits)?;
    if !g.is_triangle_free() {
        return Ok(None);
    }
    if let Some(o) = forest_orientation(g) {
        return Ok(Some(SequentialDecomposition::of_forest(o)?.depth()));
    }
    let lower = nobility_lower_bound(g);
    let mut best: Option<usize> = None;
    let mut failure = None;
    scan(g, limits, |results| {
        for (r, _) in results {
            match r {
                Ok(Some(sd)) => best = Some(best.map_or(sd.depth(), |b| b.min(sd.depth()))),
                Ok(None) => {}
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        match best {
            Some(b) if b <= lower => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(best),
    }
}
