//! The fixed-threshold miner and its adaptive top-L variant.
//!
//! Both walk the projection chain in extent space: the pattern set for
//! step k is built from the preimages of the step k-1 set, measures are
//! updated, and entries at or below the threshold are dropped. The
//! adaptive variant additionally raises the threshold after every step
//! so the pattern set never holds more than L entries.

use crate::dataset::BinaryDataset;
use crate::error::{Error, Result};
use crate::measures::{cosine, delta_full, delta_step_update, MeasureKind};
use crate::projection::{preimages, ChainPolicy, ProjectionChain};
use crate::tidset::Tidset;

/// A pattern under consideration: a closed extent of the current
/// projection step with its cached measure value.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternEntry {
    pub extent: Tidset,
    pub measure: f64,
    pub support: usize,
}

/// Instrumentation for the polynomial work bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunStats {
    /// Candidate preimages generated over the whole run.
    pub preimage_evals: u64,
    /// Largest post-pruning pattern-set size over all steps.
    pub max_patterns: usize,
}

#[derive(Debug, Clone)]
pub struct MineResult {
    /// Surviving patterns, ordered by extent bit vector.
    pub patterns: Vec<PatternEntry>,
    pub theta_final: f64,
    pub stats: RunStats,
}

fn check_measure_chain(kind: MeasureKind, chain: &ProjectionChain) -> Result<()> {
    if kind == MeasureKind::Cosine && chain.policy() != ChainPolicy::AscendingSupport {
        return Err(Error::CosineChainMismatch);
    }
    Ok(())
}

/// Measure of an extent evaluated from scratch in the k-th projection.
pub fn projected_measure(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    e: &Tidset,
    kind: MeasureKind,
) -> f64 {
    match kind {
        MeasureKind::Support => e.cardinality() as f64,
        MeasureKind::Delta => delta_full(ds, chain, k, e) as f64,
        MeasureKind::Cosine => {
            if e.is_empty() {
                return 0.0;
            }
            let intent = ds.intent(e, &chain.item_set(k));
            // items of an intent of a non-empty extent always have
            // positive support, so this cannot fail
            cosine(ds, &intent).expect("intent items have positive support")
        }
    }
}

fn entry(ds: &BinaryDataset, chain: &ProjectionChain, k: usize, e: Tidset, kind: MeasureKind) -> PatternEntry {
    let measure = projected_measure(ds, chain, k, &e, kind);
    let support = e.cardinality();
    PatternEntry { extent: e, measure, support }
}

/// All preimages of `patterns` at step k with updated measures, before
/// threshold pruning. Survivor Δ values are maintained incrementally;
/// in debug builds each one is checked against a full recomputation.
fn extend_candidates(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    kind: MeasureKind,
    patterns: &[PatternEntry],
    stats: &mut RunStats,
) -> Vec<PatternEntry> {
    let new_col = ds.column(chain.item_added_at(k));
    let mut next: Vec<PatternEntry> = Vec::with_capacity(patterns.len() * 2);
    for p in patterns {
        let pre = preimages(ds, chain, k, &p.extent);
        stats.preimage_evals += pre.len() as u64;
        for e in pre {
            let is_survivor = e == p.extent;
            let candidate = if is_survivor && kind == MeasureKind::Delta {
                let updated = delta_step_update(p.measure as usize, &e, new_col);
                debug_assert_eq!(updated, delta_full(ds, chain, k, &e));
                PatternEntry { measure: updated as f64, support: p.support, extent: e }
            } else if is_survivor && kind == MeasureKind::Support {
                PatternEntry { measure: p.measure, support: p.support, extent: e }
            } else {
                entry(ds, chain, k, e, kind)
            };
            next.push(candidate);
        }
    }
    next.sort_by(|a, b| a.extent.cmp(&b.extent));
    debug_assert!(next.windows(2).all(|w| w[0].extent != w[1].extent));
    next
}

/// One step of the fixed-threshold miner: preimages of the step k-1
/// pattern set, measures updated, entries with measure ≤ theta removed.
pub fn extend_projection(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    theta: f64,
    kind: MeasureKind,
    patterns: &[PatternEntry],
) -> Vec<PatternEntry> {
    let mut stats = RunStats::default();
    let mut next = extend_candidates(ds, chain, k, kind, patterns, &mut stats);
    next.retain(|p| p.measure > theta);
    next
}

fn initial_patterns(ds: &BinaryDataset, chain: &ProjectionChain, kind: MeasureKind) -> Vec<PatternEntry> {
    vec![entry(ds, chain, 0, ds.full_tidset(), kind)]
}

/// Fixed-threshold mining: returns exactly the closed patterns of the
/// full dataset whose measure is strictly greater than `theta`, with
/// their exact final measure values.
pub fn theta_sofia(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    kind: MeasureKind,
    theta: f64,
) -> Result<MineResult> {
    theta_sofia_with(ds, chain, kind, theta, &mut |_, _| {})
}

/// Like [`theta_sofia`] but invokes `observer` once per step with the
/// candidate set (measures updated, pruning not yet applied), so a
/// caller can follow per-step measure trajectories.
pub fn theta_sofia_with(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    kind: MeasureKind,
    theta: f64,
    observer: &mut dyn FnMut(usize, &[PatternEntry]),
) -> Result<MineResult> {
    check_measure_chain(kind, chain)?;
    let mut stats = RunStats::default();
    let mut patterns = initial_patterns(ds, chain, kind);
    observer(0, &patterns);
    patterns.retain(|p| p.measure > theta);
    stats.max_patterns = patterns.len();

    for k in 1..=chain.len() {
        let mut candidates = extend_candidates(ds, chain, k, kind, &patterns, &mut stats);
        observer(k, &candidates);
        candidates.retain(|p| p.measure > theta);
        patterns = candidates;
        stats.max_patterns = stats.max_patterns.max(patterns.len());
    }
    debug_assert!(
        stats.preimage_evals <= 2 * chain.len() as u64 * stats.max_patterns.max(1) as u64
    );
    Ok(MineResult { patterns, theta_final: theta, stats })
}

/// Smallest threshold θ' ≥ `theta` such that at most `limit` of the
/// given measure values are strictly greater than θ'. Equal values at
/// the cut are always pruned as a whole group, so the kept set stays
/// exactly characterizable by the returned threshold.
pub fn adjust_theta(theta: f64, limit: usize, values: &[f64]) -> f64 {
    let above = values.iter().filter(|&&v| v > theta).count();
    if above <= limit {
        return theta;
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted[limit]
}

/// Adaptive top-L mining: raises the threshold after every projection
/// step so the pattern set never exceeds `limit` entries, and returns
/// the final threshold together with exactly the patterns above it.
pub fn sofia(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    kind: MeasureKind,
    limit: usize,
    theta_min: f64,
) -> Result<MineResult> {
    assert!(limit >= 1, "limit must be at least 1");
    check_measure_chain(kind, chain)?;
    let mut stats = RunStats::default();
    let mut theta = theta_min;
    let mut patterns = initial_patterns(ds, chain, kind);
    patterns.retain(|p| p.measure > theta);
    stats.max_patterns = patterns.len();

    for k in 1..=chain.len() {
        let mut candidates = extend_candidates(ds, chain, k, kind, &patterns, &mut stats);
        candidates.retain(|p| p.measure > theta);
        let values: Vec<f64> = candidates.iter().map(|p| p.measure).collect();
        let new_theta = adjust_theta(theta, limit, &values);
        debug_assert!(new_theta >= theta);
        theta = new_theta;
        candidates.retain(|p| p.measure > theta);
        patterns = candidates;
        assert!(patterns.len() <= limit, "pattern set exceeded the memory limit");
        stats.max_patterns = stats.max_patterns.max(patterns.len());
    }
    Ok(MineResult { patterns, theta_final: theta, stats })
}
