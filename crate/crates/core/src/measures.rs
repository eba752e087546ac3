//! Pattern quality measures: support, the Δ-measure (exact within a
//! projection step, with an exact incremental update), cosine interest,
//! and the stability/robustness bound pair.

use crate::dataset::BinaryDataset;
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::projection::ProjectionChain;
use crate::tidset::Tidset;

/// Which quality measure a mining run optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Support,
    Delta,
    Cosine,
}

impl std::str::FromStr for MeasureKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "support" => Ok(MeasureKind::Support),
            "delta" => Ok(MeasureKind::Delta),
            "cosine" => Ok(MeasureKind::Cosine),
            other => Err(format!("unknown measure {other:?}")),
        }
    }
}

impl std::fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MeasureKind::Support => "support",
            MeasureKind::Delta => "delta",
            MeasureKind::Cosine => "cosine",
        })
    }
}

/// Lower/upper probability bounds for stability or robustness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    /// True when the raw lower bound went negative and was clamped to 0.
    pub clamped: bool,
}

pub fn support(e: &Tidset) -> usize {
    e.cardinality()
}

/// Exact Δ of a closed extent in the k-th projected dataset:
/// |e| minus the largest |e ∩ t({m})| over exposed items m outside the
/// intent of e. With no such item the maximum is taken as 0, so a
/// pattern without proper closed sub-extents has Δ = |e|.
pub fn delta_full(ds: &BinaryDataset, chain: &ProjectionChain, k: usize, e: &Tidset) -> usize {
    let card = e.cardinality();
    let mut best = 0usize;
    for &m in chain.items_at(k) {
        if e.is_subset_of(ds.column(m)) {
            continue; // m is in the intent of e
        }
        best = best.max(e.intersection_len(ds.column(m)));
    }
    card - best
}

/// One-step Δ maintenance when item m is added to the projection:
/// the only candidate new child of e is e ∩ t({m}).
pub fn delta_step_update(old_delta: usize, e: &Tidset, new_item_column: &Tidset) -> usize {
    if e.is_subset_of(new_item_column) {
        old_delta
    } else {
        old_delta.min(e.cardinality() - e.intersection_len(new_item_column))
    }
}

/// Cosine interest: |t(x)| over the geometric mean of the supports of
/// the items of x. The empty itemset maps to +∞, which sorts above all
/// finite values.
pub fn cosine(ds: &BinaryDataset, x: &Itemset) -> Result<f64> {
    if x.is_empty() {
        return Ok(f64::INFINITY);
    }
    let e = ds.extent(x)?;
    let mut product = 1.0f64;
    let mut log_sum = 0.0f64;
    for item in x.iter() {
        let s = ds.item_support(item);
        if s == 0 {
            return Err(Error::ZeroSupportItem(ds.external_id(item)));
        }
        product *= s as f64;
        log_sum += (s as f64).ln();
    }
    // the direct product keeps small cases exact (e.g. sqrt of a
    // perfect square); the log form only kicks in on overflow
    let geo_mean = if product.is_finite() {
        product.powf(1.0 / x.len() as f64)
    } else {
        (log_sum / x.len() as f64).exp()
    };
    Ok(e.cardinality() as f64 / geo_mean)
}

/// The immediate closed sub-extents of e at step k: the distinct,
/// inclusion-maximal values of e ∩ t({m}) over exposed items m outside
/// the intent of e. The empty extent counts when it is the only value.
pub fn immediate_children(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    e: &Tidset,
) -> Vec<Tidset> {
    let mut candidates: Vec<Tidset> = Vec::new();
    for &m in chain.items_at(k) {
        if e.is_subset_of(ds.column(m)) {
            continue;
        }
        let c = e.intersection(ds.column(m));
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    let maximal: Vec<Tidset> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|other| *other != **c && c.is_subset_of(other))
        })
        .cloned()
        .collect();
    let mut maximal = maximal;
    maximal.sort();
    maximal
}

fn bounds_from_children(e: &Tidset, children: &[Tidset], miss_prob: f64) -> BoundPair {
    if children.is_empty() {
        // Intent covers every exposed item: the pattern stays closed in
        // every subdataset, so both bounds are exactly 1.
        return BoundPair { lower: 1.0, upper: 1.0, clamped: false };
    }
    let card = e.cardinality();
    let mut sum = 0.0f64;
    let mut min_gap = usize::MAX;
    for child in children {
        let gap = card - child.cardinality();
        sum += miss_prob.powi(gap as i32);
        min_gap = min_gap.min(gap);
    }
    let raw_lower = 1.0 - sum;
    let upper = 1.0 - miss_prob.powi(min_gap as i32);
    BoundPair {
        lower: raw_lower.max(0.0),
        upper,
        clamped: raw_lower < 0.0,
    }
}

/// Stability bounds: lower = 1 − Σ_{Y≺X} 2^{−Δ(X,Y)}, upper =
/// 1 − 2^{−Δ(X)}, with the lower clamped at 0.
pub fn stability_bounds(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    e: &Tidset,
) -> BoundPair {
    bounds_from_children(e, &immediate_children(ds, chain, k, e), 0.5)
}

/// Robustness bounds under per-transaction retention probability alpha;
/// the miss probability 1 − α replaces 1/2 in the stability formulas.
pub fn robustness_bounds(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    e: &Tidset,
    alpha: f64,
) -> Result<BoundPair> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(bounds_from_children(e, &immediate_children(ds, chain, k, e), 1.0 - alpha))
}
