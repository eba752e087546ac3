//! Brute-force ground truth: exhaustive closed-pattern enumeration,
//! exact stability and robustness by summation over all subdatasets,
//! and a mine-then-postprune baseline.
//!
//! Everything here trades scale for certainty; the exact probabilities
//! enumerate all 2^|T| subdatasets and are guarded accordingly.

use std::collections::BTreeSet;

use crate::dataset::BinaryDataset;
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::measures::MeasureKind;
use crate::projection::{build_chain, ChainPolicy};
use crate::sofia::{adjust_theta, projected_measure, PatternEntry};
use crate::tidset::Tidset;

/// Transaction-count guard for the 2^|T| subdataset enumerations.
pub const EXACT_ORACLE_MAX_TRANSACTIONS: usize = 25;

/// All concepts (closed extent, intent) with extent cardinality at
/// least `min_support`, ordered by extent. The bottom concept appears
/// only when its extent passes the support filter, i.e. min_support 0.
pub fn enumerate_closed(ds: &BinaryDataset, min_support: usize) -> Vec<(Tidset, Itemset)> {
    // every closed extent is an intersection of item columns with T
    let mut seen: BTreeSet<Tidset> = BTreeSet::new();
    let mut work = vec![ds.full_tidset()];
    seen.insert(ds.full_tidset());
    while let Some(e) = work.pop() {
        for item in 0..ds.n_items() {
            let e2 = e.intersection(ds.column(item));
            if !seen.contains(&e2) {
                seen.insert(e2.clone());
                work.push(e2);
            }
        }
    }
    let all = ds.all_items();
    seen.into_iter()
        .filter(|e| e.cardinality() >= min_support)
        .map(|e| {
            let intent = ds.intent(&e, &all);
            (e, intent)
        })
        .collect()
}

/// Rejects datasets too large for the exhaustive code paths.
pub fn check_guard(ds: &BinaryDataset) -> Result<()> {
    if ds.n_transactions() > EXACT_ORACLE_MAX_TRANSACTIONS {
        return Err(Error::OracleGuard(
            ds.n_transactions(),
            EXACT_ORACLE_MAX_TRANSACTIONS,
        ));
    }
    Ok(())
}

/// Sums `weight(|S|)` over all transaction subsets S in which the
/// itemset d(e) stays closed. Closedness in the subdataset: the
/// surviving extent e ∩ S must not acquire any item outside d(e); an
/// empty survivor closes to the full item set.
fn closed_subdataset_sum(
    ds: &BinaryDataset,
    e: &Tidset,
    weight: &dyn Fn(u32) -> f64,
) -> Result<f64> {
    check_guard(ds)?;
    let n = ds.n_transactions();
    let all = ds.all_items();
    let x = ds.intent(e, &all);
    let x_is_full = x.len() == ds.n_items();

    let to_mask = |t: &Tidset| -> u64 { t.iter().fold(0u64, |m, tid| m | (1u64 << tid)) };
    let e_mask = to_mask(e);
    let outside: Vec<u64> = (0..ds.n_items())
        .filter(|&i| !x.contains(i))
        .map(|i| to_mask(ds.column(i)))
        .collect();

    let mut sum = 0.0f64;
    for s in 0u64..(1u64 << n) {
        let survivor = e_mask & s;
        let closed = if survivor == 0 {
            x_is_full
        } else {
            outside.iter().all(|&col| survivor & !col != 0)
        };
        if closed {
            sum += weight(s.count_ones());
        }
    }
    Ok(sum)
}

/// Probability that d(e) stays closed under uniform subdataset
/// sampling (every subdataset has weight 2^-|T|).
pub fn exact_stability(ds: &BinaryDataset, e: &Tidset) -> Result<f64> {
    let w = 0.5f64.powi(ds.n_transactions() as i32);
    closed_subdataset_sum(ds, e, &|_| w)
}

/// Probability that d(e) stays closed when every transaction is kept
/// independently with probability `alpha`.
pub fn exact_robustness(ds: &BinaryDataset, e: &Tidset, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let n = ds.n_transactions() as i32;
    closed_subdataset_sum(ds, e, &|kept| {
        alpha.powi(kept as i32) * (1.0 - alpha).powi(n - kept as i32)
    })
}

/// Mine-everything-then-prune baseline: enumerates all closed patterns
/// with support ≥ 1, scores them on the full dataset, and keeps the
/// threshold-characterized top group (same tie rule as the adaptive
/// miner's threshold adjustment).
pub fn postprune_topk(
    ds: &BinaryDataset,
    kind: MeasureKind,
    k: usize,
) -> Result<(f64, Vec<PatternEntry>)> {
    check_guard(ds)?;
    let chain = build_chain(
        ds,
        if kind == MeasureKind::Cosine {
            ChainPolicy::AscendingSupport
        } else {
            ChainPolicy::InputOrder
        },
    );
    let full = chain.len();
    let mut entries: Vec<PatternEntry> = enumerate_closed(ds, 1)
        .into_iter()
        .map(|(e, _)| {
            let measure = projected_measure(ds, &chain, full, &e, kind);
            let support = e.cardinality();
            PatternEntry { extent: e, measure, support }
        })
        .collect();
    let values: Vec<f64> = entries.iter().map(|p| p.measure).collect();
    let theta = adjust_theta(0.0, k, &values);
    entries.retain(|p| p.measure > theta);
    entries.sort_by(|a, b| a.extent.cmp(&b.extent));
    Ok((theta, entries))
}
