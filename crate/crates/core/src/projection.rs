//! Projection chains over the item set and preimage generation in
//! extent space.
//!
//! A chain step k exposes the first k items of a fixed permutation;
//! projecting a pattern means closing its extent against that reduced
//! item set. Because exactly one item is added per step, every extent
//! has at most two preimages in the next step.

use crate::dataset::BinaryDataset;
use crate::itemset::Itemset;
use crate::tidset::Tidset;

/// Policy for ordering the items along the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainPolicy {
    /// Ascending external item id, mirroring the dataset as written.
    InputOrder,
    /// Least supported items first; ties by ascending internal id.
    AscendingSupport,
    /// Most supported items first; ties by ascending internal id.
    DescendingSupport,
}

impl std::str::FromStr for ChainPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input" | "input_order" => Ok(ChainPolicy::InputOrder),
            "ascending" | "ascending_support" => Ok(ChainPolicy::AscendingSupport),
            "descending" | "descending_support" => Ok(ChainPolicy::DescendingSupport),
            other => Err(format!("unknown chain policy {other:?}")),
        }
    }
}

/// A total order on internal item ids; step k of the chain exposes the
/// item set `order[..k]`.
#[derive(Debug, Clone)]
pub struct ProjectionChain {
    order: Vec<usize>,
    policy: ChainPolicy,
}

/// Builds the chain permutation for a dataset under the given policy.
pub fn build_chain(ds: &BinaryDataset, policy: ChainPolicy) -> ProjectionChain {
    let mut order: Vec<usize> = (0..ds.n_items()).collect();
    match policy {
        ChainPolicy::InputOrder => {
            order.sort_by_key(|&i| ds.external_id(i));
        }
        ChainPolicy::AscendingSupport => {
            order.sort_by_key(|&i| (ds.item_support(i), i));
        }
        ChainPolicy::DescendingSupport => {
            order.sort_by_key(|&i| (std::cmp::Reverse(ds.item_support(i)), i));
        }
    }
    ProjectionChain { order, policy }
}

impl ProjectionChain {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn policy(&self) -> ChainPolicy {
        self.policy
    }

    /// The item added at step k (1-based step index).
    pub fn item_added_at(&self, k: usize) -> usize {
        self.order[k - 1]
    }

    /// Internal ids exposed at step k, in chain order.
    pub fn items_at(&self, k: usize) -> &[usize] {
        &self.order[..k]
    }

    /// The item set of step k as a sorted `Itemset`.
    pub fn item_set(&self, k: usize) -> Itemset {
        Itemset::from_ids(self.order[..k].iter().copied())
    }
}

/// ψ_C at step k: the closure of `a` in the k-th projected dataset,
/// t(ψ(d(a))).
pub fn project_extent(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    a: &Tidset,
) -> Tidset {
    let mut e = ds.full_tidset();
    for &item in chain.items_at(k) {
        if a.is_subset_of(ds.column(item)) {
            e.intersect_with(ds.column(item));
        }
    }
    e
}

/// Preimages at step k of an extent `e` closed at step k-1.
///
/// `e` itself is always a preimage. The only other candidate is
/// e ∩ t({m}) for the newly added item m; it is kept only when `e` is
/// its parent, i.e. the candidate's (k-1)-closure equals `e`, so each
/// new extent is generated exactly once across the whole step.
pub fn preimages(
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    k: usize,
    e: &Tidset,
) -> Vec<Tidset> {
    let m = chain.item_added_at(k);
    let candidate = e.intersection(ds.column(m));
    if &candidate == e {
        return vec![e.clone()];
    }
    if project_extent(ds, chain, k - 1, &candidate) == *e {
        vec![e.clone(), candidate]
    } else {
        vec![e.clone()]
    }
}
