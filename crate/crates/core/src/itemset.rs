/// An ordered set of internal item ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Itemset {
    items: Vec<usize>,
}

impl Itemset {
    pub fn empty() -> Self {
        Itemset { items: Vec::new() }
    }

    /// Builds from an arbitrary id collection; sorts and deduplicates.
    pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut items: Vec<usize> = ids.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Itemset { items }
    }

    /// Wraps a strictly increasing id sequence without re-sorting.
    pub fn from_sorted(items: Vec<usize>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Itemset { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.items
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        self.items.iter().all(|&i| other.contains(i))
    }
}
