//! Fixed-width bit vectors over transaction ids.

const WORD_BITS: usize = 64;

/// A set of transaction ids, stored as a fixed-length bit vector.
///
/// All tidsets of one dataset share the same length, so the word-wise
/// operations never need bounds reconciliation. Ordering compares the
/// raw words, which gives a deterministic total order used to keep
/// mining runs reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tidset {
    words: Vec<u64>,
    len: usize,
}

impl Tidset {
    pub fn empty(len: usize) -> Self {
        let n_words = len.div_ceil(WORD_BITS);
        Tidset { words: vec![0; n_words], len }
    }

    pub fn full(len: usize) -> Self {
        let mut t = Tidset::empty(len);
        for i in 0..len {
            t.insert(i);
        }
        t
    }

    /// Number of addressable transactions, not the cardinality.
    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, tid: usize) {
        debug_assert!(tid < self.len);
        self.words[tid / WORD_BITS] |= 1u64 << (tid % WORD_BITS);
    }

    pub fn contains(&self, tid: usize) -> bool {
        tid < self.len && self.words[tid / WORD_BITS] & (1u64 << (tid % WORD_BITS)) != 0
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &Tidset) -> Tidset {
        debug_assert_eq!(self.len, other.len);
        Tidset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn intersect_with(&mut self, other: &Tidset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Cardinality of the intersection without materializing it.
    pub fn intersection_len(&self, other: &Tidset) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &Tidset) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let words = &self.words;
        (0..self.words.len()).flat_map(move |wi| {
            let mut w = words[wi];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }
}

impl FromIterator<usize> for Tidset {
    /// Collects tids into a set sized to hold the largest tid; mostly a
    /// test convenience, dataset code sizes tidsets from |T| directly.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let tids: Vec<usize> = iter.into_iter().collect();
        let len = tids.iter().max().map_or(0, |&m| m + 1);
        let mut t = Tidset::empty(len);
        for tid in tids {
            t.insert(tid);
        }
        t
    }
}
