//! FIMI parsing and the vertical bit-vector dataset with its Galois
//! connection operators.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::tidset::Tidset;

/// An immutable binary transaction dataset in vertical layout: one
/// tidset column per item. Rows are never materialized; every engine
/// operation reduces to column intersections.
///
/// External item ids (arbitrary non-negative 64-bit integers from the
/// input file) are remapped to dense internal ids in first-occurrence
/// order. Output always translates back to external ids.
#[derive(Debug, Clone)]
pub struct BinaryDataset {
    n_transactions: usize,
    columns: Vec<Tidset>,
    item_names: Vec<u64>,
    item_support: Vec<usize>,
}

impl BinaryDataset {
    /// Parses FIMI .dat text: one whitespace-separated list of integer
    /// item ids per line. A blank line is an empty transaction and is
    /// retained. Duplicate ids within a line are deduplicated.
    pub fn parse_fimi<R: BufRead>(reader: R) -> Result<BinaryDataset> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut extern_to_intern: HashMap<u64, usize> = HashMap::new();
        let mut item_names: Vec<u64> = Vec::new();

        for (line_no, line) in reader.lines().enumerate() {
            let line = line?;
            let mut row: Vec<usize> = Vec::new();
            for token in line.split_whitespace() {
                let ext: u64 = token.parse().map_err(|_| Error::NonIntegerToken {
                    line: line_no + 1,
                    token: token.to_string(),
                })?;
                let id = *extern_to_intern.entry(ext).or_insert_with(|| {
                    item_names.push(ext);
                    item_names.len() - 1
                });
                row.push(id);
            }
            row.sort_unstable();
            row.dedup();
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::NoTransactions);
        }

        let n = rows.len();
        let mut columns = vec![Tidset::empty(n); item_names.len()];
        for (tid, row) in rows.iter().enumerate() {
            for &item in row {
                columns[item].insert(tid);
            }
        }
        let item_support = columns.iter().map(Tidset::cardinality).collect();
        Ok(BinaryDataset { n_transactions: n, columns, item_names, item_support })
    }

    pub fn parse_fimi_str(text: &str) -> Result<BinaryDataset> {
        Self::parse_fimi(text.as_bytes())
    }

    /// Builds a dataset directly from transactions given as external id
    /// lists; same remapping rules as the FIMI parser.
    pub fn from_transactions(rows: &[Vec<u64>]) -> Result<BinaryDataset> {
        if rows.is_empty() {
            return Err(Error::NoTransactions);
        }
        let mut extern_to_intern: HashMap<u64, usize> = HashMap::new();
        let mut item_names: Vec<u64> = Vec::new();
        let mut internal: Vec<Vec<usize>> = Vec::with_capacity(rows.len());
        for row in rows {
            let mut ids: Vec<usize> = row
                .iter()
                .map(|&ext| {
                    *extern_to_intern.entry(ext).or_insert_with(|| {
                        item_names.push(ext);
                        item_names.len() - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            ids.dedup();
            internal.push(ids);
        }
        let n = internal.len();
        let mut columns = vec![Tidset::empty(n); item_names.len()];
        for (tid, row) in internal.iter().enumerate() {
            for &item in row {
                columns[item].insert(tid);
            }
        }
        let item_support = columns.iter().map(Tidset::cardinality).collect();
        Ok(BinaryDataset { n_transactions: n, columns, item_names, item_support })
    }

    pub fn n_transactions(&self) -> usize {
        self.n_transactions
    }

    pub fn n_items(&self) -> usize {
        self.columns.len()
    }

    /// The column t({i}) for an internal item id.
    pub fn column(&self, item: usize) -> &Tidset {
        &self.columns[item]
    }

    pub fn item_support(&self, item: usize) -> usize {
        self.item_support[item]
    }

    pub fn external_id(&self, item: usize) -> u64 {
        self.item_names[item]
    }

    pub fn full_tidset(&self) -> Tidset {
        Tidset::full(self.n_transactions)
    }

    pub fn all_items(&self) -> Itemset {
        Itemset::from_sorted((0..self.n_items()).collect())
    }

    /// t(x): transactions containing every item of `x`. extent(∅) = T.
    pub fn extent(&self, x: &Itemset) -> Result<Tidset> {
        let mut e = self.full_tidset();
        for item in x.iter() {
            let col = self.columns.get(item).ok_or(Error::InvalidItemId(item))?;
            e.intersect_with(col);
        }
        Ok(e)
    }

    /// d(a) restricted to `within`: the items of `within` common to all
    /// transactions of `a`. intent(∅, within) = within.
    pub fn intent(&self, a: &Tidset, within: &Itemset) -> Itemset {
        Itemset::from_sorted(
            within.iter().filter(|&i| a.is_subset_of(&self.columns[i])).collect(),
        )
    }

    /// Restriction to a transaction subset, given as a list of original
    /// tids; position j of the list becomes tid j of the new dataset.
    /// Item remapping and zero-support columns are preserved.
    pub fn select_transactions(&self, tids: &[usize]) -> BinaryDataset {
        let n = tids.len();
        let mut columns = vec![Tidset::empty(n); self.columns.len()];
        for (new_tid, &old_tid) in tids.iter().enumerate() {
            for (item, col) in self.columns.iter().enumerate() {
                if col.contains(old_tid) {
                    columns[item].insert(new_tid);
                }
            }
        }
        let item_support = columns.iter().map(Tidset::cardinality).collect();
        BinaryDataset {
            n_transactions: n,
            columns,
            item_names: self.item_names.clone(),
            item_support,
        }
    }

    /// Re-serializes the transactions with external ids, one line per
    /// transaction, items ascending.
    pub fn to_fimi(&self) -> String {
        let mut rows: Vec<Vec<u64>> = vec![Vec::new(); self.n_transactions];
        for (item, col) in self.columns.iter().enumerate() {
            for tid in col.iter() {
                rows[tid].push(self.item_names[item]);
            }
        }
        rows.iter_mut().for_each(|r| r.sort_unstable());
        let mut out = String::new();
        for r in &rows {
            let line = r.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}
