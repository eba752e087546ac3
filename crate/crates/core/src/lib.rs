//! Exact mining of the best closed itemsets of a binary transaction
//! dataset under projection-antimonotonic quality measures.
//!
//! The engine works in extent space: items are revealed one at a time
//! along a projection chain, each pattern is a closed extent of the
//! currently visible subdataset, and patterns whose (never-increasing)
//! projected measure falls to the threshold are pruned. The adaptive
//! variant raises the threshold on the fly to cap memory at L patterns,
//! which keeps the total work polynomial.
//!
//! Supported measures: support, the Δ-measure (an upper-bound proxy for
//! stability and robustness of closed itemsets), and cosine interest.
//! A brute-force oracle provides exact stability/robustness and a
//! mine-then-postprune baseline at small scale.

pub mod dataset;
pub mod error;
pub mod itemset;
pub mod measures;
pub mod oracle;
pub mod projection;
pub mod sofia;
pub mod tidset;

pub use dataset::BinaryDataset;
pub use error::{Error, Result};
pub use itemset::Itemset;
pub use measures::{BoundPair, MeasureKind};
pub use projection::{build_chain, ChainPolicy, ProjectionChain};
pub use sofia::{
    adjust_theta, projected_measure, sofia, theta_sofia, theta_sofia_with, MineResult,
    PatternEntry,
};
pub use tidset::Tidset;
