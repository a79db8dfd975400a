//! Brute-force enumeration oracle.
//!
//! Everything here counts concrete labeled objects: perfect matchings, fat
//! set partitions, half-edge graphs, isomorphism classes, graph-forest pairs
//! and leaf-labeled trees. The tallies independently verify the
//! generating-function coefficients at small orders.
//!
//! Enumeration is embarrassingly parallel over the matching or partition
//! stream; tallies are exact integers combined by commutative reduction, so
//! results do not depend on the thread count.

pub mod census;
pub mod export;
pub mod graph;
pub mod iso;
pub mod matchings;
pub mod pairs;
pub mod partitions;
pub mod tree_census;

pub use census::{
    census_exponential_formula_check, census_vs_pm_check, census_vs_series_check,
    count_labeled_graphs, CensusRow,
};
pub use export::{census_to_csv, census_to_json};
pub use graph::HalfEdgeGraph;
pub use iso::{iso_census, CanonicalGraph, IsoClass};
pub use matchings::{collect_matchings, enumerate_matchings};
pub use pairs::{pair_sum, pair_sum_vs_y_check};
pub use partitions::{enumerate_fat_partitions, fat_partition_counts_by_k};
pub use tree_census::{
    tree_census, tree_census_detailed, tree_census_product_route, tree_census_vs_series_check,
    TreeCensusRow,
};

use crate::error::{Error, Result};

/// Size limits on the enumerations. The defaults keep the full verification
/// suite in the minutes range; raise them (CLI: `--force`) for bigger runs.
#[derive(Clone, Debug)]
pub struct OracleCaps {
    /// Largest set a perfect matching is enumerated on.
    pub max_matching_size: usize,
    /// Largest set a fat partition is enumerated on.
    pub max_partition_size: usize,
    /// Largest edge count for the isomorphism census (orbit work is
    /// factorial in 2m).
    pub max_iso_edges: usize,
    /// Largest rank defect for the pair oracle.
    pub max_pair_defect: usize,
    /// Largest leaf count for the tree censuses.
    pub max_tree_leaves: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_matching_size: 14,
            max_partition_size: 14,
            max_iso_edges: 4,
            max_pair_defect: 2,
            max_tree_leaves: 7,
        }
    }
}

impl OracleCaps {
    /// Caps scaled up to whatever the request needs; used by `--force`.
    pub fn unbounded() -> Self {
        OracleCaps {
            max_matching_size: usize::MAX,
            max_partition_size: usize::MAX,
            max_iso_edges: usize::MAX,
            max_pair_defect: usize::MAX,
            max_tree_leaves: usize::MAX,
        }
    }

    pub(crate) fn check_partition_size(&self, n: usize) -> Result<()> {
        if n > self.max_partition_size {
            return Err(Error::CapExceeded {
                what: "partition set size",
                requested: n,
                cap: self.max_partition_size,
            });
        }
        Ok(())
    }
}
