//! Enumeration of fat set partitions: every block has at least 3 elements.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracle::OracleCaps;

pub(crate) const MIN_BLOCK: usize = 3;

/// Streams every fat partition of `{0..n}` exactly once, as a
/// restricted-growth string (block index per element, blocks numbered by
/// first occurrence) plus the block count.
pub fn enumerate_fat_partitions(
    n: usize,
    caps: &OracleCaps,
    mut f: impl FnMut(&[u8], usize),
) -> Result<()> {
    if n > caps.max_partition_size {
        return Err(Error::CapExceeded {
            what: "partition set size",
            requested: n,
            cap: caps.max_partition_size,
        });
    }
    enumerate_fat_partitions_raw(n, &mut f);
    Ok(())
}

/// Cap-free core, for internal callers with their own feasibility bounds.
pub(crate) fn enumerate_fat_partitions_raw(n: usize, f: &mut impl FnMut(&[u8], usize)) {
    let mut assign = vec![0u8; n];
    let mut sizes: Vec<u8> = Vec::new();
    rec(&mut assign, &mut sizes, 0, n, 0, f);
}

/// Places element `i`; `deficit` is the number of further elements the
/// current blocks still need to all reach size 3. Any branch whose deficit
/// exceeds the remaining elements is cut.
fn rec(
    assign: &mut [u8],
    sizes: &mut Vec<u8>,
    i: usize,
    n: usize,
    deficit: usize,
    f: &mut impl FnMut(&[u8], usize),
) {
    if i == n {
        debug_assert_eq!(deficit, 0);
        f(assign, sizes.len());
        return;
    }
    let remaining_after = n - i - 1;
    for b in 0..sizes.len() {
        let new_deficit = if (sizes[b] as usize) < MIN_BLOCK {
            deficit - 1
        } else {
            deficit
        };
        if new_deficit <= remaining_after {
            assign[i] = b as u8;
            sizes[b] += 1;
            rec(assign, sizes, i + 1, n, new_deficit, f);
            sizes[b] -= 1;
        }
    }
    let new_deficit = deficit + MIN_BLOCK - 1;
    if new_deficit <= remaining_after {
        assign[i] = sizes.len() as u8;
        sizes.push(1);
        rec(assign, sizes, i + 1, n, new_deficit, f);
        sizes.pop();
    }
}

/// Fat partitions of an n-set collected into a flat buffer of stride n.
#[derive(Clone, Debug)]
pub(crate) struct FatPartitionList {
    pub n: usize,
    assigns: Vec<u8>,
    ks: Vec<u8>,
}

impl FatPartitionList {
    pub(crate) fn collect_raw(n: usize) -> Self {
        let mut assigns = Vec::new();
        let mut ks = Vec::new();
        enumerate_fat_partitions_raw(n, &mut |assign, k| {
            assigns.extend_from_slice(assign);
            ks.push(k as u8);
        });
        FatPartitionList { n, assigns, ks }
    }

    pub(crate) fn len(&self) -> usize {
        self.ks.len()
    }

    pub(crate) fn get(&self, i: usize) -> (&[u8], usize) {
        (
            &self.assigns[i * self.n..(i + 1) * self.n],
            self.ks[i] as usize,
        )
    }
}

/// Per-block-count tallies, for comparison with the generating function.
pub fn fat_partition_counts_by_k(n: usize, caps: &OracleCaps) -> Result<BTreeMap<usize, u64>> {
    let mut counts = BTreeMap::new();
    enumerate_fat_partitions(n, caps, |_, k| {
        *counts.entry(k).or_insert(0u64) += 1;
    })?;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(n: usize) -> u64 {
        fat_partition_counts_by_k(n, &OracleCaps::default())
            .unwrap()
            .values()
            .sum()
    }

    #[test]
    fn small_counts() {
        assert_eq!(total(0), 1); // the empty partition
        assert_eq!(total(1), 0);
        assert_eq!(total(2), 0);
        assert_eq!(total(3), 1);
        assert_eq!(total(4), 1);
        // 6 elements: one full block plus C(6,3)/2 = 10 of type {3,3}.
        let by_k = fat_partition_counts_by_k(6, &OracleCaps::default()).unwrap();
        assert_eq!(by_k.get(&1), Some(&1));
        assert_eq!(by_k.get(&2), Some(&10));
        assert_eq!(total(6), 11);
    }

    #[test]
    fn partitions_are_valid_and_distinct() {
        let caps = OracleCaps::default();
        let mut seen = Vec::new();
        enumerate_fat_partitions(7, &caps, |assign, k| {
            let mut sizes = vec![0usize; k];
            for &b in assign {
                sizes[b as usize] += 1;
            }
            assert!(sizes.iter().all(|&s| s >= 3));
            // Restricted growth: block b first appears before block b+1.
            let mut max_seen = 0i32;
            for &b in assign {
                assert!((b as i32) <= max_seen + 1);
                max_seen = max_seen.max(b as i32);
            }
            seen.push(assign.to_vec());
        })
        .unwrap();
        let count = seen.len();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), count);
        // {7} and {4,3}-type (C(7,3) = 35) and {3,4}-type counted once: 1 + 35.
        assert_eq!(count, 36);
    }

    #[test]
    fn over_cap_is_refused() {
        let caps = OracleCaps::default();
        assert!(matches!(
            enumerate_fat_partitions(15, &caps, |_, _| {}),
            Err(Error::CapExceeded { .. })
        ));
    }
}
