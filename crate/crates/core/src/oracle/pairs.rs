//! Brute-force evaluation of chi(Out(F_{n+1})) as a sum over labeled
//! graph-forest pairs.
//!
//! Every fully-labeled connected admissible graph G with `-chi(G) = n` is
//! enumerated together with every acyclic subset F of its edges; the sum of
//! `(-1)^{e(F)} / (2m)!` over labeled pairs equals, by orbit-stabilizer, the
//! sum of `(-1)^{e(F)} / |Aut(G,F)|` over isomorphism classes.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::graph::UnionFind;
use crate::oracle::matchings::collect_matchings;
use crate::oracle::partitions::FatPartitionList;
use crate::oracle::OracleCaps;
use crate::rational::{factorial, ExactRational};
use crate::report::CheckReport;

/// Sums `(-1)^{e(F)} / (2m)!` over all labeled pairs (G, F) with G connected,
/// admissible, leafless and `-chi(G) = defect`. A graph with defect n has
/// between n+1 and 3n edges.
pub fn pair_sum(defect: usize, caps: &OracleCaps) -> Result<ExactRational> {
    if defect > caps.max_pair_defect {
        return Err(Error::CapExceeded {
            what: "pair-sum rank defect",
            requested: defect,
            cap: caps.max_pair_defect,
        });
    }
    assert!(defect >= 1);
    let mut total = ExactRational::zero();
    for m in defect + 1..=3 * defect {
        let k = m - defect;
        let tally = signed_forest_tally(m, k, caps)?;
        total += &ExactRational::from_big(tally.into(), factorial(2 * m));
    }
    Ok(total)
}

/// Integer tally over labeled connected graphs with m edges and k vertices:
/// for each, the signed count of acyclic edge subsets.
fn signed_forest_tally(m: usize, k: usize, caps: &OracleCaps) -> Result<i64> {
    let n = 2 * m;
    let matchings = collect_matchings(n, caps)?;
    caps.check_partition_size(n)?;
    let all_partitions = FatPartitionList::collect_raw(n);
    let mut partitions: Vec<&[u8]> = Vec::new();
    for i in 0..all_partitions.len() {
        let (assign, blocks) = all_partitions.get(i);
        if blocks == k {
            partitions.push(assign);
        }
    }

    Ok(matchings
        .par_iter()
        .fold(
            || (0i64, UnionFind::new(0), Vec::new()),
            |(mut acc, mut uf, mut edges), pairing| {
                for assign in &partitions {
                    edges.clear();
                    for (i, &p) in pairing.iter().enumerate() {
                        if i < p {
                            edges.push((assign[i], assign[p]));
                        }
                    }
                    uf.reset(k);
                    for &(a, b) in &edges {
                        uf.union(a as usize, b as usize);
                    }
                    if uf.components() != 1 {
                        continue;
                    }
                    uf.reset(k);
                    acc += forest_subset_sum(&edges, &mut uf, 0, 1);
                }
                (acc, uf, edges)
            },
        )
        .map(|(acc, _, _)| acc)
        .sum())
}

/// Signed sum over acyclic subsets of `edges[idx..]` extending the forest
/// currently recorded in the union-find; `sign` is (-1)^(edges already in).
fn forest_subset_sum(edges: &[(u8, u8)], uf: &mut UnionFind, idx: usize, sign: i64) -> i64 {
    if idx == edges.len() {
        return sign;
    }
    let mut acc = forest_subset_sum(edges, uf, idx + 1, sign);
    let (a, b) = edges[idx];
    if let Some(undo) = uf.union(a as usize, b as usize) {
        acc += forest_subset_sum(edges, uf, idx + 1, -sign);
        uf.undo(undo);
    }
    acc
}

/// pair_sum against the Y series, order by order.
pub fn pair_sum_vs_y_check(max_defect: usize, caps: &OracleCaps) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("pair oracle vs Y series, n <= {max_defect}"));
    let y = crate::trees::y_series(max_defect)?;
    for n in 1..=max_defect {
        let oracle = pair_sum(n, caps)?;
        report.push_eq(
            format!("pair_sum({n}) vs [hbar^{n}]Y"),
            &oracle,
            y.coeff(n)?,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_graph_has_four_forest_subsets() {
        // Three parallel edges between two vertices: the empty set and the
        // three singletons are the only acyclic subsets; signed sum 1 - 3.
        let edges = vec![(0u8, 1u8); 3];
        let mut uf = UnionFind::new(2);
        let total = forest_subset_sum(&edges, &mut uf, 0, 1);
        assert_eq!(total, 1 - 3);
        // Unsigned count: exactly 4 acyclic subsets in total.
        fn count_subsets(edges: &[(u8, u8)], uf: &mut UnionFind, idx: usize, acc: &mut i64) {
            if idx == edges.len() {
                *acc += 1;
                return;
            }
            count_subsets(edges, uf, idx + 1, acc);
            let (a, b) = edges[idx];
            if let Some(undo) = uf.union(a as usize, b as usize) {
                count_subsets(edges, uf, idx + 1, acc);
                uf.undo(undo);
            }
        }
        let mut uf = UnionFind::new(2);
        let mut count = 0i64;
        count_subsets(&edges, &mut uf, 0, &mut count);
        assert_eq!(count, 4);
    }

    #[test]
    fn loops_never_enter_forests() {
        // A single loop on one vertex: only the empty subset is acyclic.
        let edges = vec![(0u8, 0u8)];
        let mut uf = UnionFind::new(1);
        assert_eq!(forest_subset_sum(&edges, &mut uf, 0, 1), 1);
    }

    #[test]
    fn pair_sum_first_order_is_minus_one_twenty_fourth() {
        let caps = OracleCaps::default();
        assert_eq!(pair_sum(1, &caps).unwrap(), ExactRational::new(-1, 24));
    }

    #[test]
    fn over_cap_is_refused() {
        let caps = OracleCaps::default();
        assert!(matches!(pair_sum(3, &caps), Err(Error::CapExceeded { .. })));
    }
}
