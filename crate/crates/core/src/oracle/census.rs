//! Labeled-graph census: the Cartesian product of matchings and fat
//! partitions, tallied per (edges, vertices) cell.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::oracle::graph::{is_connected_raw, UnionFind};
use crate::oracle::iso::IsoClass;
use crate::oracle::matchings::collect_matchings;
use crate::oracle::partitions::FatPartitionList;
use crate::oracle::OracleCaps;
use crate::rational::{factorial, ExactRational};
use crate::report::CheckReport;
use crate::series::{TruncatedSeries, Var};

/// One (m, k) cell of the census.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusRow {
    /// Edges.
    pub m: usize,
    /// Vertices.
    pub k: usize,
    /// Labeled admissible graphs with this shape.
    pub labeled_count: u64,
    /// How many of them are connected.
    pub connected_count: u64,
    /// Labeled count signed by (-1)^m.
    pub signed_count: i64,
    /// Isomorphism classes; filled by `iso_census` only.
    pub iso_classes: Option<Vec<IsoClass>>,
}

impl CensusRow {
    /// The orbit-stabilizer weight `labeled_count / (2m)!`, which equals the
    /// sum of `1/|Aut(G)|` over isomorphism classes at this cell.
    pub fn weighted(&self) -> ExactRational {
        ExactRational::from_big(self.labeled_count.into(), factorial(2 * self.m))
    }
}

/// Enumerates every labeled admissible leafless graph with m edges as a
/// (matching, fat partition) pair, and tallies labeled and connected counts
/// per vertex count. Rows come out sorted by k; cells with no graphs are
/// omitted.
pub fn count_labeled_graphs(m: usize, caps: &OracleCaps) -> Result<Vec<CensusRow>> {
    let n = 2 * m;
    let matchings = collect_matchings(n, caps)?;
    caps.check_partition_size(n)?;
    let partitions = FatPartitionList::collect_raw(n);

    let tally: BTreeMap<usize, (u64, u64)> = matchings
        .par_iter()
        .fold(
            || (BTreeMap::new(), UnionFind::new(0)),
            |(mut map, mut uf), pairing| {
                for i in 0..partitions.len() {
                    let (assign, k) = partitions.get(i);
                    let cell: &mut (u64, u64) = map.entry(k).or_default();
                    cell.0 += 1;
                    if is_connected_raw(pairing, assign, k, &mut uf) {
                        cell.1 += 1;
                    }
                }
                (map, uf)
            },
        )
        .map(|(map, _)| map)
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, (l, c)) in b {
                let cell = a.entry(k).or_default();
                cell.0 += l;
                cell.1 += c;
            }
            a
        });

    let sign = if m % 2 == 0 { 1i64 } else { -1i64 };
    Ok(tally
        .into_iter()
        .map(|(k, (labeled, connected))| CensusRow {
            m,
            k,
            labeled_count: labeled,
            connected_count: connected,
            signed_count: sign * labeled as i64,
            iso_classes: None,
        })
        .collect())
}

/// Checks `|LG(m,k)| / (2m)! = [lambda^k] p_m(lambda)` for every m up to
/// `max_edges` and every k; the census side enumerates, the p_m side is the
/// matchings-times-fat-partitions formula.
pub fn census_vs_pm_check(max_edges: usize, caps: &OracleCaps) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("census vs p_m, m <= {max_edges}"));
    for m in 1..=max_edges {
        let rows = count_labeled_graphs(m, caps)?;
        let pm = crate::genfunc::p_m(m);
        let mut ok = true;
        let mut detail = String::from("all k agree");
        let max_k = 2 * m / 3;
        for k in 1..=max_k.max(1) {
            let from_census = rows
                .iter()
                .find(|r| r.k == k)
                .map(CensusRow::weighted)
                .unwrap_or_else(ExactRational::zero);
            let from_pm = if k <= pm.cap() {
                pm.coeff(k)?.clone()
            } else {
                ExactRational::zero()
            };
            if from_census != from_pm {
                ok = false;
                detail = format!("m={m}, k={k}: census {from_census}, p_m {from_pm}");
                break;
            }
        }
        report.push(format!("m = {m}"), ok, detail);
    }
    Ok(report)
}

/// The exponential formula at census scale: grading graphs by (edges,
/// vertices), the weighted census of all graphs must be exp of the weighted
/// census of connected graphs. Disjoint union adds both gradings, so the
/// identity is closed under truncation at `max_edges`.
pub fn census_exponential_formula_check(
    max_edges: usize,
    caps: &OracleCaps,
) -> Result<CheckReport> {
    let k_cap = (2 * max_edges) / 3;
    let zero_poly = TruncatedSeries::zero(Var::Lambda, k_cap.max(1));
    let mut full = vec![zero_poly.clone(); max_edges + 1];
    let mut connected = vec![zero_poly.clone(); max_edges + 1];
    for m in 0..=max_edges {
        for row in count_labeled_graphs(m, caps)? {
            if row.k > k_cap {
                continue;
            }
            let weight_all = row.weighted();
            let weight_conn = ExactRational::from_big(row.connected_count.into(), factorial(2 * m));
            full[m] = full[m].add(&TruncatedSeries::monomial(
                Var::Lambda,
                k_cap.max(1),
                row.k,
                weight_all,
            ));
            connected[m] = connected[m].add(&TruncatedSeries::monomial(
                Var::Lambda,
                k_cap.max(1),
                row.k,
                weight_conn,
            ));
        }
    }
    // The empty graph is enumerated at (0, 0) and belongs to the full census
    // only; drop it from the connected side.
    let full = TruncatedSeries::from_coeffs(Var::Hbar, full);
    let connected = TruncatedSeries::from_coeffs(Var::Hbar, connected);
    let mut report = CheckReport::new(format!("census exponential formula, m <= {max_edges}"));
    report.push(
        "full census = exp(connected census)",
        connected.exp()? == full,
        "graded by (edges, vertices)",
    );
    Ok(report)
}

/// Compares the census against the F and E series on the hbar orders that
/// the edge cap fully covers: a graph with `-chi = n` has at most 3n edges.
pub fn census_vs_series_check(max_edges: usize, caps: &OracleCaps) -> Result<CheckReport> {
    let order = max_edges / 3;
    let mut report = CheckReport::new(format!(
        "census vs F and E series, m <= {max_edges} (orders <= {order})"
    ));
    let mut rows_by_m = Vec::new();
    for m in 0..=max_edges {
        rows_by_m.push(count_labeled_graphs(m, caps)?);
    }
    let f = crate::genfunc::f_series(order)?;
    let e = crate::genfunc::e_series(order)?;
    for n in 0..=order {
        let mut plain = ExactRational::zero();
        let mut signed = ExactRational::zero();
        for rows in &rows_by_m {
            for row in rows {
                if row.m == row.k + n {
                    let w = row.weighted();
                    if row.m % 2 == 1 {
                        signed -= &w;
                    } else {
                        signed += &w;
                    }
                    plain += &w;
                }
            }
        }
        report.push_eq(format!("sum 1/|Aut| vs [hbar^{n}]F"), &plain, f.coeff(n)?);
        report.push_eq(format!("signed sum vs [hbar^{n}]E"), &signed, e.coeff(n)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_has_no_admissible_graphs() {
        let rows = count_labeled_graphs(1, &OracleCaps::default()).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn m0_is_the_empty_graph() {
        let rows = count_labeled_graphs(0, &OracleCaps::default()).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!((row.m, row.k, row.labeled_count), (0, 0, 1));
        assert_eq!(row.connected_count, 0);
        assert_eq!(row.signed_count, 1);
    }

    #[test]
    fn m2_census_matches_known_weights() {
        // 3 matchings x 1 fat partition of 4 elements; all connected.
        let rows = count_labeled_graphs(2, &OracleCaps::default()).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!((row.k, row.labeled_count, row.connected_count), (1, 3, 3));
        assert_eq!(row.signed_count, 3);
        // 3/4! = 1/8, the figure-eight weight.
        assert_eq!(row.weighted(), ExactRational::new(1, 8));
    }

    #[test]
    fn m3_k2_is_theta_plus_dumbbell() {
        let rows = count_labeled_graphs(3, &OracleCaps::default()).unwrap();
        let row = rows.iter().find(|r| r.k == 2).unwrap();
        // 15 matchings x 10 {3,3}-partitions.
        assert_eq!(row.labeled_count, 150);
        assert_eq!(row.connected_count, 150);
        assert_eq!(row.signed_count, -150);
        // 150/6! = 1/12 + 1/8.
        assert_eq!(row.weighted(), ExactRational::new(5, 24));
    }

    #[test]
    fn census_vs_pm_small() {
        let report = census_vs_pm_check(4, &OracleCaps::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn exponential_formula_small() {
        let report = census_exponential_formula_check(4, &OracleCaps::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn census_vs_series_small() {
        let report = census_vs_series_check(4, &OracleCaps::default()).unwrap();
        assert!(report.passed(), "{report}");
    }
}
