//! Integration cross-checks between the enumeration oracle and the
//! generating functions, at sizes above the unit tests.

use virtchi_core::genfunc::{double_factorial, fat_partition_gf};
use virtchi_core::oracle::{self, OracleCaps};
use virtchi_core::rational::{factorial, ExactRational};

#[test]
fn matching_counts_are_double_factorials_up_to_twelve() {
    let caps = OracleCaps::default();
    for m in 0..=6 {
        let mut count = num::BigInt::from(0);
        oracle::enumerate_matchings(2 * m, &caps, |_| count += 1).unwrap();
        assert_eq!(count, double_factorial(m), "2m = {}", 2 * m);
    }
}

#[test]
fn fat_partition_counts_match_generating_function() {
    let caps = OracleCaps::default();
    for n in 0..=9 {
        let by_k = oracle::fat_partition_counts_by_k(n, &caps).unwrap();
        let gf = fat_partition_gf(n.max(1), n.max(1));
        let max_k = n / 3;
        for k in 0..=max_k.max(1) {
            let enumerated = by_k.get(&k).copied().unwrap_or(0);
            let coefficient = if n <= gf.cap() && k <= gf.coeff(n).unwrap().cap() {
                gf.coeff(n).unwrap().coeff(k).unwrap().clone()
            } else {
                ExactRational::zero()
            };
            // n! [lambda^k x^n] exp(lambda Phi) counts the partitions.
            let expected = coefficient * ExactRational::from_bigint(factorial(n));
            assert_eq!(
                ExactRational::from_integer(enumerated as i64),
                expected,
                "n={n}, k={k}"
            );
        }
    }
}

#[test]
fn census_agrees_with_signed_series_at_order_one() {
    let report = oracle::census_vs_series_check(4, &OracleCaps::default()).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn census_exponential_formula_at_four_edges() {
    let report = oracle::census_exponential_formula_check(4, &OracleCaps::default()).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn iso_routes_agree_at_four_edges() {
    // The backtracking canonicalizer against the transposition-closure
    // route, at the largest default size.
    let caps = OracleCaps::default();
    let rows = oracle::iso_census(4, &caps).unwrap();
    let closure = oracle::iso::iso_census_by_orbit_closure(4, &caps).unwrap();
    for row in &rows {
        let classes = row.iso_classes.as_ref().unwrap();
        let (_, reference) = closure.iter().find(|(k, _)| *k == row.k).unwrap();
        assert_eq!(classes.len(), reference.len(), "k = {}", row.k);
        for (a, b) in classes.iter().zip(reference) {
            assert_eq!(a.canonical, b.0);
            assert_eq!(a.orbit_size, b.1);
        }
    }
}

#[test]
fn tree_product_route_at_six_legs() {
    let caps = OracleCaps::default();
    let direct = oracle::tree_census_detailed(6, false, &caps).unwrap();
    let product = oracle::tree_census_product_route(6, &caps).unwrap();
    assert_eq!(direct, product);
}

#[test]
fn half_edge_graph_round_trip_through_census() {
    // Rebuild the canonical m = 2 class as a half-edge graph and check its
    // reported shape.
    let rows = oracle::iso_census(2, &OracleCaps::default()).unwrap();
    let class = &rows[0].iso_classes.as_ref().unwrap()[0];
    let pairing = class.canonical.pairing.clone();
    let mut blocks = Vec::new();
    let mut start = 0;
    for &s in &class.canonical.block_sizes {
        blocks.push((start..start + s).collect::<Vec<_>>());
        start += s;
    }
    let g = oracle::HalfEdgeGraph::new(pairing, blocks);
    assert!(g.is_admissible_leafless());
    assert!(g.connected());
    assert_eq!(g.euler_characteristic(), -1);
}
