//! Enumeration of leaf-labeled admissible trees.
//!
//! Leaf-labeled admissible trees are rigid (an automorphism fixing every
//! leaf is the identity), so they can be generated one by one: a tree hangs
//! from its top leg as a vertex with at least two branches, and the branches
//! partition the leaf set. Each generated tree is materialized as a
//! [`HalfEdgeGraph`] with the leaves as involution fixed points and run
//! through the graph machinery's admissibility, connectivity and acyclicity
//! checks.
//!
//! A second, independent route enumerates (fat partition, matching) pairs
//! with the leaf labels pinned to fixed points and filters for spanning
//! trees; dividing by the internal relabelings recovers the same counts.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::graph::{HalfEdgeGraph, UnionFind};
use crate::oracle::matchings::match_range;
use crate::oracle::partitions::enumerate_fat_partitions_raw;
use crate::oracle::OracleCaps;
use crate::rational::{factorial, ExactRational};
use crate::report::CheckReport;
use crate::trees::{signed_rooted_count, signed_tree_count};

/// Count of leaf-labeled trees with a fixed number of internal vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TreeCensusRow {
    pub vertices: usize,
    pub count: u64,
}

/// A rooted tree shape over a set of labeled leaves: either a bare leaf
/// hanging from the top leg, or an internal vertex with >= 2 branches.
#[derive(Clone, Debug)]
enum TreeShape {
    Leaf(usize),
    Vertex(Vec<TreeShape>),
}

impl TreeShape {
    fn vertex_count(&self) -> usize {
        match self {
            TreeShape::Leaf(_) => 0,
            TreeShape::Vertex(children) => {
                1 + children.iter().map(TreeShape::vertex_count).sum::<usize>()
            }
        }
    }
}

/// All set partitions of `labels` into at least two blocks.
fn partitions_into_blocks(labels: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        labels: &[usize],
        i: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == labels.len() {
            if blocks.len() >= 2 {
                out.push(blocks.clone());
            }
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(labels[i]);
            rec(labels, i + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![labels[i]]);
        rec(labels, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(labels, 0, &mut Vec::new(), &mut out);
    out
}

/// Every rooted tree shape over the given leaf labels, each exactly once.
fn gen_shapes(labels: &[usize]) -> Vec<TreeShape> {
    if labels.len() == 1 {
        return vec![TreeShape::Leaf(labels[0])];
    }
    let mut out = Vec::new();
    for blocks in partitions_into_blocks(labels) {
        let options: Vec<Vec<TreeShape>> = blocks.iter().map(|b| gen_shapes(b)).collect();
        // Cartesian product over the branch choices.
        let mut idx = vec![0usize; options.len()];
        loop {
            let children: Vec<TreeShape> = idx
                .iter()
                .zip(&options)
                .map(|(&i, opts)| opts[i].clone())
                .collect();
            out.push(TreeShape::Vertex(children));
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    out
}

/// Realizes a vertex-topped shape as a half-edge graph with `legs` fixed
/// points: leg ids are the leaf labels plus the top leg `legs - 1`, and
/// internal half-edges are numbered upward from `legs` in discovery order.
fn materialize(shape: &TreeShape, legs: usize) -> HalfEdgeGraph {
    let v = shape.vertex_count();
    assert!(v >= 1, "bare shapes have no vertex to materialize");
    let h = legs + 2 * (v - 1);
    let mut pairing: Vec<usize> = (0..h).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut next = legs;
    build(shape, legs - 1, &mut pairing, &mut blocks, &mut next);
    assert_eq!(next, h);
    HalfEdgeGraph::new(pairing, blocks)
}

fn build(
    shape: &TreeShape,
    parent_half_edge: usize,
    pairing: &mut [usize],
    blocks: &mut Vec<Vec<usize>>,
    next: &mut usize,
) {
    let TreeShape::Vertex(children) = shape else {
        unreachable!("build is only called on vertices");
    };
    let my = blocks.len();
    blocks.push(Vec::new());
    let mut block = vec![parent_half_edge];
    for child in children {
        match child {
            TreeShape::Leaf(l) => block.push(*l),
            TreeShape::Vertex(_) => {
                let a = *next;
                let b = *next + 1;
                *next += 2;
                pairing[a] = b;
                pairing[b] = a;
                block.push(a);
                build(child, b, pairing, blocks, next);
            }
        }
    }
    blocks[my] = block;
}

/// Per-vertex-count census of leaf-labeled admissible trees.
///
/// Rooted trees carry `leaves` labeled leaves plus the distinguished
/// univalent root; unrooted trees with n leaves are, except for the bare
/// root-leaf tree, in bijection with rooted trees on n-1 leaves by rooting
/// at the highest leaf.
pub fn tree_census_detailed(
    leaves: usize,
    rooted: bool,
    caps: &OracleCaps,
) -> Result<Vec<TreeCensusRow>> {
    assert!(leaves >= 1);
    if leaves > caps.max_tree_leaves {
        return Err(Error::CapExceeded {
            what: "tree census leaves",
            requested: leaves,
            cap: caps.max_tree_leaves,
        });
    }
    let gen_labels: Vec<usize> = if rooted {
        (0..leaves).collect()
    } else {
        if leaves < 3 {
            // No admissible tree has fewer than three leaves.
            return Ok(Vec::new());
        }
        (0..leaves - 1).collect()
    };
    let legs = gen_labels.len() + 1;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for shape in gen_shapes(&gen_labels) {
        let v = shape.vertex_count();
        if v > 0 {
            let g = materialize(&shape, legs);
            assert!(
                g.is_admissible_tree(),
                "generated shape failed the graph filters"
            );
            assert_eq!(g.leaf_count(), legs);
            assert_eq!(g.vertex_count(), v);
            assert_eq!(g.euler_characteristic(), 1);
        }
        *counts.entry(v).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(vertices, count)| TreeCensusRow { vertices, count })
        .collect())
}

/// Signed census: the sum of (-1)^v over leaf-labeled admissible trees.
/// Equals `(-1)^(n+1) (n-1)!` rooted and `(-1)^n (n-2)!` unrooted.
pub fn tree_census(leaves: usize, rooted: bool, caps: &OracleCaps) -> Result<i64> {
    let rows = tree_census_detailed(leaves, rooted, caps)?;
    Ok(rows
        .iter()
        .map(|r| {
            let signed = r.count as i64;
            if r.vertices % 2 == 1 {
                -signed
            } else {
                signed
            }
        })
        .sum())
}

/// Independent product route: fat partitions of all `h` half-edges times
/// matchings of the internal half-edges, with the `legs` leaf labels pinned
/// as fixed points, filtered to spanning trees. Dividing the raw tally by
/// the internal relabelings `(h - legs)!` recovers the leaf-labeled count.
pub fn tree_census_product_route(legs: usize, caps: &OracleCaps) -> Result<Vec<TreeCensusRow>> {
    if legs > caps.max_tree_leaves {
        return Err(Error::CapExceeded {
            what: "tree census legs",
            requested: legs,
            cap: caps.max_tree_leaves,
        });
    }
    if legs < 3 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for v in 1..=legs - 2 {
        let internal = 2 * (v - 1);
        let h = legs + internal;
        // Collect only the fat partitions with exactly v blocks.
        let mut assigns: Vec<u8> = Vec::new();
        enumerate_fat_partitions_raw(h, &mut |assign, k| {
            if k == v {
                assigns.extend_from_slice(assign);
            }
        });
        let partition_count = assigns.len() / h.max(1);

        let raw: u64 = (0..partition_count)
            .into_par_iter()
            .map_init(
                || ((0..h).collect::<Vec<usize>>(), UnionFind::new(v)),
                |(pairing, uf), p| {
                    let assign = &assigns[p * h..(p + 1) * h];
                    for (i, slot) in pairing.iter_mut().enumerate() {
                        *slot = i;
                    }
                    let mut count = 0u64;
                    match_range(pairing, legs, h, &mut |pr| {
                        uf.reset(v);
                        let mut ok = true;
                        for i in legs..h {
                            let j = pr[i];
                            if i < j {
                                let a = assign[i] as usize;
                                let b = assign[j] as usize;
                                if a == b || uf.union(a, b).is_none() {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok && uf.components() == 1 {
                            count += 1;
                        }
                    });
                    count
                },
            )
            .sum();

        let relabelings: u64 = (1..=internal as u64).product();
        assert_eq!(
            raw % relabelings,
            0,
            "internal labels act freely on rigid trees"
        );
        let count = raw / relabelings;
        if count > 0 {
            rows.push(TreeCensusRow { vertices: v, count });
        }
    }
    Ok(rows)
}

/// Tree censuses against the generating functions and closed forms.
pub fn tree_census_vs_series_check(
    max_leaves: usize,
    product_legs: usize,
    caps: &OracleCaps,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!(
        "tree census vs series, leaves <= {max_leaves}, product route <= {product_legs}"
    ));

    // Rooted census per vertex count against the symbolic-lambda series.
    let symbolic = crate::trees::rooted_gf_symbolic(max_leaves, max_leaves);
    let mut per_v_ok = true;
    let mut per_v_detail = String::from("all (leaves, vertices) cells agree");
    'outer: for n in 1..=max_leaves {
        let rows = tree_census_detailed(n, true, caps)?;
        let poly = symbolic.coeff(n)?;
        for v in 0..=poly.cap() {
            let from_series = poly.coeff(v)? * &ExactRational::from_bigint(factorial(n));
            let from_census = rows
                .iter()
                .find(|r| r.vertices == v)
                .map(|r| ExactRational::from_integer(r.count as i64))
                .unwrap_or_else(ExactRational::zero);
            if from_series != from_census {
                per_v_ok = false;
                per_v_detail = format!("n={n}, v={v}: census {from_census}, series {from_series}");
                break 'outer;
            }
        }
    }
    report.push(
        "rooted census = n! [lambda^v x^n] R(lambda, x)",
        per_v_ok,
        per_v_detail,
    );

    // Signed totals against the closed forms.
    let mut rooted_ok = true;
    let mut rooted_detail = String::from("all n agree");
    for n in 1..=max_leaves {
        let got = tree_census(n, true, caps)?;
        if num::BigInt::from(got) != signed_rooted_count(n) {
            rooted_ok = false;
            rooted_detail = format!("n={n}: census {got}, formula {}", signed_rooted_count(n));
            break;
        }
    }
    report.push(
        "rooted signed census = (-1)^(n+1) (n-1)!",
        rooted_ok,
        rooted_detail,
    );

    let mut unrooted_ok = true;
    let mut unrooted_detail = String::from("all n agree");
    for n in 3..=max_leaves {
        let got = tree_census(n, false, caps)?;
        if num::BigInt::from(got) != signed_tree_count(n) {
            unrooted_ok = false;
            unrooted_detail = format!("n={n}: census {got}, formula {}", signed_tree_count(n));
            break;
        }
    }
    report.push(
        "unrooted signed census = (-1)^n (n-2)!",
        unrooted_ok,
        unrooted_detail,
    );

    // Unrooted totals against n! [x^n] T(x).
    let t = crate::trees::tree_gf(max_leaves.max(3));
    let mut t_ok = true;
    let mut t_detail = String::from("all n agree");
    for n in 3..=max_leaves {
        let from_series = t.coeff(n)? * &ExactRational::from_bigint(factorial(n));
        let from_census = ExactRational::from_integer(tree_census(n, false, caps)?);
        if from_series != from_census {
            t_ok = false;
            t_detail = format!("n={n}: census {from_census}, series {from_series}");
            break;
        }
    }
    report.push("unrooted signed census = n! [x^n] T", t_ok, t_detail);

    // The half-edge product route against the recursive generator.
    let mut product_ok = true;
    let mut product_detail = String::from("all legs agree");
    for legs in 3..=product_legs {
        let direct = tree_census_detailed(legs, false, caps)?;
        let product = tree_census_product_route(legs, caps)?;
        if direct != product {
            product_ok = false;
            product_detail = format!("legs={legs}: direct {direct:?}, product {product:?}");
            break;
        }
    }
    report.push(
        "product route matches recursive census",
        product_ok,
        product_detail,
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> OracleCaps {
        OracleCaps::default()
    }

    #[test]
    fn rooted_small_counts() {
        // n=1: just the bare root-leaf tree.
        assert_eq!(tree_census(1, true, &caps()).unwrap(), 1);
        // n=2: one tree with a single internal vertex, sign -1.
        assert_eq!(tree_census(2, true, &caps()).unwrap(), -1);
        // n=3: the star (v=1) and three cherries (v=2): -1 + 3 = 2.
        let rows = tree_census_detailed(3, true, &caps()).unwrap();
        assert_eq!(
            rows,
            vec![
                TreeCensusRow {
                    vertices: 1,
                    count: 1
                },
                TreeCensusRow {
                    vertices: 2,
                    count: 3
                }
            ]
        );
        assert_eq!(tree_census(3, true, &caps()).unwrap(), 2);
    }

    #[test]
    fn unrooted_small_counts() {
        assert_eq!(tree_census(3, false, &caps()).unwrap(), -1);
        assert_eq!(tree_census(4, false, &caps()).unwrap(), 2);
        // No admissible trees below three leaves.
        assert!(tree_census_detailed(2, false, &caps()).unwrap().is_empty());
    }

    #[test]
    fn rooted_census_matches_closed_form_through_six() {
        for n in 1..=6 {
            let got = tree_census(n, true, &caps()).unwrap();
            assert_eq!(num::BigInt::from(got), signed_rooted_count(n), "n={n}");
        }
    }

    #[test]
    fn unsigned_totals_match_lambda_one_series() {
        // Total rooted trees (all signs +) against R(1, x): 1, 1, 4, 26, 236.
        let expected = [1u64, 1, 4, 26, 236];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let total: u64 = tree_census_detailed(n, true, &caps())
                .unwrap()
                .iter()
                .map(|r| r.count)
                .sum();
            assert_eq!(total, want, "n={n}");
        }
    }

    #[test]
    fn product_route_matches_recursive_route() {
        for legs in 3..=5 {
            let direct = tree_census_detailed(legs, false, &caps()).unwrap();
            let product = tree_census_product_route(legs, &caps()).unwrap();
            assert_eq!(direct, product, "legs={legs}");
        }
    }

    #[test]
    fn census_vs_series_check_small() {
        let report = tree_census_vs_series_check(5, 4, &caps()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn over_cap_is_refused() {
        let err = tree_census(8, true, &caps()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}
