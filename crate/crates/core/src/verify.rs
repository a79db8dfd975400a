//! Named verification suites that bundle the cross-checks between the
//! series engine, the closed forms and the enumeration oracle.

use std::str::FromStr;
use std::time::Instant;

use crate::error::Result;
use crate::genfunc;
use crate::oracle::{self, OracleCaps};
use crate::report::CheckReport;
use crate::trees;

/// Which checks to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    Gc2,
    Trees,
    Oracle,
    Renorm,
}

/// Parse failure for [`Suite::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {input:?}; expected all, gc2, trees, oracle or renorm")]
pub struct ParseSuiteError {
    input: String,
}

impl FromStr for Suite {
    type Err = ParseSuiteError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" => Ok(Suite::All),
            "gc2" => Ok(Suite::Gc2),
            "trees" => Ok(Suite::Trees),
            "oracle" => Ok(Suite::Oracle),
            "renorm" => Ok(Suite::Renorm),
            _ => Err(ParseSuiteError {
                input: s.to_owned(),
            }),
        }
    }
}

/// Tuning knobs for the suites; the defaults are the desk-scale settings.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Order for the gc2 closed-form comparison.
    pub gc2_order: usize,
    /// Order for the exponential-formula identities.
    pub exp_formula_order: usize,
    /// Order for the truncation-stability recomputation.
    pub stability_order: usize,
    /// x-cap for the rooted-tree identities.
    pub tree_x_cap: usize,
    /// Order for the negativity scan of Y.
    pub negativity_order: usize,
    /// Order for the renormalized identity.
    pub renorm_order: usize,
    /// Edge bound for the labeled census comparisons.
    pub census_max_edges: usize,
    /// Edge bound for the isomorphism census.
    pub iso_max_edges: usize,
    /// Rank-defect bound for the pair oracle.
    pub pair_max_defect: usize,
    /// Leaf bound for the tree censuses.
    pub tree_max_leaves: usize,
    /// Leg bound for the product-route tree cross-check.
    pub tree_product_legs: usize,
    pub caps: OracleCaps,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            gc2_order: 25,
            exp_formula_order: 10,
            stability_order: 6,
            tree_x_cap: 30,
            negativity_order: 20,
            renorm_order: 4,
            census_max_edges: 5,
            iso_max_edges: 4,
            pair_max_defect: 2,
            tree_max_leaves: 7,
            tree_product_legs: 6,
            caps: OracleCaps::default(),
        }
    }
}

/// Recomputing the Wick-based series with x-cap 6N+2 instead of 6N must not
/// change any coefficient through hbar^N: the cap schedule is provably
/// sufficient, and this check keeps it observable.
pub fn truncation_stability_check(order: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("truncation stability, order {order}"));
    let base = 6 * order;

    let f6 = genfunc::f_series_at_cap(order, base)?;
    let f6p = genfunc::f_series_at_cap(order, base + 2)?;
    report.push("F unchanged at x-cap 6N+2", f6 == f6p, "coefficientwise");

    let e6 = genfunc::e_series_at_cap(order, base)?;
    let e6p = genfunc::e_series_at_cap(order, base + 2)?;
    report.push("E unchanged at x-cap 6N+2", e6 == e6p, "coefficientwise");
    report.push(
        "X unchanged at x-cap 6N+2",
        e6.log()? == e6p.log()?,
        "coefficientwise",
    );

    let w6 = trees::exp_y_series_at_cap(order, base)?;
    let w6p = trees::exp_y_series_at_cap(order, base + 2)?;
    report.push(
        "exp(Y) unchanged at x-cap 6N+2",
        w6 == w6p,
        "coefficientwise",
    );
    report.push(
        "Y unchanged at x-cap 6N+2",
        w6.log()? == w6p.log()?,
        "coefficientwise",
    );
    Ok(report)
}

fn timed(mut make: impl FnMut() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = make()?;
    report.runtime = Some(start.elapsed());
    Ok(report)
}

fn gc2_suite(opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    Ok(vec![
        timed(|| genfunc::verify_gc2(opts.gc2_order))?,
        timed(|| genfunc::exp_x_equals_e_check(opts.exp_formula_order))?,
        timed(|| genfunc::e_route_agreement_check(opts.exp_formula_order))?,
        timed(|| genfunc::f_positivity_check(opts.exp_formula_order))?,
        timed(|| Ok(genfunc::p_m_properties_check(8)))?,
        timed(|| truncation_stability_check(opts.stability_order))?,
    ])
}

fn trees_suite(opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    Ok(vec![
        timed(|| Ok(trees::tree_identities_check(opts.tree_x_cap)))?,
        timed(|| trees::exp_y_equals_wick_check(opts.exp_formula_order))?,
        timed(|| trees::negativity_scan(opts.negativity_order))?,
    ])
}

fn oracle_suite(opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let caps = &opts.caps;
    Ok(vec![
        timed(|| oracle::census_vs_pm_check(opts.census_max_edges, caps))?,
        timed(|| oracle::census_vs_series_check(opts.census_max_edges, caps))?,
        timed(|| oracle::census_exponential_formula_check(opts.census_max_edges, caps))?,
        timed(|| iso_checks(opts.iso_max_edges, caps))?,
        timed(|| {
            oracle::tree_census_vs_series_check(opts.tree_max_leaves, opts.tree_product_legs, caps)
        })?,
        timed(|| oracle::pair_sum_vs_y_check(opts.pair_max_defect, caps))?,
    ])
}

/// Orbit-stabilizer identities on the isomorphism census, plus the known
/// |Aut| values for the three graphs with -chi = 1.
fn iso_checks(max_edges: usize, caps: &OracleCaps) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("iso census orbit-stabilizer, m <= {max_edges}"));
    for m in 2..=max_edges {
        let rows = oracle::iso_census(m, caps)?;
        let plain = oracle::count_labeled_graphs(m, caps)?;
        let mut ok = true;
        let mut detail =
            String::from("orbits partition the labeled graphs; weights sum to |LG|/(2m)!");
        for row in &rows {
            let classes = row.iso_classes.as_ref().unwrap();
            let orbit_total: u64 = classes.iter().map(|c| c.orbit_size).sum();
            let reference = plain.iter().find(|r| r.k == row.k).unwrap();
            if orbit_total != reference.labeled_count {
                ok = false;
                detail = format!(
                    "m={m}, k={}: orbits {orbit_total} vs labeled {}",
                    row.k, reference.labeled_count
                );
                break;
            }
            // sum over classes of 1/|Aut| = labeled/(2m)!.
            let mut weight_sum = crate::rational::ExactRational::zero();
            for class in classes {
                weight_sum +=
                    &crate::rational::ExactRational::from_big(1.into(), class.aut_order.into());
            }
            if weight_sum != reference.weighted() {
                ok = false;
                detail = format!(
                    "m={m}, k={}: weight sum {weight_sum} vs {}",
                    row.k,
                    reference.weighted()
                );
                break;
            }
        }
        report.push(format!("m = {m}"), ok, detail);
    }

    // Second route to the same classes: orbit closure under adjacent label
    // transpositions, with no canonicalizer involved.
    for m in 2..=max_edges.min(3) {
        let rows = oracle::iso_census(m, caps)?;
        let closure = oracle::iso::iso_census_by_orbit_closure(m, caps)?;
        let mut ok = true;
        let mut detail = String::from("classes, canonical forms and orbit sizes agree");
        for row in &rows {
            let classes = row.iso_classes.as_ref().unwrap();
            let by_closure = closure
                .iter()
                .find(|(k, _)| *k == row.k)
                .map(|(_, c)| c.as_slice())
                .unwrap_or(&[]);
            if classes.len() != by_closure.len()
                || classes
                    .iter()
                    .zip(by_closure)
                    .any(|(a, b)| a.canonical != b.0 || a.orbit_size != b.1)
            {
                ok = false;
                detail = format!("m={m}, k={}: routes disagree", row.k);
                break;
            }
        }
        report.push(format!("orbit-closure route agrees, m = {m}"), ok, detail);
    }

    // The weights at -chi = 1: the figure-eight has |Aut| = 8, the
    // theta and dumbbell have 12 and 8.
    let rows2 = oracle::iso_census(2, caps)?;
    let auts2: Vec<u64> = rows2
        .iter()
        .find(|r| r.k == 1)
        .map(|r| {
            r.iso_classes
                .as_ref()
                .unwrap()
                .iter()
                .map(|c| c.aut_order)
                .collect()
        })
        .unwrap_or_default();
    report.push(
        "m=2, k=1 has |Aut| = {8}",
        auts2 == vec![8],
        format!("{auts2:?}"),
    );
    let rows3 = oracle::iso_census(3, caps)?;
    let mut auts3: Vec<u64> = rows3
        .iter()
        .find(|r| r.k == 2)
        .map(|r| {
            r.iso_classes
                .as_ref()
                .unwrap()
                .iter()
                .map(|c| c.aut_order)
                .collect()
        })
        .unwrap_or_default();
    auts3.sort_unstable();
    report.push(
        "m=3, k=2 has |Aut| = {8, 12}",
        auts3 == vec![8, 12],
        format!("{auts3:?}"),
    );
    let auts31: Vec<u64> = rows3
        .iter()
        .find(|r| r.k == 1)
        .map(|r| {
            r.iso_classes
                .as_ref()
                .unwrap()
                .iter()
                .map(|c| c.aut_order)
                .collect()
        })
        .unwrap_or_default();
    report.push(
        "m=3, k=1 (three-loop rose) has |Aut| = {48}",
        auts31 == vec![48],
        format!("{auts31:?}"),
    );
    Ok(report)
}

fn renorm_suite(opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    Ok(vec![timed(|| trees::renorm_check(opts.renorm_order))?])
}

/// Runs a suite and returns its reports, each stamped with its runtime.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    match suite {
        Suite::All => {
            reports.extend(gc2_suite(opts)?);
            reports.extend(trees_suite(opts)?);
            reports.extend(oracle_suite(opts)?);
            reports.extend(renorm_suite(opts)?);
        }
        Suite::Gc2 => reports.extend(gc2_suite(opts)?),
        Suite::Trees => reports.extend(trees_suite(opts)?),
        Suite::Oracle => reports.extend(oracle_suite(opts)?),
        Suite::Renorm => reports.extend(renorm_suite(opts)?),
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert_eq!("GC2".parse::<Suite>().unwrap(), Suite::Gc2);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn truncation_stability_small() {
        let report = truncation_stability_check(2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn quick_suites_pass() {
        let opts = VerifyOptions {
            gc2_order: 6,
            exp_formula_order: 4,
            stability_order: 2,
            tree_x_cap: 8,
            negativity_order: 5,
            renorm_order: 2,
            census_max_edges: 3,
            iso_max_edges: 3,
            pair_max_defect: 1,
            tree_max_leaves: 5,
            tree_product_legs: 4,
            caps: OracleCaps::default(),
        };
        for suite in [Suite::Gc2, Suite::Trees, Suite::Renorm] {
            let reports = run_suite(suite, &opts).unwrap();
            for r in &reports {
                assert!(r.passed(), "{r}");
                assert!(r.runtime.is_some());
            }
        }
    }
}
