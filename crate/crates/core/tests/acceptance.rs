//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime. Run with
//! `cargo test -p virtchi-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use virtchi_core::genfunc::{self, chi_gc2};
use virtchi_core::oracle::{self, OracleCaps};
use virtchi_core::rational::ExactRational;
use virtchi_core::series::{TruncatedSeries, Var};
use virtchi_core::trees;
use virtchi_core::verify;

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn new(label: &'static str, budget_secs: u64) -> Self {
        Criterion {
            label,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self, passed: bool) {
        let elapsed = self.start.elapsed();
        let within = elapsed <= self.budget;
        println!(
            "[{}] {} ({elapsed:.2?}, budget {:?})",
            if passed && within { "PASS" } else { "FAIL" },
            self.label,
            self.budget,
        );
        assert!(passed, "{} failed", self.label);
        assert!(
            within,
            "{} exceeded its runtime budget: {elapsed:.2?} > {:?}",
            self.label, self.budget
        );
    }
}

#[test]
fn criterion_01_f_series_fixture() {
    let c = Criterion::new("1: F series = 1, 1/3, 41/36", 1);
    let f = genfunc::compute_f(2).unwrap();
    let ok = *f.coefficient(0) == q(1, 1)
        && *f.coefficient(1) == q(1, 3)
        && *f.coefficient(2) == q(41, 36);
    c.finish(ok);
}

#[test]
fn criterion_02_gc2_closed_form_to_order_25() {
    let c = Criterion::new("2: X(25) matches -B_(n+1)/(n(n+1)), evens vanish", 30);
    let x = genfunc::x_series(25).unwrap();
    let mut ok = *x.coeff(1).unwrap() == q(-1, 12) && *x.coeff(3).unwrap() == q(1, 360);
    for n in 1..=25 {
        ok &= *x.coeff(n).unwrap() == chi_gc2(n);
        if n % 2 == 0 {
            ok &= x.coeff(n).unwrap().is_zero();
        }
    }
    c.finish(ok);
}

#[test]
fn criterion_03_out_fn_fixtures_and_negativity() {
    let c = Criterion::new("3: Y fixtures and [hbar^n]Y < 0 for n <= 20", 120);
    let y = trees::y_series(20).unwrap();
    let mut ok = *y.coeff(1).unwrap() == q(-1, 24)
        && *y.coeff(2).unwrap() == q(-1, 48)
        && *y.coeff(3).unwrap() == q(-161, 5760);
    for n in 1..=20 {
        ok &= y.coeff(n).unwrap().is_negative();
    }
    c.finish(ok);
}

#[test]
fn criterion_04_rooted_tree_identity() {
    let c = Criterion::new("4: R(-1,x) = log(1+x) and exp(R) = 1+x to degree 30", 1);
    let r = trees::rooted_gf_signed(30);
    let one_plus_x = TruncatedSeries::one(Var::X, 30).add(&TruncatedSeries::monomial(
        Var::X,
        30,
        1,
        ExactRational::one(),
    ));
    let ok = r == one_plus_x.log().unwrap() && r.exp().unwrap() == one_plus_x;
    c.finish(ok);
}

#[test]
fn criterion_05_tree_counts() {
    let c = Criterion::new(
        "5: tree censuses match the signed closed forms and series",
        60,
    );
    let caps = OracleCaps::default();
    let mut ok = true;
    for n in 1..=7 {
        let got = num::BigInt::from(oracle::tree_census(n, true, &caps).unwrap());
        ok &= got == trees::signed_rooted_count(n);
    }
    for n in 3..=7 {
        let got = num::BigInt::from(oracle::tree_census(n, false, &caps).unwrap());
        ok &= got == trees::signed_tree_count(n);
    }
    // And against n! [x^n] of the generating functions.
    let report = oracle::tree_census_vs_series_check(7, 6, &caps).unwrap();
    ok &= report.passed();
    if !report.passed() {
        eprintln!("{report}");
    }
    c.finish(ok);
}

#[test]
fn criterion_06_oracle_formula_agreement() {
    let c = Criterion::new(
        "6: census = p_m for m <= 5; iso census orbit-stabilizer",
        300,
    );
    let caps = OracleCaps::default();
    let census = oracle::census_vs_pm_check(5, &caps).unwrap();
    if !census.passed() {
        eprintln!("{census}");
    }
    let mut ok = census.passed();

    for m in 2..=4 {
        let rows = oracle::iso_census(m, &caps).unwrap();
        let plain = oracle::count_labeled_graphs(m, &caps).unwrap();
        for row in &rows {
            let classes = row.iso_classes.as_ref().unwrap();
            let reference = plain.iter().find(|r| r.k == row.k).unwrap();
            let orbit_total: u64 = classes.iter().map(|cl| cl.orbit_size).sum();
            ok &= orbit_total == reference.labeled_count;
            let mut weights = ExactRational::zero();
            for class in classes {
                weights += &ExactRational::from_big(1.into(), class.aut_order.into());
            }
            ok &= weights == reference.weighted();
        }
    }

    // Automorphism orders of the three graphs with -chi = 1: 8 (figure-eight),
    // 12 and 8 (theta, dumbbell).
    let rows2 = oracle::iso_census(2, &caps).unwrap();
    let auts2: Vec<u64> = rows2[0]
        .iso_classes
        .as_ref()
        .unwrap()
        .iter()
        .map(|cl| cl.aut_order)
        .collect();
    ok &= auts2 == vec![8];
    let rows3 = oracle::iso_census(3, &caps).unwrap();
    let mut auts3: Vec<u64> = rows3
        .iter()
        .find(|r| r.k == 2)
        .unwrap()
        .iso_classes
        .as_ref()
        .unwrap()
        .iter()
        .map(|cl| cl.aut_order)
        .collect();
    auts3.sort_unstable();
    ok &= auts3 == vec![8, 12];
    c.finish(ok);
}

#[test]
fn criterion_07_pair_oracle() {
    let c = Criterion::new(
        "7: pair_sum(1) = -1/24 and pair_sum(2) = -1/48 = Y coefficients",
        600,
    );
    let caps = OracleCaps::default();
    let y = trees::y_series(2).unwrap();
    let p1 = oracle::pair_sum(1, &caps).unwrap();
    let p2 = oracle::pair_sum(2, &caps).unwrap();
    let ok = p1 == q(-1, 24)
        && p2 == q(-1, 48)
        && p1 == *y.coeff(1).unwrap()
        && p2 == *y.coeff(2).unwrap();
    c.finish(ok);
}

#[test]
fn criterion_08_exponential_formula() {
    let c = Criterion::new("8: exp(X) = E and exp(Y) = Wick sum at order 10", 10);
    let e = genfunc::e_series(10).unwrap();
    let x = genfunc::x_series(10).unwrap();
    let w = trees::exp_y_series(10).unwrap();
    let y = trees::y_series(10).unwrap();
    let ok = x.exp().unwrap() == e && y.exp().unwrap() == w;
    c.finish(ok);
}

#[test]
fn criterion_09_renormalization_identity() {
    let c = Criterion::new("9: renorm_check(8) = 1 + 0 hbar + ... + 0 hbar^8", 60);
    let report = trees::renorm_check(8).unwrap();
    if !report.passed() {
        eprintln!("{report}");
    }
    c.finish(report.passed());
}

#[test]
fn criterion_10_truncation_stability() {
    let c = Criterion::new(
        "10: x-cap 6N+2 leaves all series unchanged through hbar^N",
        60,
    );
    let report = verify::truncation_stability_check(6).unwrap();
    if !report.passed() {
        eprintln!("{report}");
    }
    c.finish(report.passed());
}
