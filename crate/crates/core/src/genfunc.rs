//! Graph-counting generating functions.
//!
//! The pipeline: a potential (an x-series vanishing below degree 3) is placed
//! in the exponent with a power of `hbar^{-1}`, and the Wick operator
//! `x^{2m} -> (2m-1)!! hbar^m` turns the exponential into a series in hbar.
//! With the potential `e^x - 1 - x - x^2/2` this yields
//!
//! * `F(hbar)`: all admissible leafless graphs weighted by `1/|Aut(G)|`,
//! * `E(hbar)`: the same graphs signed by edge count,
//! * `X(hbar) = log E(hbar)`: connected signed graphs, whose coefficients are
//!   the virtual Euler characteristics of the even commutative graph complex,
//!   with the closed form `-B_{n+1}/(n(n+1))` at odd n and 0 at even n.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::One;

use crate::error::{Error, Result};
use crate::laurent::HbarLaurent;
use crate::rational::{factorial, ExactRational};
use crate::report::{CheckReport, SeriesName, SeriesReport};
use crate::series::{LambdaPoly, TruncatedSeries, Var};

/// Sign of the `hbar^{-1}` action term inside the Wick operand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn to_rational(self) -> ExactRational {
        match self {
            Sign::Plus => ExactRational::one(),
            Sign::Minus => -ExactRational::one(),
        }
    }
}

/// An interaction potential: an x-series with no terms below `min_degree`.
///
/// Only the two potentials of the counting problems are constructed here and
/// by the tree module; the degree bound is what makes Wick truncation sound.
#[derive(Clone, PartialEq, Debug)]
pub struct PotentialSpec {
    name: String,
    series: TruncatedSeries<ExactRational>,
    min_degree: usize,
}

impl PotentialSpec {
    pub fn new(
        name: impl Into<String>,
        series: TruncatedSeries<ExactRational>,
        min_degree: usize,
    ) -> Self {
        assert!(min_degree >= 3, "graph potentials need min_degree >= 3");
        assert_eq!(series.var(), Var::X);
        for d in 0..min_degree.min(series.cap() + 1) {
            assert!(
                series.coeff(d).unwrap().is_zero(),
                "potential has a term below its min_degree"
            );
        }
        PotentialSpec {
            name: name.into(),
            series,
            min_degree,
        }
    }

    /// `e^x - 1 - x - x^2/2`, the vertex potential of admissible graphs.
    pub fn graph_potential(x_cap: usize) -> Self {
        let coeffs = (0..=x_cap)
            .map(|d| {
                if d >= 3 {
                    ExactRational::inv_factorial(d)
                } else {
                    ExactRational::zero()
                }
            })
            .collect();
        PotentialSpec::new("graph", TruncatedSeries::from_coeffs(Var::X, coeffs), 3)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &TruncatedSeries<ExactRational> {
        &self.series
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }
}

/// (2m-1)!!, the number of perfect matchings of 2m points; (-1)!! = 1.
pub fn double_factorial(m: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=m {
        acc *= BigInt::from(2 * i - 1);
    }
    acc
}

/// exp(lambda (e^x - 1 - x - x^2/2)): the coefficient of
/// `lambda^k x^n / n!` counts partitions of an n-set into k blocks of size
/// at least 3.
pub fn fat_partition_gf(x_cap: usize, lambda_cap: usize) -> TruncatedSeries<LambdaPoly> {
    let phi = PotentialSpec::graph_potential(x_cap);
    let coeffs: Vec<LambdaPoly> = (0..=x_cap)
        .map(|d| {
            let c = phi.series().coeff(d).unwrap();
            if c.is_zero() || lambda_cap == 0 {
                LambdaPoly::zero(Var::Lambda, lambda_cap)
            } else {
                LambdaPoly::monomial(Var::Lambda, lambda_cap, 1, c.clone())
            }
        })
        .collect();
    TruncatedSeries::from_coeffs(Var::X, coeffs)
        .exp()
        .expect("lambda*potential has zero constant term")
}

/// The polynomial `p_m(lambda) = (2m-1)!! [x^{2m}] exp(lambda Phi)`; its
/// `lambda^k` coefficient is `|LG(m,k)| / (2m)!`.
pub fn p_m(m: usize) -> LambdaPoly {
    assert!(m >= 1, "p_m is defined for m >= 1");
    // The lambda cap 2m is deliberately above the true degree bound 2m/3 so
    // the bound stays observable.
    let gf = fat_partition_gf(2 * m, 2 * m);
    gf.coeff(2 * m)
        .unwrap()
        .scale(&ExactRational::from_bigint(double_factorial(m)))
}

/// Checks the structural bound: the coefficient of `x^d` must have
/// hbar-valuation at least `-floor(d/3)` (each `hbar^{-1}` enters with at
/// least three powers of x).
pub fn check_valuation_bound(operand: &TruncatedSeries<HbarLaurent>) -> Result<()> {
    for d in 0..=operand.cap() {
        if let Some(val) = operand.coeff(d)?.valuation() {
            let bound = -((d / 3) as i64);
            if val < bound {
                return Err(Error::ValuationTooLow {
                    degree: d,
                    valuation: val,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// Builds `exp(sign * hbar^{-1} * potential)` as an x-series over Laurent
/// coefficients, and validates the valuation bound on the result.
///
/// `hbar_cap` = N is sound for a Wick sum to order N: a term of exponent
/// `e > N` at x-degree d can only reach final order `e + (d + d')/2 - floor(d'/3)
/// > N` against partners that satisfy the valuation bound.
pub fn action_exponential(
    potential: &PotentialSpec,
    sign: Sign,
    hbar_cap: i64,
) -> Result<TruncatedSeries<HbarLaurent>> {
    let s = sign.to_rational();
    let coeffs: Vec<HbarLaurent> = potential
        .series()
        .coeffs()
        .iter()
        .map(|c| HbarLaurent::monomial(-1, c * &s, hbar_cap))
        .collect();
    let operand = TruncatedSeries::from_coeffs(Var::X, coeffs).exp()?;
    check_valuation_bound(&operand)?;
    Ok(operand)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum WickSigns {
    Plain,
    /// Weight each x^{2m} extraction by (-1)^m, i.e. sign by edge count.
    Alternating,
}

fn wick_sum_impl(
    operand: &TruncatedSeries<HbarLaurent>,
    order: usize,
    signs: WickSigns,
) -> Result<TruncatedSeries<ExactRational>> {
    if operand.cap() < 6 * order {
        return Err(Error::InsufficientXCap {
            have: operand.cap(),
            need: 6 * order,
            order,
        });
    }
    let mut acc: BTreeMap<i64, ExactRational> = BTreeMap::new();
    let mut df = ExactRational::one();
    for m in 0..=operand.cap() / 2 {
        if m > 0 {
            df *= &ExactRational::from_integer(2 * m as i64 - 1);
        }
        let weight = match signs {
            WickSigns::Plain => df.clone(),
            WickSigns::Alternating if m % 2 == 1 => -df.clone(),
            WickSigns::Alternating => df.clone(),
        };
        for (e, q) in operand.coeff(2 * m)?.terms() {
            let n = m as i64 + e;
            if n <= order as i64 {
                let entry = acc.entry(n).or_insert_with(ExactRational::zero);
                *entry += &(q * &weight);
            }
        }
    }
    for (&n, v) in acc.range(..0) {
        if !v.is_zero() {
            return Err(Error::NegativeHbarPower {
                exponent: n,
                value: v.to_string(),
            });
        }
    }
    let coeffs = (0..=order as i64)
        .map(|n| acc.get(&n).cloned().unwrap_or_else(ExactRational::zero))
        .collect();
    Ok(TruncatedSeries::from_coeffs(Var::Hbar, coeffs))
}

/// The Wick sum `sum_m hbar^m (2m-1)!! [x^{2m}] S`, collected to `hbar^order`.
///
/// Requires the operand truncated at x-degree >= 6*order; any nonzero
/// contribution to a negative hbar power is an internal-consistency error.
pub fn wick_sum(
    operand: &TruncatedSeries<HbarLaurent>,
    order: usize,
) -> Result<TruncatedSeries<ExactRational>> {
    wick_sum_impl(operand, order, WickSigns::Plain)
}

/// The sign-twisted Wick sum `sum_m (-hbar)^m (2m-1)!! [x^{2m}] S`.
pub fn wick_sum_alternating(
    operand: &TruncatedSeries<HbarLaurent>,
    order: usize,
) -> Result<TruncatedSeries<ExactRational>> {
    wick_sum_impl(operand, order, WickSigns::Alternating)
}

pub(crate) fn f_series_at_cap(
    order: usize,
    x_cap: usize,
) -> Result<TruncatedSeries<ExactRational>> {
    let pot = PotentialSpec::graph_potential(x_cap);
    let operand = action_exponential(&pot, Sign::Plus, order as i64)?;
    wick_sum(&operand, order)
}

pub(crate) fn e_series_at_cap(
    order: usize,
    x_cap: usize,
) -> Result<TruncatedSeries<ExactRational>> {
    let pot = PotentialSpec::graph_potential(x_cap);
    let operand = action_exponential(&pot, Sign::Plus, order as i64)?;
    wick_sum_alternating(&operand, order)
}

/// F as a plain hbar-series; the coefficient of hbar^n sums `1/|Aut(G)|`
/// over all admissible graphs with `-chi(G) = n`.
pub fn f_series(order: usize) -> Result<TruncatedSeries<ExactRational>> {
    f_series_at_cap(order, 6 * order)
}

/// E as a plain hbar-series: the edge-signed variant of F.
pub fn e_series(order: usize) -> Result<TruncatedSeries<ExactRational>> {
    e_series_at_cap(order, 6 * order)
}

/// Second route to E: Wick sum of `exp(-hbar^{-1} Phi)` gives `E(-hbar)`;
/// substituting `hbar -> -hbar` recovers E. Used as a cross-check of
/// [`e_series`].
pub fn e_series_via_negated_action(order: usize) -> Result<TruncatedSeries<ExactRational>> {
    let pot = PotentialSpec::graph_potential(6 * order);
    let operand = action_exponential(&pot, Sign::Minus, order as i64)?;
    Ok(wick_sum(&operand, order)?.negate_variable())
}

/// X = log E; the coefficient of hbar^n is chi of the rank-(n+1) part of the
/// even commutative graph complex.
pub fn x_series(order: usize) -> Result<TruncatedSeries<ExactRational>> {
    e_series(order)?.log()
}

pub fn compute_f(order: usize) -> Result<SeriesReport> {
    SeriesReport::from_series(
        SeriesName::F,
        &f_series(order)?,
        format!(
            "Wick sum of exp(hbar^-1*(e^x-1-x-x^2/2)), x-cap {}",
            6 * order
        ),
    )
}

pub fn compute_e(order: usize) -> Result<SeriesReport> {
    SeriesReport::from_series(
        SeriesName::E,
        &e_series(order)?,
        format!(
            "alternating Wick sum of exp(hbar^-1*(e^x-1-x-x^2/2)), x-cap {}",
            6 * order
        ),
    )
}

pub fn compute_x(order: usize) -> Result<SeriesReport> {
    SeriesReport::from_series(
        SeriesName::X,
        &x_series(order)?,
        "log of the E series; coefficient of hbar^n is chi(GC_2) at rank n+1",
    )
}

/// B_n, by series inversion of `(e^x - 1)/x` inside the same series engine.
pub fn bernoulli(n: usize) -> ExactRational {
    let g = TruncatedSeries::from_coeffs(
        Var::X,
        (0..=n)
            .map(|d| ExactRational::inv_factorial(d + 1))
            .collect(),
    );
    // 1/g = exp(-log g); g has constant term 1.
    let inv = g.log().unwrap().neg().exp().unwrap();
    let coeff = inv.coeff(n).unwrap();
    coeff * &ExactRational::from_bigint(factorial(n))
}

/// chi of the rank-(n+1) part of the even commutative graph complex:
/// `-B_{n+1}/(n(n+1))` for odd n, 0 for even n.
pub fn chi_gc2(n: usize) -> ExactRational {
    assert!(n >= 1);
    if n % 2 == 0 {
        return ExactRational::zero();
    }
    let b = bernoulli(n + 1);
    -&b / &ExactRational::from_integer((n * (n + 1)) as i64)
}

/// Verifies the closed form against the series route: every coefficient of X
/// must equal [`chi_gc2`], even coefficients must vanish and X must be odd.
pub fn verify_gc2(order: usize) -> Result<CheckReport> {
    assert!(order >= 1);
    let x = x_series(order)?;
    let mut report = CheckReport::new(format!("gc2 closed form vs X, order {order}"));

    let mut mismatch = None;
    for n in 1..=order {
        let got = x.coeff(n)?;
        let expected = chi_gc2(n);
        if *got != expected {
            mismatch = Some((n, got.clone(), expected));
            break;
        }
    }
    match mismatch {
        None => report.push(
            "X coefficients match -B_(n+1)/(n(n+1))",
            true,
            format!("all orders 1..={order}"),
        ),
        Some((n, got, expected)) => report.push(
            "X coefficients match -B_(n+1)/(n(n+1))",
            false,
            format!("first mismatch at n={n}: got {got}, expected {expected}"),
        ),
    }

    let even_ok = (2..=order)
        .step_by(2)
        .all(|n| x.coeff(n).unwrap().is_zero());
    report.push(
        "even coefficients vanish",
        even_ok,
        format!("orders 2..={order}"),
    );

    let odd_ok = x.negate_variable() == x.neg();
    report.push("X(-hbar) = -X(hbar)", odd_ok, "coefficientwise");

    Ok(report)
}

/// The exponential formula on the graph side: exp(X) must equal E.
pub fn exp_x_equals_e_check(order: usize) -> Result<CheckReport> {
    let e = e_series(order)?;
    let x = x_series(order)?;
    let mut report = CheckReport::new(format!("exponential formula exp(X) = E, order {order}"));
    report.push("exp(X) = E", x.exp()? == e, "coefficientwise");
    Ok(report)
}

/// Both Wick routes to E must agree: the alternating sum over
/// `exp(+hbar^{-1} Phi)` and the substitution route over `exp(-hbar^{-1} Phi)`.
pub fn e_route_agreement_check(order: usize) -> Result<CheckReport> {
    let a = e_series(order)?;
    let b = e_series_via_negated_action(order)?;
    let mut report = CheckReport::new(format!("E route agreement, order {order}"));
    report.push(
        "alternating Wick sum = sign-substituted Wick sum",
        a == b,
        "coefficientwise",
    );
    Ok(report)
}

/// F has strictly positive coefficients: each is a sum of weights 1/|Aut|.
pub fn f_positivity_check(order: usize) -> Result<CheckReport> {
    let f = f_series(order)?;
    let mut report = CheckReport::new(format!("F positivity, order {order}"));
    let bad = (1..=order).find(|&n| !f.coeff(n).unwrap().is_positive());
    match bad {
        None => report.push("[hbar^n]F > 0", true, format!("orders 1..={order}")),
        Some(n) => report.push(
            "[hbar^n]F > 0",
            false,
            format!("coefficient at n={n} is {}", f.coeff(n).unwrap()),
        ),
    }
    Ok(report)
}

/// p_m sanity: nonnegative coefficients and degree at most floor(2m/3).
pub fn p_m_properties_check(max_m: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("p_m properties, m <= {max_m}"));
    for m in 1..=max_m {
        let p = p_m(m);
        let nonneg = p.coeffs().iter().all(|c| !c.is_negative());
        let degree = p.coeffs().iter().rposition(|c| !c.is_zero());
        let bound = 2 * m / 3;
        let deg_ok = degree.is_none_or(|d| d <= bound);
        report.push(
            format!("p_{m} nonnegative, degree <= {bound}"),
            nonneg && deg_ok,
            format!("degree {:?}", degree),
        );
    }
    report
}
