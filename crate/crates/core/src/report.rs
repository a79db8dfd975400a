//! Result containers handed to the CLI: named coefficient series and
//! pass/fail verification reports.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::Result;
use crate::rational::ExactRational;
use crate::series::{TruncatedSeries, Var};

/// The fixed registry of exported series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesName {
    /// All admissible graphs weighted by 1/|Aut|.
    F,
    /// All admissible graphs signed by edge count.
    E,
    /// Connected signed graphs: coefficients are chi of the even commutative
    /// graph complex.
    X,
    /// Graph-forest pairs: coefficients are chi of Out(F_n).
    Y,
}

impl SeriesName {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesName::F => "F",
            SeriesName::E => "E",
            SeriesName::X => "X",
            SeriesName::Y => "Y",
        }
    }

    pub const ALL: [SeriesName; 4] = [SeriesName::F, SeriesName::E, SeriesName::X, SeriesName::Y];
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parse failure for [`SeriesName::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown series name {input:?}; expected one of F, E, X, Y")]
pub struct ParseSeriesNameError {
    input: String,
}

impl FromStr for SeriesName {
    type Err = ParseSeriesNameError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F" => Ok(SeriesName::F),
            "E" => Ok(SeriesName::E),
            "X" => Ok(SeriesName::X),
            "Y" => Ok(SeriesName::Y),
            _ => Err(ParseSeriesNameError {
                input: s.to_owned(),
            }),
        }
    }
}

/// A named series in hbar with exact coefficients for orders `0..=order`.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesReport {
    pub name: SeriesName,
    pub order: usize,
    pub coefficients: Vec<ExactRational>,
    /// Free-form provenance notes (how the series was computed).
    pub meta: String,
}

impl SeriesReport {
    pub fn from_series(
        name: SeriesName,
        series: &TruncatedSeries<ExactRational>,
        meta: impl Into<String>,
    ) -> Result<Self> {
        debug_assert_eq!(series.var(), Var::Hbar);
        let order = series.cap();
        let mut coefficients = Vec::with_capacity(order + 1);
        for n in 0..=order {
            coefficients.push(series.coeff(n)?.clone());
        }
        Ok(SeriesReport {
            name,
            order,
            coefficients,
            meta: meta.into(),
        })
    }

    /// Coefficient of hbar^n.
    pub fn coefficient(&self, n: usize) -> &ExactRational {
        &self.coefficients[n]
    }
}

/// One verified statement inside a [`CheckReport`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a verification run: a named list of checks.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct CheckReport {
    pub name: String,
    pub items: Vec<CheckItem>,
    /// Filled in by the suite runner.
    pub runtime: Option<Duration>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            items: Vec::new(),
            runtime: None,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records an equality check, formatting both sides on mismatch.
    pub fn push_eq<T: PartialEq + fmt::Display>(
        &mut self,
        label: impl Into<String>,
        got: &T,
        expected: &T,
    ) {
        let passed = got == expected;
        let detail = if passed {
            format!("= {got}")
        } else {
            format!("got {got}, expected {expected}")
        };
        self.items.push(CheckItem {
            label: label.into(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for item in &self.items {
            writeln!(
                f,
                "  [{}] {}: {}",
                if item.passed { "ok" } else { "FAIL" },
                item.label,
                item.detail
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_name_registry_round_trip() {
        for name in SeriesName::ALL {
            assert_eq!(name.as_str().parse::<SeriesName>().unwrap(), name);
        }
        assert!("Z".parse::<SeriesName>().is_err());
        assert_eq!("y".parse::<SeriesName>().unwrap(), SeriesName::Y);
    }

    #[test]
    fn report_failure_tracking() {
        let mut r = CheckReport::new("demo");
        r.push("a", true, "fine");
        assert!(r.passed());
        r.push_eq("b", &1, &2);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().label, "b");
    }
}
