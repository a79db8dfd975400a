//! Output rendering: aligned tables, the fixed JSON schemas and CSV.

use serde_json::{json, Value};

use virtchi_core::{CheckReport, SeriesReport};

/// Simple left-aligned table with a header row.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], widths: &[usize], out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    let headers: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    render_row(&headers, &widths, &mut out);
    for row in rows {
        render_row(row, &widths, &mut out);
    }
    out
}

pub fn approx(value: &virtchi_core::ExactRational) -> String {
    format!("{:.6e}", value.to_f64())
}

pub fn series_table(report: &SeriesReport, decimal: bool) -> String {
    let mut headers = vec!["n", "coefficient"];
    if decimal {
        headers.push("approx (inexact)");
    }
    let rows: Vec<Vec<String>> = report
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let mut row = vec![n.to_string(), c.to_string()];
            if decimal {
                row.push(approx(c));
            }
            row
        })
        .collect();
    format!(
        "# series {}, order {}\n# {}\n{}",
        report.name,
        report.order,
        report.meta,
        table(&headers, &rows)
    )
}

pub fn series_json(report: &SeriesReport) -> Value {
    json!({
        "name": report.name.as_str(),
        "order": report.order,
        "coefficients": report
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| json!({ "n": n, "value": c.to_string() }))
            .collect::<Vec<_>>(),
    })
}

pub fn series_csv(report: &SeriesReport, decimal: bool) -> String {
    let mut out = String::from(if decimal {
        "n,value,approx\n"
    } else {
        "n,value\n"
    });
    for (n, c) in report.coefficients.iter().enumerate() {
        if decimal {
            out.push_str(&format!("{n},{c},{}\n", approx(c)));
        } else {
            out.push_str(&format!("{n},{c}\n"));
        }
    }
    out
}

/// Rank-indexed chi table (gc2 and outfn share the shape).
pub struct RankTable {
    pub name: &'static str,
    pub rows: Vec<(usize, virtchi_core::ExactRational)>,
    pub verified: Option<bool>,
}

pub fn rank_table(t: &RankTable, decimal: bool) -> String {
    let mut headers = vec!["rank", "chi"];
    if decimal {
        headers.push("approx (inexact)");
    }
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|(rank, chi)| {
            let mut row = vec![rank.to_string(), chi.to_string()];
            if decimal {
                row.push(approx(chi));
            }
            row
        })
        .collect();
    let mut out = format!("# {}\n{}", t.name, table(&headers, &rows));
    if let Some(ok) = t.verified {
        out.push_str(&format!(
            "# cross-check against the series route: {}\n",
            if ok { "pass" } else { "FAIL" }
        ));
    }
    out
}

pub fn rank_json(t: &RankTable) -> Value {
    let mut doc = json!({
        "table": t.name,
        "rows": t
            .rows
            .iter()
            .map(|(rank, chi)| json!({ "rank": rank, "chi": chi.to_string() }))
            .collect::<Vec<_>>(),
    });
    if let Some(ok) = t.verified {
        doc["verified"] = Value::Bool(ok);
    }
    doc
}

pub fn rank_csv(t: &RankTable, decimal: bool) -> String {
    let mut out = String::from(if decimal {
        "rank,chi,approx\n"
    } else {
        "rank,chi\n"
    });
    for (rank, chi) in &t.rows {
        if decimal {
            out.push_str(&format!("{rank},{chi},{}\n", approx(chi)));
        } else {
            out.push_str(&format!("{rank},{chi}\n"));
        }
    }
    out
}

pub fn verify_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let runtime = report
            .runtime
            .map(|d| format!("{:.2?}", d))
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "[{}] {} ({runtime})\n",
            if report.passed() { "PASS" } else { "FAIL" },
            report.name
        ));
        for item in &report.items {
            out.push_str(&format!(
                "    [{}] {}: {}\n",
                if item.passed { "ok" } else { "FAIL" },
                item.label,
                item.detail
            ));
        }
    }
    let passed = reports.iter().all(CheckReport::passed);
    out.push_str(&format!(
        "{} of {} checks passed\n",
        reports.iter().filter(|r| r.passed()).count(),
        reports.len()
    ));
    out.push_str(if passed {
        "VERIFICATION PASSED\n"
    } else {
        "VERIFICATION FAILED\n"
    });
    out
}

pub fn verify_json(suite: &str, reports: &[CheckReport]) -> Value {
    json!({
        "suite": suite,
        "passed": reports.iter().all(CheckReport::passed),
        "checks": reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "runtime_ms": r.runtime.map(|d| d.as_millis() as u64),
                    "items": r
                        .items
                        .iter()
                        .map(|i| json!({
                            "label": i.label,
                            "passed": i.passed,
                            "detail": i.detail,
                        }))
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// The structured failure document demanded by the exit-code contract.
pub fn failure_json(suite: &str, reports: &[CheckReport]) -> Value {
    json!({
        "suite": suite,
        "passed": false,
        "failures": reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| {
                let first = r.first_failure().unwrap();
                json!({
                    "check": r.name,
                    "label": first.label,
                    "detail": first.detail,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn census_table(rows: &[virtchi_core::oracle::CensusRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.k.to_string(),
                r.labeled_count.to_string(),
                r.connected_count.to_string(),
                r.signed_count.to_string(),
            ]
        })
        .collect();
    let mut out = table(&["m", "k", "labeled", "connected", "signed"], &body);
    for row in rows {
        if let Some(classes) = &row.iso_classes {
            out.push_str(&format!("classes at (m={}, k={}):\n", row.m, row.k));
            for class in classes {
                out.push_str(&format!(
                    "  {}  orbit {}  |Aut| {}\n",
                    class.canonical, class.orbit_size, class.aut_order
                ));
            }
        }
    }
    out
}
