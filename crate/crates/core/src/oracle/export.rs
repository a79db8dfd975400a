//! Census export: CSV rows and a JSON document with per-class |Aut| lists.
//! Counts are serialized as decimal strings, rationals as `p/q` strings.

use serde_json::{json, Value};

use crate::oracle::census::CensusRow;

/// Plain CSV with the census columns; iso classes are JSON-only.
pub fn census_to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("m,k,labeled_count,connected_count,signed_count\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.m, row.k, row.labeled_count, row.connected_count, row.signed_count
        ));
    }
    out
}

/// One JSON document per census run.
pub fn census_to_json(edges: usize, rows: &[CensusRow]) -> Value {
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut obj = json!({
                "m": row.m,
                "k": row.k,
                "labeled_count": row.labeled_count.to_string(),
                "connected_count": row.connected_count.to_string(),
                "signed_count": row.signed_count.to_string(),
            });
            if let Some(classes) = &row.iso_classes {
                obj["classes"] = Value::Array(
                    classes
                        .iter()
                        .map(|c| {
                            json!({
                                "canonical": c.canonical.to_string(),
                                "orbit_size": c.orbit_size.to_string(),
                                "aut_order": c.aut_order.to_string(),
                            })
                        })
                        .collect(),
                );
            }
            obj
        })
        .collect();
    json!({ "edges": edges, "rows": rows_json })
}
