//! Machine-readable records for every computation: JSON documents matching
//! `schema/output.schema.json`, or flat CSV with columns
//! `key,num,den,decimal`.
//!
//! Exact fractions are authoritative; `decimal` is a 4-place rendering
//! rounded half to even.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::chains::{RatioReport, StateDistribution, TraceTree};
use crate::distributions::{Distribution, GrowthPmf};
use crate::geometry::BoxDims;
use crate::montecarlo::EmpiricalDistribution;
use crate::partitions::Partition;
use crate::rational::{to_decimal, to_fraction, Rational};

pub const DECIMAL_PLACES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    BoxDist,
    PartitionDist,
    GrowthPmf,
    Moments,
    ChainDist,
    Trace,
    RatioReport,
    McEstimate,
}

/// A state or outcome that can label an output row.
pub trait Outcome {
    fn label(&self) -> String;
    fn values(&self) -> Vec<u64>;
}

impl Outcome for BoxDims {
    fn label(&self) -> String {
        self.to_string()
    }
    fn values(&self) -> Vec<u64> {
        self.sides().to_vec()
    }
}

impl Outcome for Partition {
    fn label(&self) -> String {
        self.to_string()
    }
    fn values(&self) -> Vec<u64> {
        self.parts().to_vec()
    }
}

/// One row. `exact` is `None` only where no value is defined (the first row
/// of a ratio report has no incoming transition).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Vec<u64>>,
    pub exact: Option<String>,
    pub num: Option<String>,
    pub den: Option<String>,
    pub decimal: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Entry {
    pub fn new(key: impl Into<String>, value: Option<&Rational>) -> Self {
        Self {
            key: key.into(),
            outcome: None,
            exact: value.map(to_fraction),
            num: value.map(|v| v.numer().to_string()),
            den: value.map(|v| v.denom().to_string()),
            decimal: value.map(|v| to_decimal(v, DECIMAL_PLACES)),
            extra: Map::new(),
        }
    }

    pub fn for_outcome<K: Outcome>(outcome: &K, value: Option<&Rational>) -> Self {
        let mut e = Self::new(outcome.label(), value);
        e.outcome = Some(outcome.values());
        e
    }

    pub fn with(mut self, field: &str, value: Value) -> Self {
        self.extra.insert(field.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub kind: RecordKind,
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<String>,
    pub entries: Vec<Entry>,
}

impl OutputRecord {
    pub fn new(kind: RecordKind, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self { kind, params, total: None, entries: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "num", "den", "decimal"]).expect("in-memory write");
        for e in &self.entries {
            let field = |v: &Option<String>| v.clone().unwrap_or_default();
            w.write_record([e.key.clone(), field(&e.num), field(&e.den), field(&e.decimal)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub fn distribution_record<K: Ord + Clone + Outcome>(
    kind: RecordKind,
    params: Value,
    d: &Distribution<K>,
) -> OutputRecord {
    let mut r = OutputRecord::new(kind, params);
    r.total = Some(d.total_attachments().to_string());
    r.entries = d.iter_canonical().map(|(k, p)| Entry::for_outcome(k, Some(p))).collect();
    r
}

pub fn growth_record(params: Value, pmf: &GrowthPmf) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::GrowthPmf, params);
    r.entries = pmf
        .probs()
        .iter()
        .enumerate()
        .map(|(k, p)| Entry::new(format!("k={k}"), Some(p)).with("k", json!(k)))
        .collect();
    r
}

pub fn moment_record(params: Value, p: u32, value: &Rational) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::Moments, params);
    r.entries = vec![Entry::new(format!("p={p}"), Some(value)).with("p", json!(p))];
    r
}

pub fn chain_record<K: Ord + Clone + Outcome>(
    params: Value,
    d: &StateDistribution<K>,
) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::ChainDist, params);
    r.entries = d.iter_canonical().map(|(k, p)| Entry::for_outcome(k, Some(p))).collect();
    r
}

pub fn trace_record(params: Value, tree: &TraceTree) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::Trace, params);
    for (level, lv) in tree.levels.iter().enumerate() {
        for branch in &lv.branches {
            for result in &branch.results {
                let key = format!("{}:{}->{}", level + 1, branch.parent, result);
                let e = Entry::for_outcome(result, Some(&branch.probability))
                    .with("level", json!(level + 1))
                    .with("parent", json!(branch.parent.parts()))
                    .with("tie_count", json!(branch.results.len()))
                    .with("expanded", json!(branch.expanded));
                r.entries.push(Entry { key, ..e });
            }
        }
    }
    r
}

pub fn ratio_record(params: Value, rows: &[RatioReport]) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::RatioReport, params);
    r.entries = rows
        .iter()
        .map(|row| {
            let ratios: Vec<Value> = row
                .ratios
                .iter()
                .map(|q| json!({ "exact": to_fraction(q), "decimal": to_decimal(q, DECIMAL_PLACES) }))
                .collect();
            let e = Entry::for_outcome(&row.state, row.probability.as_ref())
                .with("step", json!(row.step))
                .with("ratios", Value::Array(ratios));
            Entry { key: format!("{}:{}", row.step, row.state), ..e }
        })
        .collect();
    r
}

pub fn mc_record<K: Ord + Clone + Outcome>(
    params: Value,
    e: &EmpiricalDistribution<K>,
) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::McEstimate, params);
    r.total = Some(e.total.to_string());
    r.entries = e
        .counts
        .iter()
        .rev()
        .map(|(k, &c)| {
            let freq = Rational::new(c.into(), e.total.into());
            Entry::for_outcome(k, Some(&freq)).with("count", json!(c))
        })
        .collect();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::box_distribution;

    #[test]
    fn csv_rows_quote_keys() {
        let x: BoxDims = "1,3".parse().unwrap();
        let y: BoxDims = "1,2".parse().unwrap();
        let d = box_distribution(&x, &y).unwrap();
        let csv = distribution_record(RecordKind::BoxDist, json!({}), &d).to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "key,num,den,decimal");
        assert_eq!(lines[1], "\"(2,5)\",2,7,0.2857");
        assert_eq!(lines[4], "\"(1,5)\",1,7,0.1429");
    }

    #[test]
    fn json_envelope() {
        let x: BoxDims = "1,1".parse().unwrap();
        let d = box_distribution(&x, &x).unwrap();
        let v: Value = serde_json::from_str(
            &distribution_record(RecordKind::BoxDist, json!({"x": [1, 1]}), &d).to_json(),
        )
        .unwrap();
        assert_eq!(v["kind"], "box-dist");
        assert_eq!(v["total"], "8");
        assert_eq!(v["entries"][0]["key"], "(2,2)");
        assert_eq!(v["entries"][0]["exact"], "1/2");
        assert_eq!(v["entries"][0]["decimal"], "0.5000");
        assert_eq!(v["entries"][0]["outcome"], json!([2, 2]));
    }
}
