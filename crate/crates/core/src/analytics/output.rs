use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A labeled year-indexed series of counts or percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub label: String,
    pub points: BTreeMap<i32, f64>,
}

impl TrendSeries {
    pub fn new(label: impl Into<String>) -> Self {
        TrendSeries { label: label.into(), points: BTreeMap::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn fmt_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.4}")
    }
}

/// Long-format rows `year,label,value`; `year` is `all` for rankings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<(String, String, f64)>,
}

impl Table {
    pub fn from_series(series: &[TrendSeries]) -> Self {
        let mut rows = Vec::new();
        for s in series {
            for (y, v) in &s.points {
                rows.push((y.to_string(), s.label.clone(), *v));
            }
        }
        Table { rows }
    }

    pub fn from_ranking(ranking: impl IntoIterator<Item = (String, f64)>) -> Self {
        Table { rows: ranking.into_iter().map(|(l, v)| ("all".to_string(), l, v)).collect() }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["year", "label", "value"]).expect("in-memory write");
        for (y, l, v) in &self.rows {
            w.write_record([y.as_str(), l.as_str(), fmt_value(*v).as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}
