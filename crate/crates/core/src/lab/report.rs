use std::collections::BTreeMap;
use std::fmt;

use crate::metric::ConstantsLedger;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// The bound being checked is trivially true (e.g. nonpositive).
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        })
    }
}

/// Tabular experiment output: CSV rows plus a sorted key/value summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: BTreeMap<String, String>,
    pub ledger: Option<ConstantsLedger>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn new(id: &str, columns: &[&str]) -> Self {
        Self {
            id: id.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            ledger: None,
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.id);
        self.rows.push(row);
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary.get(key).map(String::as_str)
    }

    pub fn set_verdict(&mut self, v: Verdict) {
        self.set("verdict", v);
    }

    /// Anything but an explicit failure passes.
    pub fn passed(&self) -> bool {
        self.get("verdict") != Some("FAIL")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
        out.push_str(&line(&self.columns));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn summary_text(&self) -> String {
        let mut out = format!("experiment = {}\n", self.id);
        for (k, v) in &self.summary {
            out.push_str(&format!("{k} = {v}\n"));
        }
        if let Some(l) = &self.ledger {
            out.push_str("[ledger]\n");
            out.push_str(&l.to_text());
        }
        out
    }
}

/// `PASS` when `ok`, else `FAIL`.
pub fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_summary() {
        let mut r = Report::new("demo", &["word", "value"]);
        r.push(vec!["A(1),B(2)".into(), "3".into()]);
        r.set("zeta", 1);
        r.set("alpha", "x");
        r.set_verdict(Verdict::Pass);
        assert_eq!(r.to_csv(), "word,value\n\"A(1),B(2)\",3\n");
        assert_eq!(r.summary_text(), "experiment = demo\nalpha = x\nverdict = PASS\nzeta = 1\n");
        assert!(r.passed());
        r.set_verdict(Verdict::Vacuous);
        assert!(r.passed());
        r.set_verdict(verdict(false));
        assert!(!r.passed());
    }
}
