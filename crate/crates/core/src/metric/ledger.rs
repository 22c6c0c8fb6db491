use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::MetricError;
use crate::Rational;

/// A constant's value: exact when it came from integer data.
#[derive(Debug, Clone, PartialEq)]
pub enum LedgerValue {
    Exact(Rational),
    Float(f64),
}

impl LedgerValue {
    pub fn int(n: i64) -> Self {
        LedgerValue::Exact(Rational::from_integer(n.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LedgerValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            LedgerValue::Float(x) => *x,
        }
    }

    fn combine(
        &self,
        other: &Self,
        exact: impl Fn(&Rational, &Rational) -> Rational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Self {
        match (self, other) {
            (LedgerValue::Exact(a), LedgerValue::Exact(b)) => LedgerValue::Exact(exact(a, b)),
            _ => LedgerValue::Float(float(self.to_f64(), other.to_f64())),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }
}

impl fmt::Display for LedgerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerValue::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            LedgerValue::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            LedgerValue::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl FromStr for LedgerValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if lower.contains('.') || lower.contains('e') || lower.contains("inf") || lower == "nan" {
            return s
                .parse::<f64>()
                .map(LedgerValue::Float)
                .map_err(|e| format!("bad float {s:?}: {e}"));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator {n:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator {d:?}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(LedgerValue::Exact(Rational::new(n, d)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Configured,
    /// Estimated from data; the string describes the sample.
    Estimated(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub value: LedgerValue,
    pub provenance: Provenance,
}

/// Named record of every coarse constant used by the experiments.
///
/// Field names, in serialization order:
/// `delta` (thin-triangle constant), `bgim_M` (bounded geodesic image),
/// `power_N` (twist-power threshold, `N > M + 5`), `thin_C0 = (N+1)δ + 2`,
/// `qi_K`, `qi_C` (quasiisometry constants of the orbit map),
/// `stability_R0` (Morse stability radius), `local_P0 = 2K(C+2R0) + K²`,
/// `edge_C1`, `halfedge_C2` (projection bounds along tree edges and
/// half-edges), `proj_C3 = P0·C1 + 2C2 + ξ(2M + k(R) + 2)`, `bound_M1`
/// (off-orbit projection bound), and the truncation thresholds `A0`–`A2`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstantsLedger {
    entries: BTreeMap<&'static str, LedgerEntry>,
}

impl ConstantsLedger {
    pub const FIELDS: [&'static str; 15] = [
        "delta",
        "bgim_M",
        "power_N",
        "thin_C0",
        "qi_K",
        "qi_C",
        "stability_R0",
        "local_P0",
        "edge_C1",
        "halfedge_C2",
        "proj_C3",
        "bound_M1",
        "A0",
        "A1",
        "A2",
    ];

    pub fn new() -> Self {
        Self::default()
    }

    fn field(name: &str) -> Result<&'static str, MetricError> {
        Self::FIELDS
            .iter()
            .copied()
            .find(|f| *f == name)
            .ok_or_else(|| MetricError::Precondition(format!("unknown ledger field {name:?}")))
    }

    pub fn get(&self, name: &str) -> Option<&LedgerEntry> {
        self.entries.get(name)
    }

    pub fn value(&self, name: &str) -> Option<&LedgerValue> {
        self.get(name).map(|e| &e.value)
    }

    pub fn set(&mut self, name: &str, entry: LedgerEntry) -> Result<(), MetricError> {
        let key = Self::field(name)?;
        self.entries.insert(key, entry);
        Ok(())
    }

    pub fn configure(&mut self, name: &str, value: LedgerValue) -> Result<(), MetricError> {
        self.set(
            name,
            LedgerEntry {
                value,
                provenance: Provenance::Configured,
            },
        )
    }

    pub fn estimate(
        &mut self,
        name: &str,
        value: LedgerValue,
        sample: impl Into<String>,
    ) -> Result<(), MetricError> {
        self.set(
            name,
            LedgerEntry {
                value,
                provenance: Provenance::Estimated(sample.into()),
            },
        )
    }

    /// Smallest integer `N` with `N > M + 5`.
    pub fn default_power_n(bgim_m: &LedgerValue) -> LedgerValue {
        match bgim_m {
            LedgerValue::Exact(m) => {
                LedgerValue::Exact(m.floor() + Rational::from_integer(6.into()))
            }
            LedgerValue::Float(m) => LedgerValue::int(m.floor() as i64 + 6),
        }
    }

    fn derived_provenance(&self, inputs: &[&str], formula: &str) -> Provenance {
        let estimated = inputs
            .iter()
            .any(|n| matches!(self.get(n), Some(e) if e.provenance != Provenance::Configured));
        if estimated {
            Provenance::Estimated(format!("derived {formula}"))
        } else {
            Provenance::Configured
        }
    }

    /// Fills the formula-defined fields whose inputs are all present:
    /// `thin_C0`, `local_P0`, and `proj_C3` (which also needs `k(R)` and the
    /// complexity `ξ`).
    pub fn derive(&mut self, k_of_r: Option<&LedgerValue>, xi: i64) {
        let two = LedgerValue::int(2);
        if let (Some(n), Some(d)) = (self.value("power_N"), self.value("delta")) {
            let v = n.add(&LedgerValue::int(1)).mul(d).add(&two);
            let provenance = self.derived_provenance(&["power_N", "delta"], "(N+1)*delta+2");
            self.entries.insert("thin_C0", LedgerEntry { value: v, provenance });
        }
        if let (Some(k), Some(c), Some(r)) = (
            self.value("qi_K"),
            self.value("qi_C"),
            self.value("stability_R0"),
        ) {
            let v = two
                .mul(k)
                .mul(&c.add(&two.mul(r)))
                .add(&k.mul(k));
            let provenance =
                self.derived_provenance(&["qi_K", "qi_C", "stability_R0"], "2K(C+2R0)+K^2");
            self.entries.insert("local_P0", LedgerEntry { value: v, provenance });
        }
        if let (Some(p0), Some(c1), Some(c2), Some(m), Some(kr)) = (
            self.value("local_P0"),
            self.value("edge_C1"),
            self.value("halfedge_C2"),
            self.value("bgim_M"),
            k_of_r,
        ) {
            let tail = two.mul(m).add(kr).add(&two).mul(&LedgerValue::int(xi));
            let v = p0.mul(c1).add(&two.mul(c2)).add(&tail);
            let mut provenance = self.derived_provenance(
                &["local_P0", "edge_C1", "halfedge_C2", "bgim_M"],
                "P0*C1+2*C2+xi*(2M+k(R)+2)",
            );
            if matches!(kr, LedgerValue::Float(_)) && provenance == Provenance::Configured {
                provenance = Provenance::Estimated("derived with floating k(R)".into());
            }
            self.entries.insert("proj_C3", LedgerEntry { value: v, provenance });
        }
    }

    /// One `name = value # CONFIGURED` or `name = value # ESTIMATED: sample`
    /// line per set field, in [`Self::FIELDS`] order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in Self::FIELDS {
            if let Some(e) = self.entries.get(name) {
                let tag = match &e.provenance {
                    Provenance::Configured => "CONFIGURED".to_string(),
                    Provenance::Estimated(s) => format!("ESTIMATED: {}", s.replace('\n', " ")),
                };
                out.push_str(&format!("{name} = {} # {tag}\n", e.value));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MetricError> {
        let mut ledger = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| MetricError::LedgerParse { line: i + 1, msg };
            let (lhs, tag) = line
                .split_once('#')
                .ok_or_else(|| err("missing provenance tag".into()))?;
            let (name, value) = lhs
                .split_once('=')
                .ok_or_else(|| err("missing '='".into()))?;
            let value: LedgerValue = value.parse().map_err(err)?;
            let tag = tag.trim();
            let provenance = if tag == "CONFIGURED" {
                Provenance::Configured
            } else if let Some(s) = tag.strip_prefix("ESTIMATED:") {
                Provenance::Estimated(s.trim().to_string())
            } else {
                return Err(err(format!("unknown tag {tag:?}")));
            };
            ledger
                .set(name.trim(), LedgerEntry { value, provenance })
                .map_err(|e| err(e.to_string()))?;
        }
        Ok(ledger)
    }
}
