use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Default tolerance for report pass/fail decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetaValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl fmt::Display for MetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaValue::Int(i) => write!(f, "{i}"),
            MetaValue::Real(x) => write!(f, "{x:.16e}"),
            MetaValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for MetaValue {
    fn from(v: i64) -> Self {
        MetaValue::Int(v)
    }
}

impl From<usize> for MetaValue {
    fn from(v: usize) -> Self {
        MetaValue::Int(v as i64)
    }
}

impl From<f64> for MetaValue {
    fn from(v: f64) -> Self {
        MetaValue::Real(v)
    }
}

impl From<&str> for MetaValue {
    fn from(v: &str) -> Self {
        MetaValue::Text(v.to_string())
    }
}

impl From<String> for MetaValue {
    fn from(v: String) -> Self {
        MetaValue::Text(v)
    }
}

/// One evaluated inequality instance.
///
/// `slack` is the larger side minus the smaller side of the inequality as it
/// is supposed to hold, so `slack >= 0` means it holds exactly and `holds`
/// is `slack >= -tolerance`. The `relation` meta entry records which side is
/// expected to be larger (`">="`: lhs, `"<="`: rhs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub meta: BTreeMap<String, MetaValue>,
}

impl InequalityReport {
    /// `lhs >= rhs`.
    pub fn greater_equal(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name.into(), lhs, rhs, lhs - rhs, ">=", tolerance)
    }

    /// `lhs <= rhs`.
    pub fn less_equal(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name.into(), lhs, rhs, rhs - lhs, "<=", tolerance)
    }

    fn build(name: String, lhs: f64, rhs: f64, slack: f64, relation: &str, tolerance: f64) -> Self {
        let mut meta = BTreeMap::new();
        meta.insert("relation".to_string(), MetaValue::from(relation));
        Self {
            name,
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance,
            tolerance,
            meta,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<MetaValue>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    /// Re-decides `holds` at a new tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.holds = self.slack >= -tolerance;
        self
    }
}
