use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::maps::LinearFractionalMap;
use crate::scalar::Real;

/// A report parameter: a number or a short string.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Integer(u64),
    Number(f64),
    Text(String),
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Number(x)
    }
}

impl From<usize> for Param {
    fn from(x: usize) -> Self {
        Param::Integer(x as u64)
    }
}

impl From<&str> for Param {
    fn from(s: &str) -> Self {
        Param::Text(s.to_owned())
    }
}

impl From<String> for Param {
    fn from(s: String) -> Self {
        Param::Text(s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Integer(i) => write!(f, "{i}"),
            Param::Number(x) => write!(f, "{x:?}"),
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Outcome of one check. Field order is alphabetical and all maps are
/// ordered, so serialized reports are byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay: Option<Vec<f64>>,
    pub params: BTreeMap<String, Param>,
    pub pass: bool,
    pub residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_values: Option<Vec<f64>>,
    pub truncations: [usize; 2],
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, order: usize) -> Self {
        Self {
            check: check.into(),
            decay: None,
            params: BTreeMap::new(),
            pass: false,
            residuals: BTreeMap::new(),
            singular_values: None,
            truncations: [order, 2 * order],
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn residual(&mut self, key: &str, value: f64) {
        self.residuals.insert(key.to_owned(), value);
    }

    /// Key used to order reports deterministically.
    pub fn sort_key(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}|{}", self.check, params.join(","))
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let residuals: Vec<String> = self.residuals.iter().map(|(k, v)| format!("{k}={v:.3e}")).collect();
        format!(
            "[{}] {} (M={}, 2M={}) {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.truncations[0],
            self.truncations[1],
            residuals.join(" ")
        )
    }
}

pub(crate) fn map_param<T: Real>(m: &LinearFractionalMap<T>) -> Param {
    let parts: Vec<String> = m
        .coefficients()
        .iter()
        .map(|z| format_complex(z.re.to_f64(), z.im.to_f64()))
        .collect();
    Param::Text(parts.join(","))
}

/// `a`, `bi`, `a+bi` or `a-bi`.
pub fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

pub(crate) fn to_f64s<T: Real>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64()).collect()
}
